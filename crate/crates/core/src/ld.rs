//! Coloured trees and the self-distributive calculus.
//!
//! A coloured tree carries one colour per leaf.  Words act on coloured trees
//! by the usual skeleton moves, with braid letters additionally rewriting
//! colours: `s_i` replaces factor i by factor i+1 with every colour `y`
//! bracketed under the chain of factor i's colours, and moves factor i to
//! slot i+1 unchanged; `s_i^-1` undoes this, peeling brackets (which may be
//! impossible — colour structures expose a partial inverse bracket).
//! Rescaling letters only reshape the skeleton.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::reversing::word_problem;
use crate::trees::{act_tree_tracked, minimal_input_tree, Tree};
use crate::words::{free_reduce, Family, Letter, Sign, Word};

/// A set of colours with a self-distributive bracket `x[y]`, an optional
/// companion product, and an optional partial inverse bracket.
pub trait ColourStructure {
    type Colour: Clone;

    fn bracket(&self, x: &Self::Colour, y: &Self::Colour) -> Self::Colour;

    /// Some `y` with `bracket(x, y)` equal to `z`, when one can be found.
    fn unbracket(&self, _x: &Self::Colour, _z: &Self::Colour) -> Option<Self::Colour> {
        None
    }

    /// The companion product `x . y`, when the structure has one.
    fn circ(&self, _x: &Self::Colour, _y: &Self::Colour) -> Option<Self::Colour> {
        None
    }

    fn colours_equal(&self, x: &Self::Colour, y: &Self::Colour) -> bool;

    /// Racks (total invertible bracket) propagate colours independently of
    /// the word representing an element.
    fn is_rack(&self) -> bool {
        false
    }
}

/// The one-point colour structure.
pub struct TrivialColours;

impl ColourStructure for TrivialColours {
    type Colour = ();

    fn bracket(&self, _x: &(), _y: &()) -> () {}

    fn unbracket(&self, _x: &(), _z: &()) -> Option<()> {
        Some(())
    }

    fn circ(&self, _x: &(), _y: &()) -> Option<()> {
        Some(())
    }

    fn colours_equal(&self, _x: &(), _y: &()) -> bool {
        true
    }

    fn is_rack(&self) -> bool {
        true
    }
}

fn s1() -> Letter {
    Letter::sigma(1)
}

fn a1() -> Letter {
    Letter::a(1)
}

/// Braid words as colours: `x[y] = x (shift y) s1 (shift x)^-1` and
/// `x . y = x (shift y) a1`.  The inverse bracket is resolved at the level
/// of words: it succeeds when the candidate freely reduces into the image
/// of the shift, and gives up otherwise.
pub struct BraidColours;

impl ColourStructure for BraidColours {
    type Colour = Word;

    fn bracket(&self, x: &Word, y: &Word) -> Word {
        free_reduce(&Word::concat(&[
            x,
            &y.shift(1),
            &Word::single(s1()),
            &x.shift(1).inverse(),
        ]))
    }

    fn unbracket(&self, x: &Word, z: &Word) -> Option<Word> {
        let c = free_reduce(&Word::concat(&[
            &x.inverse(),
            z,
            &x.shift(1),
            &Word::single(s1().inv()),
        ]));
        c.shift_down(1)
    }

    fn circ(&self, x: &Word, y: &Word) -> Option<Word> {
        Some(free_reduce(&Word::concat(&[x, &y.shift(1), &Word::single(a1())])))
    }

    fn colours_equal(&self, x: &Word, y: &Word) -> bool {
        word_problem(x, y)
    }
}

/// A tree whose leaves carry colours, left to right (the terminal leaf
/// included; no letter ever rewrites its colour).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredTree<C> {
    pub skeleton: Tree,
    pub colours: Vec<C>,
}

impl<C: Clone> ColouredTree<C> {
    pub fn new(skeleton: Tree, colours: Vec<C>) -> Result<Self> {
        if colours.len() != skeleton.leaf_count() {
            return Err(Error::Domain(format!(
                "{} colours for a tree with {} leaves",
                colours.len(),
                skeleton.leaf_count()
            )));
        }
        Ok(ColouredTree { skeleton, colours })
    }

    pub fn uniform(skeleton: Tree, c: C) -> Self {
        let n = skeleton.leaf_count();
        ColouredTree { skeleton, colours: vec![c; n] }
    }
}

/// The coloured factors along the right spine plus the terminal colour.
pub fn split_factors<C: Clone>(t: &ColouredTree<C>) -> (Vec<ColouredTree<C>>, C) {
    let mut out = Vec::new();
    let mut at = 0;
    for f in t.skeleton.dec() {
        let c = f.leaf_count();
        out.push(ColouredTree { skeleton: f.clone(), colours: t.colours[at..at + c].to_vec() });
        at += c;
    }
    (out, t.colours[at].clone())
}

enum ColourErr {
    Partial,
    NoInverse,
}

fn act_coloured_letter<S: ColourStructure>(
    t: &ColouredTree<S::Colour>,
    l: Letter,
    s: &S,
) -> std::result::Result<ColouredTree<S::Colour>, ColourErr> {
    let dec: Vec<Tree> = t.skeleton.dec().into_iter().cloned().collect();
    let n = dec.len();
    let i = l.index as usize;
    let counts: Vec<usize> = dec.iter().map(|f| f.leaf_count()).collect();
    let start_of = |k: usize| -> usize { counts[..k].iter().sum() };
    match (l.family, l.sign) {
        (Family::Sigma, Sign::Pos) => {
            if n < i + 1 {
                return Err(ColourErr::Partial);
            }
            let at = start_of(i - 1);
            let (c1, c2) = (counts[i - 1], counts[i]);
            let chain = &t.colours[at..at + c1];
            let mut colours = t.colours[..at].to_vec();
            for y in &t.colours[at + c1..at + c1 + c2] {
                let mut acc = y.clone();
                for x in chain.iter().rev() {
                    acc = s.bracket(x, &acc);
                }
                colours.push(acc);
            }
            colours.extend_from_slice(chain);
            colours.extend_from_slice(&t.colours[at + c1 + c2..]);
            let mut dec = dec;
            dec.swap(i - 1, i);
            Ok(ColouredTree { skeleton: Tree::from_dec(dec), colours })
        }
        (Family::Sigma, Sign::Neg) => {
            if n < i + 1 {
                return Err(ColourErr::Partial);
            }
            let at = start_of(i - 1);
            let (c1, c2) = (counts[i - 1], counts[i]);
            // New factor i is old factor i+1; its colours are the chain to
            // peel off the colours of old factor i.
            let chain = &t.colours[at + c1..at + c1 + c2];
            let mut colours = t.colours[..at].to_vec();
            colours.extend_from_slice(chain);
            for z in &t.colours[at..at + c1] {
                let mut acc = z.clone();
                for x in chain.iter() {
                    acc = s.unbracket(x, &acc).ok_or(ColourErr::NoInverse)?;
                }
                colours.push(acc);
            }
            colours.extend_from_slice(&t.colours[at + c1 + c2..]);
            let mut dec = dec;
            dec.swap(i - 1, i);
            Ok(ColouredTree { skeleton: Tree::from_dec(dec), colours })
        }
        (Family::A, Sign::Pos) => {
            if n < i + 1 {
                return Err(ColourErr::Partial);
            }
            let mut dec = dec;
            let r = dec.remove(i);
            let glued = Tree::node(dec[i - 1].clone(), r);
            dec[i - 1] = glued;
            Ok(ColouredTree { skeleton: Tree::from_dec(dec), colours: t.colours.clone() })
        }
        (Family::A, Sign::Neg) => {
            if n < i {
                return Err(ColourErr::Partial);
            }
            let mut dec = dec;
            match dec[i - 1].clone() {
                Tree::Leaf => Err(ColourErr::Partial),
                Tree::Node(x, y) => {
                    dec[i - 1] = *x;
                    dec.insert(i, *y);
                    Ok(ColouredTree { skeleton: Tree::from_dec(dec), colours: t.colours.clone() })
                }
            }
        }
    }
}

/// Applies `w` to a coloured tree; positions in errors are 1-based.
pub fn act_coloured<S: ColourStructure>(
    t: &ColouredTree<S::Colour>,
    w: &Word,
    s: &S,
) -> Result<ColouredTree<S::Colour>> {
    let mut cur = t.clone();
    for (pos, &l) in w.letters().iter().enumerate() {
        cur = act_coloured_letter(&cur, l, s).map_err(|e| match e {
            ColourErr::Partial => Error::Partial { pos: pos + 1, letter: l.to_string() },
            ColourErr::NoInverse => Error::NoInverseBracket { pos: pos + 1 },
        })?;
    }
    Ok(cur)
}

/// Evaluation of a braid-coloured tree: a leaf is its colour, a node is the
/// companion product of its children.
pub fn ev(t: &ColouredTree<Word>) -> Word {
    fn go(t: &Tree, cols: &[Word]) -> Word {
        match t {
            Tree::Leaf => cols[0].clone(),
            Tree::Node(l, r) => {
                let c = l.leaf_count();
                BraidColours.circ(&go(l, cols[..c].as_ref()), &go(r, cols[c..].as_ref())).unwrap()
            }
        }
    }
    go(&t.skeleton, &t.colours)
}

/// Evaluation of a bare tree with trivial braid colours: the image of the
/// corresponding special element of Thompson's group.
pub fn ev_plain(t: &Tree) -> Word {
    ev(&ColouredTree::uniform(t.clone(), Word::empty()))
}

/// Spine evaluation: `ev(t_1) shift(ev(t_2)) ... shift^(n-1)(ev(t_n))` over
/// the factors (the terminal colour is not consumed).
pub fn ev_star(t: &ColouredTree<Word>) -> Word {
    let (factors, _) = split_factors(t);
    let mut out = Word::empty();
    for (k, f) in factors.iter().enumerate() {
        out.extend(&ev(f).shift(k as u32));
    }
    free_reduce(&out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialMode {
    Bracket,
    Circ,
    Both,
}

pub const DEFAULT_SPECIAL_CAP: usize = 6;

/// Element-level invariants cheap enough to bucket candidates by.
#[derive(PartialEq, Eq, Hash)]
struct Fingerprint {
    min_tree: String,
    out_tree: String,
    traversal: Vec<usize>,
    a_charge: i64,
}

fn fingerprint(v: &Word) -> Result<Fingerprint> {
    let t = minimal_input_tree(v)?;
    let (out, traversal) = act_tree_tracked(&t, v)?;
    let a_charge = v
        .letters()
        .iter()
        .filter(|l| l.family == Family::A)
        .map(|l| if l.is_positive() { 1i64 } else { -1 })
        .sum();
    Ok(Fingerprint {
        min_tree: t.to_string(),
        out_tree: out.to_string(),
        traversal,
        a_charge,
    })
}

/// All values of bracket/circ expressions with at most `depth` leaves over
/// the trivial colour, one representative word per element, in discovery
/// order (expression size, then left-factor size, then operation).
pub fn enumerate_special(depth: usize, mode: SpecialMode, cap: usize) -> Result<Vec<Word>> {
    if depth > cap {
        return Err(Error::DepthCap { depth, cap });
    }
    let s = BraidColours;
    let mut all: Vec<Word> = Vec::new();
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
    let mut seen: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
    if depth == 0 {
        return Ok(all);
    }
    {
        let v = Word::empty();
        seen.entry(fingerprint(&v)?).or_default().push(0);
        all.push(v);
        by_size[1].push(0);
    }
    for size in 2..=depth {
        for lsize in 1..size {
            for li in 0..by_size[lsize].len() {
                for ri in 0..by_size[size - lsize].len() {
                    let x = all[by_size[lsize][li]].clone();
                    let y = all[by_size[size - lsize][ri]].clone();
                    let mut cands: Vec<Word> = Vec::new();
                    if mode != SpecialMode::Circ {
                        cands.push(s.bracket(&x, &y));
                    }
                    if mode != SpecialMode::Bracket {
                        cands.push(s.circ(&x, &y).unwrap());
                    }
                    for cand in cands {
                        let fp = fingerprint(&cand)?;
                        let bucket = seen.entry(fp).or_default();
                        if bucket.iter().any(|&k| word_problem(&all[k], &cand)) {
                            continue;
                        }
                        let id = all.len();
                        bucket.push(id);
                        all.push(cand);
                        by_size[size].push(id);
                    }
                }
            }
        }
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::right_vine;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn beq(x: &Word, y: &Word) -> bool {
        word_problem(x, y)
    }

    #[test]
    fn bracket_assembly() {
        let s = BraidColours;
        assert_eq!(s.bracket(&w("1"), &w("1")), w("s1"));
        assert_eq!(s.circ(&w("1"), &w("1")).unwrap(), w("a1"));
        assert_eq!(s.bracket(&w("1"), &w("a1")), w("a2 s1"));
        assert_eq!(s.circ(&w("a1"), &w("1")).unwrap(), w("a1 a1"));
        // x[y] for x = s1, y = s2 and its word-level inverse.
        let z = s.bracket(&w("s1"), &w("s2"));
        assert_eq!(z, w("s1 s3 s1 s2^-1"));
        assert_eq!(s.unbracket(&w("s1"), &z).unwrap(), w("s2"));
    }

    #[test]
    fn self_distributivity_laws() {
        let s = BraidColours;
        let samples = [w("1"), w("s1"), w("a1"), w("s2 a1"), w("a2 s1")];
        for x in &samples {
            for y in &samples {
                for z in &samples {
                    // x[y[z]] = x[y][x[z]]
                    let lhs = s.bracket(x, &s.bracket(y, z));
                    let rhs = s.bracket(&s.bracket(x, y), &s.bracket(x, z));
                    assert!(beq(&lhs, &rhs), "ld at {x}; {y}; {z}");
                    // (x.y)[z] = x[y[z]]
                    let rhs = s.bracket(&s.circ(x, y).unwrap(), z);
                    assert!(beq(&lhs, &rhs), "mixed-1 at {x}; {y}; {z}");
                    // x[y.z] = x[y].x[z]
                    let lhs = s.bracket(x, &s.circ(y, z).unwrap());
                    let rhs = s.circ(&s.bracket(x, y), &s.bracket(x, z)).unwrap();
                    assert!(beq(&lhs, &rhs), "mixed-2 at {x}; {y}; {z}");
                }
            }
        }
    }

    #[test]
    fn colour_propagation_is_relation_invariant() {
        // On a trivially coloured vine, both sides of every relation produce
        // equal colours and equal skeletons.
        let pairs = [
            ("s1 s3", "s3 s1"),
            ("s1 a3", "a3 s1"),
            ("a1 a2", "a3 a1"),
            ("a1 s2", "s3 a1"),
            ("s1 s2 s1", "s2 s1 s2"),
            ("s2 s1 a2", "a1 s1"),
            ("s1 s2 a1", "a2 s1"),
        ];
        let s = BraidColours;
        for (l, r) in pairs {
            let t = ColouredTree::uniform(right_vine(6), Word::empty());
            let a = act_coloured(&t, &w(l), &s).unwrap();
            let b = act_coloured(&t, &w(r), &s).unwrap();
            assert_eq!(a.skeleton, b.skeleton, "{l} = {r}");
            for (x, y) in a.colours.iter().zip(&b.colours) {
                assert!(beq(x, y), "{l} = {r}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn colours_on_a_vine() {
        let s = BraidColours;
        let t = ColouredTree::uniform(right_vine(3), Word::empty());
        let u = act_coloured(&t, &w("s1"), &s).unwrap();
        assert_eq!(u.colours, vec![w("s1"), w("1"), w("1"), w("1")]);
        let u = act_coloured(&t, &w("s2"), &s).unwrap();
        assert_eq!(u.colours, vec![w("1"), w("s1"), w("1"), w("1")]);
        // Undoing the crossing restores triviality.
        let u = act_coloured(&t, &w("s1 s1^-1"), &s).unwrap();
        assert_eq!(u.colours, t.colours);
        // An inverse crossing on trivial colours is genuinely undefined.
        assert_eq!(
            act_coloured(&t, &w("s1^-1"), &s),
            Err(Error::NoInverseBracket { pos: 1 })
        );
    }

    #[test]
    fn evaluation_of_plain_trees() {
        assert_eq!(ev_plain(&Tree::Leaf), w("1"));
        assert_eq!(ev_plain(&right_vine(1)), w("a1"));
        assert_eq!(ev_plain(&right_vine(2)), w("a2 a1"));
        assert_eq!(ev_plain(&right_vine(3)), w("a3 a2 a1"));
        assert_eq!(ev_plain(&"((..).)".parse().unwrap()), w("a1 a1"));
    }

    #[test]
    fn spine_evaluation_tracks_the_acting_word() {
        let t = ColouredTree::uniform(right_vine(5), Word::empty());
        assert_eq!(ev_star(&t), w("1"));
        for s in ["a1", "s1", "a1 s1", "s2 a2 s1", "s1 s1", "a2 a1"] {
            let u = act_coloured(&t, &w(s), &BraidColours).unwrap();
            assert!(beq(&ev_star(&u), &w(s)), "{s} gives {}", ev_star(&u));
        }
    }

    #[test]
    fn special_enumeration_small_depths() {
        assert_eq!(enumerate_special(1, SpecialMode::Both, 6).unwrap(), vec![w("1")]);
        assert_eq!(
            enumerate_special(2, SpecialMode::Both, 6).unwrap(),
            vec![w("1"), w("s1"), w("a1")]
        );
        assert_eq!(
            enumerate_special(3, SpecialMode::Circ, 6).unwrap(),
            vec![w("1"), w("a1"), w("a2 a1"), w("a1 a1")]
        );
        assert!(matches!(
            enumerate_special(7, SpecialMode::Both, 6),
            Err(Error::DepthCap { depth: 7, cap: 6 })
        ));
    }

    #[test]
    fn circ_enumeration_counts_are_catalan() {
        let all = enumerate_special(5, SpecialMode::Circ, 8).unwrap();
        let mut counts = vec![0usize; 5];
        for v in &all {
            counts[v.len()] += 1;
        }
        assert_eq!(counts, vec![1, 1, 2, 5, 14]);
    }
}
