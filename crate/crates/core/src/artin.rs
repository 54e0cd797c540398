//! The faithful action on a free group.
//!
//! To every parenthesized braid word corresponds an automorphism of the free
//! group on generators `x_s`, one per finite sequence `s` of positive
//! integers.  Each node of a binary tree has a natural colour in that free
//! group, letters act on fully coloured trees by conjugation, and the
//! automorphism of a word sends the natural colour of every node in the
//! output tree to its actual colour.  Closed per-letter formulas give a fast
//! path; the coloured action gives an independent one; and reduced images
//! detect nontrivial words.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ld::ColourStructure;
use crate::trees::{act_tree, minimal_input_tree, split_leaf, Tree};
use crate::words::{Letter, Sign, Word};

/// An automorphism of the free group, carried by the word inducing it;
/// evaluation is lazy and composition is concatenation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    carrier: Word,
}

impl Automorphism {
    pub fn new(carrier: Word) -> Automorphism {
        Automorphism { carrier }
    }

    pub fn carrier(&self) -> &Word {
        &self.carrier
    }

    pub fn apply(&self, u: &FWord) -> FWord {
        aut_apply(&self.carrier, u)
    }

    pub fn compose_after(&self, first: &Automorphism) -> Automorphism {
        Automorphism { carrier: Word::concat(&[&first.carrier, &self.carrier]) }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism { carrier: self.carrier.inverse() }
    }
}

/// A free-group generator `x_s`, indexed by a nonempty sequence of positive
/// integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGen(Vec<u32>);

impl FGen {
    pub fn new(entries: Vec<u32>) -> Result<FGen> {
        if entries.is_empty() {
            return Err(Error::Parse("a generator index needs at least one entry".into()));
        }
        if let Some(&e) = entries.iter().find(|&&e| e == 0) {
            return Err(Error::Parse(format!("generator index entry {e} must be positive")));
        }
        Ok(FGen(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for FGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for FGen {
    type Err = Error;

    fn from_str(s: &str) -> Result<FGen> {
        let s = s.trim();
        let inner = s
            .strip_prefix("x(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected x(..), got {s:?}")))?;
        let entries = inner
            .split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad entry {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        FGen::new(entries)
    }
}

/// A freely reduced word over the `x_s^{±1}`; every constructor reduces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FWord {
    parts: Vec<(FGen, Sign)>,
}

impl FWord {
    pub fn one() -> FWord {
        FWord { parts: Vec::new() }
    }

    pub fn gen(g: FGen) -> FWord {
        FWord { parts: vec![(g, Sign::Pos)] }
    }

    pub fn from_parts(parts: Vec<(FGen, Sign)>) -> FWord {
        let mut out: Vec<(FGen, Sign)> = Vec::with_capacity(parts.len());
        for p in parts {
            match out.last() {
                Some(q) if q.0 == p.0 && q.1 == p.1.flip() => {
                    out.pop();
                }
                _ => out.push(p),
            }
        }
        FWord { parts: out }
    }

    pub fn parts(&self) -> &[(FGen, Sign)] {
        &self.parts
    }

    pub fn is_one(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn mul(&self, other: &FWord) -> FWord {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        FWord::from_parts(parts)
    }

    pub fn inverse(&self) -> FWord {
        FWord { parts: self.parts.iter().rev().map(|(g, s)| (g.clone(), s.flip())).collect() }
    }

    fn conjugated(&self, x: &FWord) -> FWord {
        x.mul(self).mul(&x.inverse())
    }
}

impl fmt::Display for FWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, s)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
            if *s == Sign::Neg {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<FWord> {
        let mut parts = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (body, sign) = match tok.strip_suffix("^-1") {
                Some(b) => (b, Sign::Neg),
                None => (tok, Sign::Pos),
            };
            parts.push((body.parse::<FGen>()?, sign));
        }
        Ok(FWord::from_parts(parts))
    }
}

/// Free-group conjugation as a colour structure: a rack with total inverse
/// bracket and the group product as companion.
pub struct FreeConjugation;

impl ColourStructure for FreeConjugation {
    type Colour = FWord;

    fn bracket(&self, x: &FWord, y: &FWord) -> FWord {
        y.conjugated(x)
    }

    fn unbracket(&self, x: &FWord, z: &FWord) -> Option<FWord> {
        Some(z.conjugated(&x.inverse()))
    }

    fn circ(&self, x: &FWord, y: &FWord) -> Option<FWord> {
        Some(x.mul(y))
    }

    fn colours_equal(&self, x: &FWord, y: &FWord) -> bool {
        x == y
    }

    fn is_rack(&self) -> bool {
        true
    }
}

/// A binary tree with a free-group colour at every node, leaves included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FColouredTree {
    Leaf(FWord),
    Node(FWord, Box<FColouredTree>, Box<FColouredTree>),
}

impl FColouredTree {
    pub fn colour(&self) -> &FWord {
        match self {
            FColouredTree::Leaf(c) => c,
            FColouredTree::Node(c, _, _) => c,
        }
    }

    pub fn skeleton(&self) -> Tree {
        match self {
            FColouredTree::Leaf(_) => Tree::Leaf,
            FColouredTree::Node(_, l, r) => Tree::node(l.skeleton(), r.skeleton()),
        }
    }

    /// Whether every inner colour is the product of its sons' colours.
    pub fn is_coherent(&self) -> bool {
        match self {
            FColouredTree::Leaf(_) => true,
            FColouredTree::Node(c, l, r) => {
                *c == l.colour().mul(r.colour()) && l.is_coherent() && r.is_coherent()
            }
        }
    }

    fn conjugated(&self, x: &FWord) -> FColouredTree {
        match self {
            FColouredTree::Leaf(c) => FColouredTree::Leaf(c.conjugated(x)),
            FColouredTree::Node(c, l, r) => FColouredTree::Node(
                c.conjugated(x),
                Box::new(l.conjugated(x)),
                Box::new(r.conjugated(x)),
            ),
        }
    }

    pub fn leaf_colours(&self) -> Vec<FWord> {
        match self {
            FColouredTree::Leaf(c) => vec![c.clone()],
            FColouredTree::Node(_, l, r) => {
                let mut out = l.leaf_colours();
                out.extend(r.leaf_colours());
                out
            }
        }
    }

    /// The colour of the node with the given address, if the node exists.
    /// The root has address (1); the node (s, k) has left son (s, k, 1) and
    /// right son (s, k+1).
    pub fn colour_at(&self, address: &[u32]) -> Option<&FWord> {
        if address.is_empty() || address.contains(&0) {
            return None;
        }
        let mut cur = self;
        for (d, &entry) in address.iter().enumerate() {
            if d > 0 {
                // Descend into the left son opened by the previous entry.
                match cur {
                    FColouredTree::Node(_, l, _) => cur = l,
                    FColouredTree::Leaf(_) => return None,
                }
            }
            for _ in 1..entry {
                match cur {
                    FColouredTree::Node(_, _, r) => cur = r,
                    FColouredTree::Leaf(_) => return None,
                }
            }
        }
        Some(cur.colour())
    }

    /// All node colours with their addresses, root first.
    pub fn node_colours(&self) -> Vec<(Vec<u32>, FWord)> {
        fn walk(t: &FColouredTree, prefix: &[u32], k: u32, out: &mut Vec<(Vec<u32>, FWord)>) {
            let mut addr = prefix.to_vec();
            addr.push(k);
            out.push((addr.clone(), t.colour().clone()));
            if let FColouredTree::Node(_, l, r) = t {
                walk(l, &addr, 1, out);
                walk(r, prefix, k + 1, out);
            }
        }
        let mut out = Vec::new();
        walk(self, &[], 1, &mut out);
        out
    }
}

/// The natural colour of the node with address (s, k).
fn natural_colour(prefix: &[u32], k: u32) -> FWord {
    let mut parts = Vec::new();
    for j in (1..k).rev() {
        let mut e = prefix.to_vec();
        e.push(j);
        parts.push((FGen(e), Sign::Neg));
    }
    if !prefix.is_empty() {
        parts.push((FGen(prefix.to_vec()), Sign::Pos));
    }
    FWord::from_parts(parts)
}

/// Colours every node of `t` naturally; the result is coherent.
pub fn natural_colouring(t: &Tree) -> FColouredTree {
    fn build(t: &Tree, prefix: &[u32], k: u32) -> FColouredTree {
        let c = natural_colour(prefix, k);
        match t {
            Tree::Leaf => FColouredTree::Leaf(c),
            Tree::Node(l, r) => {
                let mut addr = prefix.to_vec();
                addr.push(k);
                FColouredTree::Node(
                    c,
                    Box::new(build(l, &addr, 1)),
                    Box::new(build(r, prefix, k + 1)),
                )
            }
        }
    }
    build(t, &[], 1)
}

fn split_spine(t: &FColouredTree) -> (Vec<FColouredTree>, FWord) {
    let mut fs = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            FColouredTree::Leaf(c) => return (fs, c.clone()),
            FColouredTree::Node(_, l, r) => {
                fs.push((**l).clone());
                cur = r;
            }
        }
    }
}

fn join_spine(fs: Vec<FColouredTree>, terminal: FWord) -> FColouredTree {
    let mut cur = FColouredTree::Leaf(terminal);
    for f in fs.into_iter().rev() {
        let c = f.colour().mul(cur.colour());
        cur = FColouredTree::Node(c, Box::new(f), Box::new(cur));
    }
    cur
}

fn act_f_letter(t: &FColouredTree, l: Letter) -> Option<FColouredTree> {
    let (mut fs, terminal) = split_spine(t);
    let n = fs.len();
    let i = l.index as usize;
    match (l.family, l.sign) {
        (crate::words::Family::Sigma, Sign::Pos) => {
            if n < i + 1 {
                return None;
            }
            let x = fs[i - 1].colour().clone();
            let moved = fs[i].conjugated(&x);
            fs[i] = fs[i - 1].clone();
            fs[i - 1] = moved;
        }
        (crate::words::Family::Sigma, Sign::Neg) => {
            if n < i + 1 {
                return None;
            }
            let x = fs[i].colour().inverse();
            let moved = fs[i - 1].conjugated(&x);
            fs[i - 1] = fs[i].clone();
            fs[i] = moved;
        }
        (crate::words::Family::A, Sign::Pos) => {
            if n < i + 1 {
                return None;
            }
            let r = fs.remove(i);
            let c = fs[i - 1].colour().mul(r.colour());
            fs[i - 1] = FColouredTree::Node(c, Box::new(fs[i - 1].clone()), Box::new(r));
        }
        (crate::words::Family::A, Sign::Neg) => {
            if n < i {
                return None;
            }
            match fs[i - 1].clone() {
                FColouredTree::Leaf(_) => return None,
                FColouredTree::Node(_, l, r) => {
                    fs[i - 1] = *l;
                    fs.insert(i, *r);
                }
            }
        }
    }
    Some(join_spine(fs, terminal))
}

/// Applies `w` to a fully coloured tree; crossings conjugate the colours of
/// the factor they displace by the adjacent root colour, reshaping letters
/// only rebuild the spine.  Positions in errors are 1-based.
pub fn act_f_coloured(t: &FColouredTree, w: &Word) -> Result<FColouredTree> {
    let mut cur = t.clone();
    for (pos, &l) in w.letters().iter().enumerate() {
        cur = act_f_letter(&cur, l)
            .ok_or_else(|| Error::Partial { pos: pos + 1, letter: l.to_string() })?;
    }
    Ok(cur)
}

/// A generator of the extended letter family: the crossings and rescalings,
/// plus the exchange letters `c_i` that swap factor i with the whole
/// remainder of the spine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtLetter {
    Plain(Letter),
    Exchange { index: u32, sign: Sign },
}

fn fgen(entries: &[u32]) -> FGen {
    FGen(entries.to_vec())
}

fn join3(head: &[u32], mid: u32, tail: &[u32]) -> FGen {
    let mut e = head.to_vec();
    e.push(mid);
    e.extend_from_slice(tail);
    FGen(e)
}

fn conj_gen(i: u32, inner: FGen, inner_sign: Sign) -> FWord {
    FWord::from_parts(vec![(fgen(&[i]), Sign::Pos), (inner, inner_sign), (fgen(&[i]), Sign::Neg)])
}

/// The image of `x` under the automorphism of a single extended letter.
pub fn generator_image(g: ExtLetter, x: &FGen) -> FWord {
    let e = x.entries();
    let (j, rest) = (e[0], &e[1..]);
    let fixed = FWord::gen(x.clone());
    match g {
        ExtLetter::Plain(l) => {
            let i = l.index;
            match (l.family, l.sign) {
                (crate::words::Family::Sigma, Sign::Pos) => {
                    if j == i {
                        conj_gen(i, join3(&[], i + 1, rest), Sign::Pos)
                    } else if j == i + 1 {
                        FWord::gen(join3(&[], i, rest))
                    } else {
                        fixed
                    }
                }
                (crate::words::Family::Sigma, Sign::Neg) => {
                    if j == i {
                        FWord::gen(join3(&[], i + 1, rest))
                    } else if j == i + 1 {
                        FWord::from_parts(vec![
                            (fgen(&[i + 1]), Sign::Neg),
                            (join3(&[], i, rest), Sign::Pos),
                            (fgen(&[i + 1]), Sign::Pos),
                        ])
                    } else {
                        fixed
                    }
                }
                (crate::words::Family::A, Sign::Pos) => {
                    if j < i {
                        fixed
                    } else if j > i {
                        FWord::gen(join3(&[], j + 1, rest))
                    } else if rest.is_empty() {
                        FWord::from_parts(vec![
                            (fgen(&[i]), Sign::Pos),
                            (fgen(&[i + 1]), Sign::Pos),
                        ])
                    } else if rest[0] == 1 {
                        let mut e2 = vec![i];
                        e2.extend_from_slice(&rest[1..]);
                        FWord::gen(FGen(e2))
                    } else {
                        let mut e2 = vec![i + 1, rest[0] - 1];
                        e2.extend_from_slice(&rest[1..]);
                        FWord::gen(FGen(e2))
                    }
                }
                (crate::words::Family::A, Sign::Neg) => {
                    if j < i {
                        fixed
                    } else if j == i {
                        FWord::gen(join3(&[i], 1, rest))
                    } else if j == i + 1 {
                        if rest.is_empty() {
                            FWord::from_parts(vec![
                                (fgen(&[i, 1]), Sign::Neg),
                                (fgen(&[i]), Sign::Pos),
                            ])
                        } else {
                            let mut e2 = vec![i, rest[0] + 1];
                            e2.extend_from_slice(&rest[1..]);
                            FWord::gen(FGen(e2))
                        }
                    } else {
                        FWord::gen(join3(&[], j - 1, rest))
                    }
                }
            }
        }
        ExtLetter::Exchange { index: i, sign: Sign::Pos } => {
            if j < i {
                fixed
            } else if j > i {
                FWord::gen(join3(&[i], j - i, rest))
            } else if rest.is_empty() {
                FWord::from_parts(vec![(fgen(&[i]), Sign::Neg)])
            } else {
                conj_gen(i, join3(&[], i + rest[0], &rest[1..]), Sign::Pos)
            }
        }
        ExtLetter::Exchange { index: i, sign: Sign::Neg } => {
            if j < i {
                fixed
            } else if j > i {
                conj_gen(i, join3(&[i], j - i, rest), Sign::Pos)
            } else if rest.is_empty() {
                FWord::from_parts(vec![(fgen(&[i]), Sign::Neg)])
            } else {
                FWord::gen(join3(&[], i + rest[0], &rest[1..]))
            }
        }
    }
}

fn substitute(u: &FWord, mut image: impl FnMut(&FGen) -> FWord) -> FWord {
    let mut out = FWord::one();
    for (g, sign) in u.parts() {
        let img = image(g);
        out = out.mul(&if *sign == Sign::Neg { img.inverse() } else { img });
    }
    out
}

/// The image of `u` under the automorphism of `w`: the last letter of `w`
/// acts first, so that the automorphism of a product is the composite of the
/// factors' automorphisms in writing order.
pub fn aut_apply(w: &Word, u: &FWord) -> FWord {
    let mut acc = u.clone();
    for &l in w.letters().iter().rev() {
        acc = substitute(&acc, |g| generator_image(ExtLetter::Plain(l), g));
    }
    acc
}

/// Computes the image of `x_s` through the coloured action: grow an input
/// tree until the output tree has a node whose natural colour is `x_s`, act
/// on the natural colouring, and read off that node's actual colour.
pub fn aut_apply_via_colouring(w: &Word, g: &FGen) -> Result<FWord> {
    // Target address (s, 1) in the output tree.
    let mut target = g.entries().to_vec();
    target.push(1);

    // Walk the address; on falling off at a leaf, report which leaf.
    fn walk_to(t: &Tree, address: &[u32]) -> std::result::Result<(), usize> {
        let mut cur = t;
        let mut leaf_before = 0;
        for (d, &entry) in address.iter().enumerate() {
            if d > 0 {
                match cur {
                    Tree::Node(l, _) => cur = l,
                    Tree::Leaf => return Err(leaf_before),
                }
            }
            for _ in 1..entry {
                match cur {
                    Tree::Node(l, r) => {
                        leaf_before += l.leaf_count();
                        cur = r;
                    }
                    Tree::Leaf => return Err(leaf_before),
                }
            }
        }
        Ok(())
    }

    // Inert colours: the action moves leaf identities without rewriting
    // them, exposing which input leaf lands at each output position.
    struct InertColours;
    impl ColourStructure for InertColours {
        type Colour = usize;
        fn bracket(&self, _x: &usize, y: &usize) -> usize {
            *y
        }
        fn unbracket(&self, _x: &usize, z: &usize) -> Option<usize> {
            Some(*z)
        }
        fn colours_equal(&self, x: &usize, y: &usize) -> bool {
            x == y
        }
        fn is_rack(&self) -> bool {
            true
        }
    }

    let mut t = minimal_input_tree(w)?;
    let cap = target.iter().map(|&e| e as usize).sum::<usize>() + target.len() + 4;
    for _ in 0..cap {
        let out = act_tree(&t, w)?;
        match walk_to(&out, &target) {
            Ok(()) => {
                let nat = natural_colouring(&t);
                let acted = act_f_coloured(&nat, w)?;
                let colour = acted
                    .colour_at(&target)
                    .expect("the walk just found this node")
                    .clone();
                return Ok(colour);
            }
            Err(leaf) => {
                let ids = crate::ld::ColouredTree::new(
                    t.clone(),
                    (0..t.leaf_count()).collect(),
                )?;
                let moved = crate::ld::act_coloured(&ids, w, &InertColours)?;
                t = split_leaf(&t, moved.colours[leaf]);
            }
        }
    }
    Err(Error::Unrealizable)
}

/// Whether `u` ends with `x_s^{-1}` followed only by positive letters whose
/// indices strictly extend `s`.
pub fn is_special_fword(u: &FWord) -> bool {
    let Some(p) = u.parts().iter().rposition(|(_, s)| *s == Sign::Neg) else {
        return false;
    };
    let anchor = u.parts()[p].0.entries();
    u.parts()[p + 1..].iter().all(|(g, _)| {
        g.entries().len() > anchor.len() && g.entries().starts_with(anchor)
    })
}

/// Searches for a generator moved by the automorphism of `w`, scanning all
/// index sequences of length at most `depth` over a bounded alphabet.  A
/// `None` answer is only as strong as the depth.
pub fn nontriviality_witness(w: &Word, depth: u32) -> Option<FGen> {
    let bound = (w.max_index() + 2).max(2);
    let mut seq: Vec<u32> = Vec::new();
    for len in 1..=depth as usize {
        seq.clear();
        seq.resize(len, 1);
        'scan: loop {
            let g = FGen(seq.clone());
            let u = FWord::gen(g.clone());
            if aut_apply(w, &u) != u {
                return Some(g);
            }
            // Advance to the next sequence in lexicographic order; when this
            // length is exhausted, move on to the next one.
            let mut k = len;
            loop {
                if k == 0 {
                    break 'scan;
                }
                k -= 1;
                if seq[k] < bound {
                    seq[k] += 1;
                    for e in &mut seq[k + 1..] {
                        *e = 1;
                    }
                    break;
                }
            }
        }
    }
    None
}
