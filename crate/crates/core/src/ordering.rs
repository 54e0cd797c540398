//! The canonical left-invariant linear order: a tree order, the dilation
//! order on Thompson elements, the braid order, and their merge.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ld::{act_coloured, BraidColours, ColouredTree};
use crate::normal::{thompson_tree_sequence, zs_split};
use crate::reversing::{left_lcm, left_reverse, word_problem};
use crate::trees::{right_vine, Dyadic, Tree};
use crate::words::{
    double_strand, free_reduce, handle_reduce, is_sigma_negative, is_sigma_positive, Letter, Word,
};

/// Orders trees: a leaf precedes every node, and nodes compare by children
/// lexicographically.  Equivalently, the sorted dyadic endpoint sequences
/// compare reversed-lexicographically.
pub fn tree_cmp(t: &Tree, t2: &Tree) -> Ordering {
    match (t, t2) {
        (Tree::Leaf, Tree::Leaf) => Ordering::Equal,
        (Tree::Leaf, _) => Ordering::Less,
        (_, Tree::Leaf) => Ordering::Greater,
        (Tree::Node(l, r), Tree::Node(l2, r2)) => tree_cmp(l, l2).then_with(|| tree_cmp(r, r2)),
    }
}

/// An exact piecewise linear homeomorphism of [0, 1] with dyadic
/// breakpoints and power-of-two slopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLMap {
    points: Vec<(Dyadic, Dyadic)>,
}

/// The slope exponent over a segment: `dy = dx * 2^k` exactly, when the
/// slope is a power of two.
fn slope_exp(dx: Dyadic, dy: Dyadic) -> Option<i32> {
    if dx.numerator() == dy.numerator() {
        Some(dx.exponent() as i32 - dy.exponent() as i32)
    } else {
        None
    }
}

impl PLMap {
    pub fn identity() -> PLMap {
        PLMap { points: vec![(Dyadic::zero(), Dyadic::zero()), (Dyadic::one(), Dyadic::one())] }
    }

    pub fn points(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    fn from_points(mut points: Vec<(Dyadic, Dyadic)>) -> PLMap {
        // Drop interior breakpoints where the slope does not change.
        let mut k = 1;
        while k + 1 < points.len() {
            let (x0, y0) = points[k - 1];
            let (x1, y1) = points[k];
            let (x2, y2) = points[k + 1];
            let left = (x1.sub(x0).unwrap(), y1.sub(y0).unwrap());
            let right = (x2.sub(x1).unwrap(), y2.sub(y1).unwrap());
            if slope_exp(left.0, left.1).is_some()
                && slope_exp(left.0, left.1) == slope_exp(right.0, right.1)
            {
                points.remove(k);
            } else {
                k += 1;
            }
        }
        PLMap { points }
    }

    pub fn inverse(&self) -> PLMap {
        PLMap { points: self.points.iter().map(|&(x, y)| (y, x)).collect() }
    }

    pub fn eval(&self, x: Dyadic) -> Result<Dyadic> {
        let k = match self.points.binary_search_by(|p| p.0.cmp(&x)) {
            Ok(k) => return Ok(self.points[k].1),
            Err(k) => k, // x sits strictly inside segment k-1 .. k
        };
        let (x0, y0) = self.points[k - 1];
        let (x1, y1) = self.points[k];
        let e = slope_exp(x1.sub(x0)?, y1.sub(y0)?)
            .ok_or_else(|| Error::Domain("slope is not a power of two".into()))?;
        y0.add(x.sub(x0)?.mul_pow2(e)?)
    }

    /// `g` after `f`.
    pub fn compose(g: &PLMap, f: &PLMap) -> Result<PLMap> {
        let fi = f.inverse();
        let mut xs: Vec<Dyadic> = f.points.iter().map(|p| p.0).collect();
        for p in &g.points {
            xs.push(fi.eval(p.0)?);
        }
        xs.sort();
        xs.dedup();
        let mut points = Vec::with_capacity(xs.len());
        for x in xs {
            points.push((x, g.eval(f.eval(x)?)?));
        }
        Ok(PLMap::from_points(points))
    }

    /// Signs of `slope - 1` over the segments, left to right.
    fn slope_signs(&self) -> Vec<Ordering> {
        self.points
            .windows(2)
            .map(|w| {
                let dx = w[1].0.sub(w[0].0).unwrap();
                let dy = w[1].1.sub(w[0].1).unwrap();
                dy.cmp(&dx)
            })
            .collect()
    }
}

fn letter_map(l: Letter) -> Result<PLMap> {
    let i = l.index;
    // The map for a_i: identity up to c = 1 - 2^(1-i), then a scaled copy
    // of the slope-(1/2, 1, 2) map of a_1 on [c, 1].
    let c = if i == 1 { Dyadic::zero() } else { Dyadic::new((1 << (i - 1)) - 1, i - 1)? };
    let p = |num_off: u64, exp: u32| -> Result<Dyadic> { c.add(Dyadic::new(num_off, exp)?) };
    let mut points = Vec::new();
    if i > 1 {
        points.push((Dyadic::zero(), Dyadic::zero()));
    }
    points.push((c, c));
    points.push((p(1, i)?, p(1, i + 1)?));
    points.push((p(3, i + 1)?, p(1, i)?));
    points.push((Dyadic::one(), Dyadic::one()));
    let m = PLMap { points };
    Ok(if l.is_positive() { m } else { m.inverse() })
}

/// The canonical homeomorphism of a Thompson word; composition is
/// contravariant: the map of `f g` is the map of `g` after the map of `f`.
pub fn homeo_of(f: &Word) -> Result<PLMap> {
    f.check_a_word()?;
    let mut cur = PLMap::identity();
    for &l in f.letters() {
        cur = PLMap::compose(&letter_map(l)?, &cur)?;
    }
    Ok(cur)
}

/// The dilation order on Thompson elements.  Positive words compare by the
/// lexicographic tree order of their special decompositions (shorter
/// sequences padded with leaves); in general, the first non-unit slope of
/// the homeomorphism of `f^-1 f2` decides, smaller meaning `f` is larger.
pub fn cmp_f(f: &Word, f2: &Word) -> Result<Ordering> {
    f.check_a_word()?;
    f2.check_a_word()?;
    if f.is_positive() && f2.is_positive() {
        let s = thompson_tree_sequence(f)?;
        let s2 = thompson_tree_sequence(f2)?;
        for k in 0..s.len().max(s2.len()) {
            let t = s.get(k).unwrap_or(&Tree::Leaf);
            let t2 = s2.get(k).unwrap_or(&Tree::Leaf);
            match tree_cmp(t, t2) {
                Ordering::Equal => continue,
                o => return Ok(o),
            }
        }
        return Ok(Ordering::Equal);
    }
    cmp_f_via_slopes(f, f2)
}

/// The slope criterion alone: the first non-unit slope of the homeomorphism
/// of `f^-1 f2` decides, a slope below one meaning `f` comes first.
pub fn cmp_f_via_slopes(f: &Word, f2: &Word) -> Result<Ordering> {
    f.check_a_word()?;
    f2.check_a_word()?;
    let h = homeo_of(&free_reduce(&Word::concat(&[&f.inverse(), f2])))?;
    for s in h.slope_signs() {
        match s {
            Ordering::Equal => continue,
            // First slope below 1: the quotient exceeds 1, so f comes first.
            Ordering::Less => return Ok(Ordering::Less),
            Ordering::Greater => return Ok(Ordering::Greater),
        }
    }
    Ok(Ordering::Equal)
}

/// The braid order, decided by handle reduction of `b^-1 b2`: the reduced
/// word is empty or its minimal-index generator occurs with one sign only.
pub fn cmp_b(b: &Word, b2: &Word) -> Result<Ordering> {
    b.check_sigma()?;
    b2.check_sigma()?;
    let r = handle_reduce(&free_reduce(&Word::concat(&[&b.inverse(), b2])))?;
    if r.is_empty() {
        Ok(Ordering::Equal)
    } else if is_sigma_positive(&r).is_some() {
        Ok(Ordering::Less)
    } else if is_sigma_negative(&r).is_some() {
        Ok(Ordering::Greater)
    } else {
        unreachable!("a handle-free word is sigma-positive or sigma-negative")
    }
}

/// The order on positive elements: braid parts first, Thompson parts as the
/// tie-break.
pub fn cmp_plus(x: &Word, x2: &Word) -> Result<Ordering> {
    let a = zs_split(x)?;
    let b = zs_split(x2)?;
    match cmp_b(&a.braid, &b.braid)? {
        Ordering::Equal => cmp_f(&a.thompson, &b.thompson),
        o => Ok(o),
    }
}

/// A comparison outcome with, when the quotient lies outside the Thompson
/// subgroup, a tidy sigma-positive word witnessing the larger side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub outcome: Ordering,
    pub certificate: Option<Word>,
}

/// Compares arbitrary elements by reducing `x^-1 x2` to a positive fraction
/// and comparing the parts.  The certificate, when present, represents
/// `x^-1 x2` (outcome less) or `x2^-1 x` (outcome greater).
pub fn cmp(x: &Word, x2: &Word) -> Result<Comparison> {
    let r = left_reverse(&free_reduce(&Word::concat(&[&x.inverse(), x2])));
    let u = zs_split(&r.u).expect("reversal outputs are positive");
    let v = zs_split(&r.v).expect("reversal outputs are positive");
    let braids = cmp_b(&u.braid, &v.braid)?;
    let outcome = match braids {
        Ordering::Equal => cmp_f(&u.thompson, &v.thompson)?,
        o => o,
    };
    let certificate = match braids {
        Ordering::Equal => None,
        Ordering::Less => Some(Word::concat(&[
            &u.thompson.inverse(),
            &handle_reduce(&free_reduce(&Word::concat(&[&u.braid.inverse(), &v.braid])))?,
            &v.thompson,
        ])),
        Ordering::Greater => Some(Word::concat(&[
            &v.thompson.inverse(),
            &handle_reduce(&free_reduce(&Word::concat(&[&v.braid.inverse(), &u.braid])))?,
            &u.thompson,
        ])),
    };
    Ok(Comparison { outcome, certificate })
}

/// The braid `db_i^p db_{i+1}^p (s_i)`: the crossing with both strands
/// doubled `p` times.
pub fn db_block(i: u32, p: u32) -> Word {
    let mut w = Word::single(Letter::sigma(i));
    for _ in 0..p {
        w = double_strand(&w, i + 1).expect("doubling a sigma-word");
    }
    for _ in 0..p {
        w = double_strand(&w, i).expect("doubling a sigma-word");
    }
    w
}

/// How conjugation by `a_k` rewrites a doubled crossing:
/// `a_k db_i^p db_{i+1}^p(s_i) a_k^-1  =  a_k'^-e db_i'^(p+e) db_{i'+1}^(p+e)(s_i') a_k'^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjByA {
    pub e: u32,
    pub i: u32,
    pub k: u32,
}

/// Finds the parameters by bounded search validated with the word problem.
pub fn conj_by_a(k: u32, i: u32, p: u32) -> Result<ConjByA> {
    let ak = Word::single(Letter::a(k));
    let lhs = Word::concat(&[&ak, &db_block(i, p), &ak.inverse()]);
    for e in 0..=1u32 {
        for i2 in i.saturating_sub(1).max(1)..=i + 1 {
            let kmax = if e == 0 { k } else { k + 2 * p + 4 };
            let kmin = if e == 0 { k } else { 1 };
            for k2 in kmin..=kmax {
                let ak2 = Word::single(Letter::a(k2));
                let rhs = if e == 0 {
                    db_block(i2, p)
                } else {
                    Word::concat(&[&ak2.inverse(), &db_block(i2, p + e), &ak2])
                };
                if word_problem(&lhs, &rhs) {
                    return Ok(ConjByA { e, i: i2, k: k2 });
                }
            }
        }
    }
    Err(Error::Domain(format!("no conjugation form for k={k}, i={i}, p={p}")))
}

/// Compares via colourings: act on a common trivially coloured vine after
/// clearing denominators, compare the colour sequences lexicographically in
/// the braid order, and tie-break on the skeletons.
pub fn order_via_colouring(w: &Word, w2: &Word) -> Result<Ordering> {
    let r1 = left_reverse(w);
    let r2 = left_reverse(w2);
    let (q1, q2) = left_lcm(&r1.u, &r2.u)?;
    let x1 = free_reduce(&Word::concat(&[&q1, &r1.v]));
    let x2 = free_reduce(&Word::concat(&[&q2, &r2.v]));
    let size = (x1.max_index().max(x2.max_index()) as usize) + x1.len().max(x2.len()) + 2;
    let vine = ColouredTree::uniform(right_vine(size), Word::empty());
    let c1 = act_coloured(&vine, &x1, &BraidColours)?;
    let c2 = act_coloured(&vine, &x2, &BraidColours)?;
    for (a, b) in c1.colours.iter().zip(&c2.colours) {
        match cmp_b(a, b)? {
            Ordering::Equal => continue,
            o => return Ok(o),
        }
    }
    Ok(tree_cmp(&c1.skeleton, &c2.skeleton))
}
