//! Subword reversing over the defining relations.
//!
//! The presentation has, for i >= 1 and j >= i+2, the relations
//!
//! ```text
//! s_i s_j = s_j s_i        s_i a_j = a_j s_i
//! a_i a_{j-1} = a_j a_i    a_i s_{j-1} = s_j a_i
//! s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}
//! s_{i+1} s_i a_{i+1} = a_i s_i
//! s_i s_{i+1} a_i = a_{i+1} s_i
//! ```
//!
//! Left reversing rewrites a factor `x y^-1` (x, y positive letters) into
//! `p^-1 q` where `p x = q y` is a relation (or x = y); it always reaches a
//! word `u^-1 v` with u, v positive.  Right reversing rewrites `x^-1 y` into
//! `v u^-1` where `x v = y u`; it can finish, get stuck on a pair admitting
//! no common right multiple, or exhaust its step budget.

use crate::error::{Error, Result};
use crate::words::{double_strand, transpose, Family, Letter, Word};

fn sigma(i: u32) -> Letter {
    Letter::sigma(i)
}

fn a(i: u32) -> Letter {
    Letter::a(i)
}

/// `db_k` of a single positive braid letter, as a word.
fn db_word(l: Letter, k: u32) -> Word {
    double_strand(&Word::single(l), k).expect("braid letter")
}

/// For positive letters x, y, the unique (p, q) with `p x = q y` a relation
/// instance (or x = y and p = q empty).  Total: every pair of letters has a
/// common left multiple.
pub fn left_complement(x: Letter, y: Letter) -> (Word, Word) {
    assert!(x.is_positive() && y.is_positive());
    if x == y {
        return (Word::empty(), Word::empty());
    }
    let (i, j) = (x.index, y.index);
    match (x.family, y.family) {
        (Family::Sigma, Family::Sigma) => {
            if i.abs_diff(j) >= 2 {
                (Word::single(sigma(j)), Word::single(sigma(i)))
            } else {
                // p x = x y x and q y = y x y, the braid relation.
                (Word::from_letters(vec![x, y]), Word::from_letters(vec![y, x]))
            }
        }
        (Family::A, Family::A) => {
            if i > j {
                (Word::single(a(j)), Word::single(a(i + 1)))
            } else {
                (Word::single(a(j + 1)), Word::single(a(i)))
            }
        }
        (Family::Sigma, Family::A) => {
            // a_m s_i = db_m(s_i) a_j with m = s_i[j].
            let m = transpose(x, j);
            (Word::single(a(m)), db_word(x, m))
        }
        (Family::A, Family::Sigma) => {
            let m = transpose(y, i);
            (db_word(y, m), Word::single(a(m)))
        }
    }
}

/// For positive letters x, y, the pair (v, u) with `x v = y u` a relation
/// instance (or x = y and both empty); `None` when x and y admit no common
/// right multiple (adjacent a-indices, and braid/a-letters at index offsets
/// 0).
pub fn right_complement(x: Letter, y: Letter) -> Option<(Word, Word)> {
    assert!(x.is_positive() && y.is_positive());
    if x == y {
        return Some((Word::empty(), Word::empty()));
    }
    let (i, j) = (x.index, y.index);
    let pair = match (x.family, y.family) {
        (Family::Sigma, Family::Sigma) => {
            if i.abs_diff(j) >= 2 {
                (Word::single(sigma(j)), Word::single(sigma(i)))
            } else {
                (Word::from_letters(vec![y, x]), Word::from_letters(vec![x, y]))
            }
        }
        (Family::A, Family::A) => {
            if j >= i + 2 {
                (Word::single(a(j - 1)), Word::single(a(i)))
            } else if i >= j + 2 {
                (Word::single(a(j)), Word::single(a(i - 1)))
            } else {
                return None;
            }
        }
        (Family::Sigma, Family::A) => {
            if j >= i + 2 {
                (Word::single(a(j)), Word::single(sigma(i)))
            } else if j == i + 1 {
                (Word::from_letters(vec![sigma(i + 1), a(i)]), Word::single(sigma(i)))
            } else if j == i {
                return None;
            } else if j + 1 == i {
                (Word::from_letters(vec![sigma(i - 1), a(i)]), Word::single(sigma(i - 1)))
            } else {
                (Word::single(a(j)), Word::single(sigma(i - 1)))
            }
        }
        (Family::A, Family::Sigma) => {
            if i >= j + 2 {
                (Word::single(sigma(j)), Word::single(a(i)))
            } else if i == j + 1 {
                (Word::single(sigma(j)), Word::from_letters(vec![sigma(j + 1), a(j)]))
            } else if i == j {
                return None;
            } else if i + 1 == j {
                (Word::single(sigma(i)), Word::from_letters(vec![sigma(i), a(i + 1)]))
            } else {
                (Word::single(sigma(j - 1)), Word::single(a(i)))
            }
        }
    };
    Some(pair)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One reversing step: the pair of edges removed and the edges added, with
/// `pos` the 0-based offset of the pair in the word as it stood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub index: u64,
    pub pos: usize,
    pub x: Letter,
    pub y: Letter,
    pub removed: (u64, u64),
    pub added: Vec<(u64, Letter)>,
}

/// Append-only record of a reversing run; edge ids are stable, the input
/// letters owning ids 0..n-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversalTrace {
    pub side: Side,
    pub input: Word,
    pub steps: Vec<TraceStep>,
    pub final_edges: Vec<(u64, Letter)>,
}

impl ReversalTrace {
    pub fn to_json(&self) -> serde_json::Value {
        let edge = |&(id, l): &(u64, Letter)| {
            serde_json::json!({ "id": id, "letter": l.to_string() })
        };
        serde_json::json!({
            "schema": 1,
            "side": match self.side { Side::Left => "left", Side::Right => "right" },
            "input": self.input.letters().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "steps": self.steps.iter().map(|s| serde_json::json!({
                "index": s.index,
                "pos": s.pos,
                "x": s.x.to_string(),
                "y": s.y.to_string(),
                "removed": [s.removed.0, s.removed.1],
                "added": s.added.iter().map(edge).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "result": self.final_edges.iter().map(edge).collect::<Vec<_>>(),
        })
    }
}

/// Result of a (always terminating) left reversal: `input = u^-1 v` with
/// u, v positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftReversal {
    pub u: Word,
    pub v: Word,
    pub trace: ReversalTrace,
}

const LEFT_CAP: u64 = 10_000_000;

pub fn left_reverse(w: &Word) -> LeftReversal {
    let mut ls: Vec<(Letter, u64)> =
        w.letters().iter().enumerate().map(|(i, &l)| (l, i as u64)).collect();
    let mut next_id = ls.len() as u64;
    let mut steps: Vec<TraceStep> = Vec::new();
    loop {
        let Some(p) = (0..ls.len().saturating_sub(1))
            .find(|&p| ls[p].0.is_positive() && !ls[p + 1].0.is_positive())
        else {
            break;
        };
        assert!((steps.len() as u64) < LEFT_CAP, "left reversing runaway");
        let (x, xid) = ls[p];
        let (yneg, yid) = ls[p + 1];
        let y = yneg.inv();
        let (pw, qw) = left_complement(x, y);
        let mut added: Vec<(Letter, u64)> = Vec::new();
        for &l in Word::concat(&[&pw.inverse(), &qw]).letters() {
            added.push((l, next_id));
            next_id += 1;
        }
        steps.push(TraceStep {
            index: steps.len() as u64,
            pos: p,
            x,
            y,
            removed: (xid, yid),
            added: added.iter().map(|&(l, id)| (id, l)).collect(),
        });
        ls.splice(p..=p + 1, added);
    }
    let cut = ls.iter().take_while(|(l, _)| !l.is_positive()).count();
    let u = Word::from_letters(ls[..cut].iter().map(|(l, _)| *l).collect()).inverse();
    let v = Word::from_letters(ls[cut..].iter().map(|(l, _)| *l).collect());
    debug_assert!(u.is_positive() && v.is_positive());
    let trace = ReversalTrace {
        side: Side::Left,
        input: w.clone(),
        steps,
        final_edges: ls.iter().map(|&(l, id)| (id, l)).collect(),
    };
    LeftReversal { u, v, trace }
}

/// Terminal state of a right reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RightOutcome {
    /// `input = v u^-1` with u, v positive.
    Done { v: Word, u: Word },
    /// The pair `x^-1 y` at 0-based `pos` admits no common right multiple.
    Stuck { pos: usize, x: Letter, y: Letter },
    BudgetExceeded { steps: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightReversal {
    pub outcome: RightOutcome,
    pub trace: ReversalTrace,
}

/// Step budget for right reversing: `PARENBRAID_BUDGET` or 100000.
pub fn default_budget() -> u64 {
    std::env::var("PARENBRAID_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(100_000)
}

pub fn right_reverse(w: &Word, budget: u64) -> RightReversal {
    let mut ls: Vec<(Letter, u64)> =
        w.letters().iter().enumerate().map(|(i, &l)| (l, i as u64)).collect();
    let mut next_id = ls.len() as u64;
    let mut steps: Vec<TraceStep> = Vec::new();
    let outcome = loop {
        let Some(p) = (0..ls.len().saturating_sub(1))
            .find(|&p| !ls[p].0.is_positive() && ls[p + 1].0.is_positive())
        else {
            let cut = ls.iter().take_while(|(l, _)| l.is_positive()).count();
            let v = Word::from_letters(ls[..cut].iter().map(|(l, _)| *l).collect());
            let u = Word::from_letters(ls[cut..].iter().map(|(l, _)| *l).collect()).inverse();
            debug_assert!(u.is_positive() && v.is_positive());
            break RightOutcome::Done { v, u };
        };
        if steps.len() as u64 >= budget {
            break RightOutcome::BudgetExceeded { steps: steps.len() as u64 };
        }
        let (xneg, xid) = ls[p];
        let (y, yid) = ls[p + 1];
        let x = xneg.inv();
        let Some((vw, uw)) = right_complement(x, y) else {
            break RightOutcome::Stuck { pos: p, x, y };
        };
        let mut added: Vec<(Letter, u64)> = Vec::new();
        for &l in Word::concat(&[&vw, &uw.inverse()]).letters() {
            added.push((l, next_id));
            next_id += 1;
        }
        steps.push(TraceStep {
            index: steps.len() as u64,
            pos: p,
            x,
            y,
            removed: (xid, yid),
            added: added.iter().map(|&(l, id)| (id, l)).collect(),
        });
        ls.splice(p..=p + 1, added);
    };
    let trace = ReversalTrace {
        side: Side::Right,
        input: w.clone(),
        steps,
        final_edges: ls.iter().map(|&(l, id)| (id, l)).collect(),
    };
    RightReversal { outcome, trace }
}

/// Decides equality in the group: reverse `w1 w2^-1` to `u^-1 v`, then check
/// that `v u^-1` left-reverses to the empty word.
pub fn word_problem(w1: &Word, w2: &Word) -> bool {
    let first = left_reverse(&Word::concat(&[w1, &w2.inverse()]));
    let second = left_reverse(&Word::concat(&[&first.v, &first.u.inverse()]));
    second.u.is_empty() && second.v.is_empty()
}

/// For positive u, v: the pair (cu, cv) with `cu u = cv v` their left lcm.
pub fn left_lcm(u: &Word, v: &Word) -> Result<(Word, Word)> {
    for w in [u, v] {
        if !w.is_positive() {
            return Err(Error::NotPositive { pos: 0, found: w.to_string() });
        }
    }
    let r = left_reverse(&Word::concat(&[u, &v.inverse()]));
    Ok((r.u, r.v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RightLcm {
    /// `u cv = v cu` is the right lcm.
    Lcm { cv: Word, cu: Word },
    NoCommonMultiple,
    BudgetExceeded { steps: u64 },
}

/// For positive u, v: their right lcm data, when it exists.
pub fn right_lcm(u: &Word, v: &Word, budget: u64) -> Result<RightLcm> {
    for w in [u, v] {
        if !w.is_positive() {
            return Err(Error::NotPositive { pos: 0, found: w.to_string() });
        }
    }
    let r = right_reverse(&Word::concat(&[&u.inverse(), v]), budget);
    Ok(match r.outcome {
        RightOutcome::Done { v: cv, u: cu } => RightLcm::Lcm { cv, cu },
        RightOutcome::Stuck { .. } => RightLcm::NoCommonMultiple,
        RightOutcome::BudgetExceeded { steps } => RightLcm::BudgetExceeded { steps },
    })
}

/// `Some(c)` with `a = x c` in the monoid, if the letter x left-divides a.
fn strip_left(x: Letter, word: &Word) -> Option<Word> {
    let r = right_reverse(&Word::concat(&[&Word::single(x.inv()), word]), default_budget());
    match r.outcome {
        RightOutcome::Done { v, u } if u.is_empty() => Some(v),
        _ => None,
    }
}

/// `Some(c)` with `a = c x` in the monoid, if the letter x right-divides a.
fn strip_right(x: Letter, word: &Word) -> Option<Word> {
    let r = left_reverse(&Word::concat(&[word, &Word::single(x.inv())]));
    if r.u.is_empty() {
        Some(r.v)
    } else {
        None
    }
}

fn letter_candidates(u: &Word, v: &Word) -> Vec<Letter> {
    let bound = u.max_index().max(v.max_index()) + 2;
    let mut out = Vec::new();
    for i in 1..=bound {
        out.push(sigma(i));
    }
    for i in 1..=bound {
        out.push(a(i));
    }
    out
}

/// Greatest common divisor of two positive words on the chosen side, by
/// greedily stripping letter divisors in (family, index) order.
pub fn gcd(side: Side, u: &Word, v: &Word) -> Result<Word> {
    for w in [u, v] {
        if !w.is_positive() {
            return Err(Error::NotPositive { pos: 0, found: w.to_string() });
        }
    }
    let strip = match side {
        Side::Left => strip_left,
        Side::Right => strip_right,
    };
    let (mut u, mut v) = (u.clone(), v.clone());
    let mut out: Vec<Letter> = Vec::new();
    'outer: loop {
        for x in letter_candidates(&u, &v) {
            if let (Some(u2), Some(v2)) = (strip(x, &u), strip(x, &v)) {
                out.push(x);
                u = u2;
                v = v2;
                continue 'outer;
            }
        }
        break;
    }
    if side == Side::Right {
        out.reverse();
    }
    Ok(Word::from_letters(out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubeOutcome {
    Holds,
    Fails,
    Indeterminate { budget: u64 },
}

/// The cube condition for a triple of positive letters.  On the left side:
/// reverse `x y^-1 y z^-1` to `u^-1 v`, then `u x z^-1 v^-1` must reverse to
/// the empty word.  On the right side: reverse `x^-1 y y^-1 z` to `v u^-1`
/// (a stuck reversal makes the condition vacuous), then `v^-1 x^-1 z u` must
/// reverse to the empty word.
pub fn cube_condition(side: Side, x: Letter, y: Letter, z: Letter, budget: u64) -> CubeOutcome {
    assert!(x.is_positive() && y.is_positive() && z.is_positive());
    match side {
        Side::Left => {
            let w = Word::from_letters(vec![x, y.inv(), y, z.inv()]);
            let r = left_reverse(&w);
            let second = Word::concat(&[
                &r.u,
                &Word::single(x),
                &Word::single(z.inv()),
                &r.v.inverse(),
            ]);
            let s = left_reverse(&second);
            if s.u.is_empty() && s.v.is_empty() {
                CubeOutcome::Holds
            } else {
                CubeOutcome::Fails
            }
        }
        Side::Right => {
            let w = Word::from_letters(vec![x.inv(), y, y.inv(), z]);
            let r = right_reverse(&w, budget);
            match r.outcome {
                RightOutcome::Stuck { .. } => CubeOutcome::Holds,
                RightOutcome::BudgetExceeded { steps } => {
                    CubeOutcome::Indeterminate { budget: steps }
                }
                RightOutcome::Done { v, u } => {
                    let second = Word::concat(&[
                        &v.inverse(),
                        &Word::single(x.inv()),
                        &Word::single(z),
                        &u,
                    ]);
                    match right_reverse(&second, budget).outcome {
                        RightOutcome::Done { v, u } if v.is_empty() && u.is_empty() => {
                            CubeOutcome::Holds
                        }
                        RightOutcome::BudgetExceeded { steps } => {
                            CubeOutcome::Indeterminate { budget: steps }
                        }
                        _ => CubeOutcome::Fails,
                    }
                }
            }
        }
    }
}

/// True when `lhs = rhs` is literally an instance of a defining relation,
/// in either order.
pub fn is_defining_relation(lhs: &Word, rhs: &Word) -> bool {
    fn oriented(l: &[Letter], r: &[Letter]) -> bool {
        use Family::{Sigma, A};
        if !(l.iter().chain(r).all(|x| x.is_positive())) {
            return false;
        }
        let f = |w: &[Letter], k: usize| (w[k].family, w[k].index);
        match (l.len(), r.len()) {
            (2, 2) => {
                let ((f1, i1), (f2, i2)) = (f(l, 0), f(l, 1));
                let ((g1, j1), (g2, j2)) = (f(r, 0), f(r, 1));
                // s_i s_j = s_j s_i, j >= i+2
                (f1 == Sigma && f2 == Sigma && g1 == Sigma && g2 == Sigma
                    && i1.abs_diff(i2) >= 2 && j1 == i2 && j2 == i1)
                // s_i a_j = a_j s_i, j >= i+2
                || (f1 == Sigma && f2 == A && g1 == A && g2 == Sigma
                    && i2 >= i1 + 2 && j1 == i2 && j2 == i1)
                || (f1 == A && f2 == Sigma && g1 == Sigma && g2 == A
                    && i1 >= i2 + 2 && j1 == i2 && j2 == i1)
                // a_i a_{j-1} = a_j a_i, j >= i+2
                || (f1 == A && f2 == A && g1 == A && g2 == A
                    && i2 >= i1 + 1 && j1 == i2 + 1 && j2 == i1)
                // a_i s_{j-1} = s_j a_i, j >= i+2
                || (f1 == A && f2 == Sigma && g1 == Sigma && g2 == A
                    && i2 >= i1 + 1 && j1 == i2 + 1 && j2 == i1)
            }
            (3, 3) => {
                let ((f1, i1), (f2, i2), (f3, i3)) = (f(l, 0), f(l, 1), f(l, 2));
                let ((g1, j1), (g2, j2), (g3, j3)) = (f(r, 0), f(r, 1), f(r, 2));
                // s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}
                [f1, f2, f3, g1, g2, g3].iter().all(|&x| x == Sigma)
                    && i1 == i3 && j1 == j3 && i1.abs_diff(i2) == 1
                    && j1 == i2 && j2 == i1
            }
            (3, 2) => {
                let ((f1, i1), (f2, i2), (f3, i3)) = (f(l, 0), f(l, 1), f(l, 2));
                let ((g1, j1), (g2, j2)) = (f(r, 0), f(r, 1));
                // s_{i+1} s_i a_{i+1} = a_i s_i
                (f1 == Sigma && f2 == Sigma && f3 == A && g1 == A && g2 == Sigma
                    && i1 == i2 + 1 && i3 == i2 + 1 && j1 == i2 && j2 == i2)
                // s_i s_{i+1} a_i = a_{i+1} s_i
                || (f1 == Sigma && f2 == Sigma && f3 == A && g1 == A && g2 == Sigma
                    && i2 == i1 + 1 && i3 == i1 && j1 == i1 + 1 && j2 == i1)
            }
            _ => false,
        }
    }
    oriented(lhs.letters(), rhs.letters()) || oriented(rhs.letters(), lhs.letters())
}

/// Every word obtained from `w` by one application of a defining relation to
/// a (positive) subword, in either direction.
pub fn one_step_rewrites(w: &Word) -> Vec<Word> {
    use Family::{Sigma, A};
    let ls = w.letters();
    let mut out: Vec<Word> = Vec::new();
    let mut emit = |p: usize, take: usize, repl: Vec<Letter>| {
        let mut v = ls[..p].to_vec();
        v.extend(repl);
        v.extend_from_slice(&ls[p + take..]);
        out.push(Word::from_letters(v));
    };
    for p in 0..ls.len() {
        if ls.len() - p >= 2 && ls[p].is_positive() && ls[p + 1].is_positive() {
            let (x, y) = (ls[p], ls[p + 1]);
            let (m, q) = (x.index, y.index);
            match (x.family, y.family) {
                (Sigma, Sigma) => {
                    if m.abs_diff(q) >= 2 {
                        emit(p, 2, vec![y, x]);
                    }
                }
                (Sigma, A) => {
                    if m + 2 <= q {
                        emit(p, 2, vec![y, x]);
                    } else if m >= q + 2 {
                        emit(p, 2, vec![a(q), sigma(m - 1)]);
                    }
                }
                (A, Sigma) => {
                    if m >= q + 2 {
                        emit(p, 2, vec![y, x]);
                    } else if m == q {
                        emit(p, 2, vec![sigma(m + 1), sigma(m), a(m + 1)]);
                    } else if m == q + 1 {
                        emit(p, 2, vec![sigma(q), sigma(q + 1), a(q)]);
                    } else {
                        // m <= q-1: a_m s_q = s_{q+1} a_m
                        emit(p, 2, vec![sigma(q + 1), a(m)]);
                    }
                }
                (A, A) => {
                    if q >= m + 1 {
                        emit(p, 2, vec![a(q + 1), a(m)]);
                    } else if m >= q + 2 {
                        emit(p, 2, vec![a(q), a(m - 1)]);
                    }
                }
            }
        }
        if ls.len() - p >= 3 && ls[p..p + 3].iter().all(|l| l.is_positive()) {
            let (x, y, z) = (ls[p], ls[p + 1], ls[p + 2]);
            if x.family == Sigma && y.family == Sigma {
                let (i, j) = (x.index, y.index);
                if z.family == Sigma && z.index == i && i.abs_diff(j) == 1 {
                    emit(p, 3, vec![y, x, y]);
                }
                if z.family == A && j + 1 == i && z.index == i {
                    emit(p, 3, vec![a(j), sigma(j)]);
                }
                if z.family == A && j == i + 1 && z.index == i {
                    emit(p, 3, vec![a(i + 1), sigma(i)]);
                }
            }
        }
    }
    out
}
