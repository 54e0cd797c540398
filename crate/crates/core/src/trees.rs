//! Finite binary trees, their dyadic realizations, and the partial action of
//! words on trees.
//!
//! Text forms: a tree is `.` (leaf) or `(tt)`; a position is a tuple like
//! `(1,2,1)` whose first and last entries are >= 1 (interior entries may be
//! 0).  Every tree is identified with its set of dyadic leaf boundaries in
//! [0,1]; positions name those boundaries except the two largest.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::{Family, Letter, Sign, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Box::new(l), Box::new(r))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Factors along the right spine: `t = t_1 (t_2 (... (t_n .)...))`.
    /// Empty exactly when `t` is a leaf.
    pub fn dec(&self) -> Vec<&Tree> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Tree::Node(l, r) = cur {
            out.push(l.as_ref());
            cur = r.as_ref();
        }
        out
    }

    pub fn from_dec(factors: Vec<Tree>) -> Tree {
        let mut t = Tree::Leaf;
        for f in factors.into_iter().rev() {
            t = Tree::node(f, t);
        }
        t
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "."),
            Tree::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        fn parse(bytes: &[u8], at: &mut usize) -> Result<Tree> {
            while bytes.get(*at).is_some_and(|b| b.is_ascii_whitespace()) {
                *at += 1;
            }
            match bytes.get(*at) {
                Some(b'.') => {
                    *at += 1;
                    Ok(Tree::Leaf)
                }
                Some(b'(') => {
                    *at += 1;
                    let l = parse(bytes, at)?;
                    let r = parse(bytes, at)?;
                    while bytes.get(*at).is_some_and(|b| b.is_ascii_whitespace()) {
                        *at += 1;
                    }
                    if bytes.get(*at) != Some(&b')') {
                        return Err(Error::Parse("expected `)` in tree".into()));
                    }
                    *at += 1;
                    Ok(Tree::node(l, r))
                }
                _ => Err(Error::Parse("expected `.` or `(` in tree".into())),
            }
        }
        let bytes = s.as_bytes();
        let mut at = 0;
        let t = parse(bytes, &mut at)?;
        while bytes.get(at).is_some_and(|b| b.is_ascii_whitespace()) {
            at += 1;
        }
        if at != bytes.len() {
            return Err(Error::Parse("trailing input after tree".into()));
        }
        Ok(t)
    }
}

/// Right vine with `height` factors (`height + 1` leaves).
pub fn right_vine(height: usize) -> Tree {
    Tree::from_dec(vec![Tree::Leaf; height])
}

const MAX_EXP: u32 = 62;

/// A dyadic rational in [0,1], kept in lowest terms.  Denominator exponents
/// are capped so every comparison and sum stays exact in machine arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u64,
    exp: u32,
}

impl Dyadic {
    pub fn new(mut num: u64, mut exp: u32) -> Result<Dyadic> {
        if exp > MAX_EXP {
            return Err(Error::Domain(format!("dyadic denominator 2^{exp} too fine")));
        }
        if num > (1u64 << exp) {
            return Err(Error::Domain(format!("dyadic {num}/2^{exp} out of [0,1]")));
        }
        while exp > 0 && num % 2 == 0 {
            num /= 2;
            exp -= 1;
        }
        Ok(Dyadic { num, exp })
    }

    pub fn zero() -> Dyadic {
        Dyadic { num: 0, exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { num: 1, exp: 0 }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn exponent(self) -> u32 {
        self.exp
    }

    pub fn midpoint(self, other: Dyadic) -> Result<Dyadic> {
        let e = self.exp.max(other.exp) + 1;
        if e > MAX_EXP {
            return Err(Error::Domain("dyadic midpoint too fine".into()));
        }
        let n = (self.num << (e - 1 - self.exp)) + (other.num << (e - 1 - other.exp));
        Dyadic::new(n, e)
    }

    pub fn add(self, other: Dyadic) -> Result<Dyadic> {
        let e = self.exp.max(other.exp);
        let n = (self.num << (e - self.exp))
            .checked_add(other.num << (e - other.exp))
            .ok_or_else(|| Error::Domain("dyadic overflow".into()))?;
        Dyadic::new(n, e)
    }

    /// `self - other`, requiring `other <= self`.
    pub fn sub(self, other: Dyadic) -> Result<Dyadic> {
        if other > self {
            return Err(Error::Domain("dyadic subtraction underflow".into()));
        }
        let e = self.exp.max(other.exp);
        let n = (self.num << (e - self.exp)) - (other.num << (e - other.exp));
        Dyadic::new(n, e)
    }

    /// Multiplies by 2^k (k may be negative); result must stay in [0,1].
    pub fn mul_pow2(self, k: i32) -> Result<Dyadic> {
        if self.num == 0 {
            return Ok(Dyadic::zero());
        }
        let e = self.exp as i64 - k as i64;
        if e < 0 {
            let shift = (-e) as u32;
            if shift >= 64 || (self.num << shift) >> shift != self.num {
                return Err(Error::Domain("dyadic overflow".into()));
            }
            Dyadic::new(self.num << shift, 0)
        } else if e > MAX_EXP as i64 {
            Err(Error::Domain("dyadic denominator too fine".into()))
        } else {
            Dyadic::new(self.num, e as u32)
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / (1u64 << self.exp) as f64
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> std::cmp::Ordering {
        let e = self.exp.max(other.exp);
        let a = (self.num as u128) << (e - self.exp);
        let b = (other.num as u128) << (e - other.exp);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.exp)
        }
    }
}

/// A name for a dyadic number: tuple with first and last entries >= 1,
/// interior entries >= 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(Vec<u32>);

impl Position {
    pub fn new(entries: Vec<u32>) -> Result<Position> {
        if entries.is_empty() {
            return Err(Error::Parse("empty position".into()));
        }
        if entries[0] == 0 {
            return Err(Error::LeadingZero);
        }
        if *entries.last().unwrap() == 0 {
            return Err(Error::Parse("position must not end with 0".into()));
        }
        Ok(Position(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn value(&self) -> Result<Dyadic> {
        entries_to_dyadic(&self.0)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Position> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("position `{s}` must be parenthesized")))?;
        let mut entries = Vec::new();
        for part in inner.split(',') {
            entries.push(
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad position entry `{part}`")))?,
            );
        }
        Position::new(entries)
    }
}

/// Binary expansion 0.1^(m1-1) 0 1^m2 0 ... 0 1^mr of a position.
fn entries_to_dyadic(entries: &[u32]) -> Result<Dyadic> {
    let mut bits: Vec<bool> = Vec::new();
    for (i, &m) in entries.iter().enumerate() {
        if i > 0 {
            bits.push(false);
        }
        let ones = if i == 0 { m - 1 } else { m };
        bits.extend(std::iter::repeat(true).take(ones as usize));
    }
    if bits.len() as u32 > MAX_EXP {
        return Err(Error::Domain("position too deep for dyadic arithmetic".into()));
    }
    let mut num: u64 = 0;
    for b in &bits {
        num = num * 2 + *b as u64;
    }
    Dyadic::new(num, bits.len() as u32)
}

/// Inverse of [`Position::value`]; requires `d < 1`.
pub fn dyadic_to_position(d: Dyadic) -> Result<Position> {
    if d == Dyadic::one() {
        return Err(Error::Domain("1 names no position".into()));
    }
    let mut bits = Vec::with_capacity(d.exp as usize);
    for i in (0..d.exp).rev() {
        bits.push((d.num >> i) & 1 == 1);
    }
    let mut entries = vec![1u32];
    for b in bits {
        if b {
            *entries.last_mut().unwrap() += 1;
        } else {
            entries.push(0);
        }
    }
    // A reduced expansion ends in 1 (or is empty), so no trailing 0 entry.
    debug_assert_ne!(entries.last(), Some(&0));
    Position::new(entries)
}

/// All leaf boundaries of `t` in [0,1], sorted; always starts 0 and ends 1.
pub fn tree_dyadics(t: &Tree) -> Result<Vec<Dyadic>> {
    fn collect(t: &Tree, lo: Dyadic, hi: Dyadic, out: &mut Vec<Dyadic>) -> Result<()> {
        match t {
            Tree::Leaf => {
                out.push(lo);
                out.push(hi);
                Ok(())
            }
            Tree::Node(l, r) => {
                let mid = lo.midpoint(hi)?;
                collect(l, lo, mid, out)?;
                collect(r, mid, hi, out)
            }
        }
    }
    let mut out = Vec::new();
    collect(t, Dyadic::zero(), Dyadic::one(), &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// The positions of `t`: its boundary dyadics with the two largest dropped.
pub fn tree_positions(t: &Tree) -> Result<Vec<Position>> {
    let ds = tree_dyadics(t)?;
    ds[..ds.len() - 2].iter().map(|d| dyadic_to_position(*d)).collect()
}

/// Rebuilds the unique tree whose position set is exactly `ps`.
pub fn tree_from_positions(ps: &[Position]) -> Result<Tree> {
    if ps.is_empty() {
        return Ok(Tree::Leaf);
    }
    let n = ps
        .iter()
        .filter(|p| p.entries().len() == 1)
        .map(|p| p.entries()[0])
        .max()
        .ok_or(Error::Unrealizable)?;
    let mut ds: Vec<Dyadic> = ps.iter().map(|p| p.value()).collect::<Result<_>>()?;
    ds.push(entries_to_dyadic(&[n + 1])?);
    ds.push(Dyadic::one());
    ds.sort();
    ds.dedup();
    if ds.len() != ps.len() + 2 {
        return Err(Error::Unrealizable);
    }

    fn build(ds: &[Dyadic]) -> Result<Tree> {
        if ds.len() == 2 {
            return Ok(Tree::Leaf);
        }
        let mid = ds[0].midpoint(*ds.last().unwrap())?;
        let at = ds.binary_search(&mid).map_err(|_| Error::Unrealizable)?;
        Ok(Tree::node(build(&ds[..=at])?, build(&ds[at..])?))
    }
    let t = build(&ds)?;
    debug_assert_eq!(tree_dyadics(&t)?, ds);
    Ok(t)
}

/// Node address: root is (1); the children of (s,k) are (s,k,1) and (s,k+1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(pub Vec<u32>);

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Every node address of `t` with its leaf flag, parents before children,
/// left subtrees before right ones.
pub fn node_addresses(t: &Tree) -> Vec<(Address, bool)> {
    fn walk(t: &Tree, addr: Vec<u32>, out: &mut Vec<(Address, bool)>) {
        out.push((Address(addr.clone()), t.is_leaf()));
        if let Tree::Node(l, r) = t {
            let mut la = addr.clone();
            la.push(1);
            walk(l, la, out);
            let mut ra = addr;
            *ra.last_mut().unwrap() += 1;
            walk(r, ra, out);
        }
    }
    let mut out = Vec::new();
    walk(t, vec![1], &mut out);
    out
}

/// Leaf addresses in left-to-right order.
pub fn leaf_addresses(t: &Tree) -> Vec<Address> {
    node_addresses(t)
        .into_iter()
        .filter_map(|(a, leaf)| leaf.then_some(a))
        .collect()
}

fn navigate<'t>(t: &'t Tree, addr: &Address) -> Option<&'t Tree> {
    let mut cur = t;
    for (j, &e) in addr.0.iter().enumerate() {
        if e == 0 {
            return None;
        }
        if j > 0 {
            // Descend left once to open the next coordinate.
            match cur {
                Tree::Node(l, _) => cur = l,
                Tree::Leaf => return None,
            }
        }
        for _ in 1..e {
            match cur {
                Tree::Node(_, r) => cur = r,
                Tree::Leaf => return None,
            }
        }
    }
    Some(cur)
}

/// Replaces the subtree at `addr` by `sub`.
fn replace_at(t: &Tree, addr: &Address, sub: Tree) -> Option<Tree> {
    fn rebuild(t: &Tree, path: &[u32], sub: Tree) -> Option<Tree> {
        let (&e, rest) = path.split_first()?;
        if e == 0 {
            return None;
        }
        if e > 1 {
            // Step right, decrementing the leading coordinate.
            let mut next = path.to_vec();
            next[0] -= 1;
            return match t {
                Tree::Node(l, r) => Some(Tree::node((**l).clone(), rebuild(r, &next, sub)?)),
                Tree::Leaf => None,
            };
        }
        if rest.is_empty() {
            return Some(sub);
        }
        // Descend left to open the next coordinate.
        match t {
            Tree::Node(l, r) => Some(Tree::node(rebuild(l, rest, sub)?, (**r).clone())),
            Tree::Leaf => None,
        }
    }
    rebuild(t, &addr.0, sub)
}

/// Internal nodes whose children are both leaves, in address order.
pub fn carets(t: &Tree) -> Vec<Address> {
    node_addresses(t)
        .into_iter()
        .filter(|(a, leaf)| {
            !leaf
                && matches!(
                    navigate(t, a),
                    Some(Tree::Node(l, r)) if l.is_leaf() && r.is_leaf()
                )
        })
        .map(|(a, _)| a)
        .collect()
}

pub fn remove_caret(t: &Tree, addr: &Address) -> Option<Tree> {
    match navigate(t, addr) {
        Some(Tree::Node(l, r)) if l.is_leaf() && r.is_leaf() => replace_at(t, addr, Tree::Leaf),
        _ => None,
    }
}

/// Replaces the `idx`-th leaf (0-based, left to right) by a caret.
pub fn split_leaf(t: &Tree, idx: usize) -> Tree {
    fn go(t: &Tree, idx: &mut usize, done: &mut bool) -> Tree {
        match t {
            Tree::Leaf => {
                if !*done && *idx == 0 {
                    *done = true;
                    Tree::node(Tree::Leaf, Tree::Leaf)
                } else {
                    if !*done {
                        *idx -= 1;
                    }
                    Tree::Leaf
                }
            }
            Tree::Node(l, r) => {
                let nl = go(l, idx, done);
                let nr = go(r, idx, done);
                Tree::node(nl, nr)
            }
        }
    }
    let mut idx = idx;
    let mut done = false;
    let out = go(t, &mut idx, &mut done);
    debug_assert!(done, "leaf index out of range");
    out
}

enum LetterFailure {
    /// The right spine is too short (needs more factors).
    Spine,
    /// The inverse a-letter hit a leaf at this factor (0-based).
    LeafAt(usize),
}

fn act_letter(t: &Tree, l: Letter) -> std::result::Result<Tree, LetterFailure> {
    let mut dec: Vec<Tree> = t.dec().into_iter().cloned().collect();
    let i = l.index as usize;
    match (l.family, l.sign) {
        (Family::Sigma, _) => {
            if dec.len() < i + 1 {
                return Err(LetterFailure::Spine);
            }
            dec.swap(i - 1, i);
        }
        (Family::A, Sign::Pos) => {
            if dec.len() < i + 1 {
                return Err(LetterFailure::Spine);
            }
            let r = dec.remove(i);
            let glued = Tree::node(dec[i - 1].clone(), r);
            dec[i - 1] = glued;
        }
        (Family::A, Sign::Neg) => {
            if dec.len() < i {
                return Err(LetterFailure::Spine);
            }
            match dec[i - 1].clone() {
                Tree::Leaf => return Err(LetterFailure::LeafAt(i - 1)),
                Tree::Node(a, b) => {
                    dec[i - 1] = *a;
                    dec.insert(i, *b);
                }
            }
        }
    }
    Ok(Tree::from_dec(dec))
}

/// Applies `w` letter by letter; positions in errors are 1-based.
pub fn act_tree(t: &Tree, w: &Word) -> Result<Tree> {
    let mut cur = t.clone();
    for (pos, &l) in w.letters().iter().enumerate() {
        cur = act_letter(&cur, l)
            .map_err(|_| Error::Partial { pos: pos + 1, letter: l.to_string() })?;
    }
    Ok(cur)
}

/// Like [`act_tree`], also returning the leaf traversal: entry `j` of the
/// returned vector is the source leaf sitting at position `j` of the result.
pub fn act_tree_tracked(t: &Tree, w: &Word) -> Result<(Tree, Vec<usize>)> {
    let mut cur = t.clone();
    let mut ids: Vec<usize> = (0..t.leaf_count()).collect();
    for (pos, &l) in w.letters().iter().enumerate() {
        if l.family == Family::Sigma {
            let counts: Vec<usize> = cur.dec().iter().map(|f| f.leaf_count()).collect();
            let i = l.index as usize;
            if counts.len() >= i + 1 {
                let start: usize = counts[..i - 1].iter().sum();
                let (c1, c2) = (counts[i - 1], counts[i]);
                ids[start..start + c1 + c2].rotate_left(c1);
            }
        }
        cur = act_letter(&cur, l)
            .map_err(|_| Error::Partial { pos: pos + 1, letter: l.to_string() })?;
    }
    Ok((cur, ids))
}

/// The minimal tree on which `w` acts: grow a vine until the action is
/// defined, splitting the source leaf witnessing each failure, then prune
/// every caret whose removal keeps the action defined.
pub fn minimal_input_tree(w: &Word) -> Result<Tree> {
    // Replays `w`, reporting which source leaf must be refined.
    fn replay(t: &Tree, w: &Word) -> std::result::Result<(), usize> {
        let mut cur = t.clone();
        let mut ids: Vec<usize> = (0..t.leaf_count()).collect();
        for &l in w.letters() {
            if l.family == Family::Sigma {
                let counts: Vec<usize> = cur.dec().iter().map(|f| f.leaf_count()).collect();
                let i = l.index as usize;
                if counts.len() >= i + 1 {
                    let start: usize = counts[..i - 1].iter().sum();
                    let (c1, c2) = (counts[i - 1], counts[i]);
                    ids[start..start + c1 + c2].rotate_left(c1);
                }
            }
            match act_letter(&cur, l) {
                Ok(next) => cur = next,
                Err(LetterFailure::Spine) => return Err(*ids.last().unwrap()),
                Err(LetterFailure::LeafAt(f)) => {
                    let counts: Vec<usize> = cur.dec().iter().map(|t| t.leaf_count()).collect();
                    let start: usize = counts[..f].iter().sum();
                    return Err(ids[start]);
                }
            }
        }
        Ok(())
    }

    let mut t = right_vine(w.max_index() as usize + 1);
    let cap = 4 * (w.len() + w.max_index() as usize + 4);
    let mut grows = 0;
    while let Err(leaf) = replay(&t, w) {
        t = split_leaf(&t, leaf);
        grows += 1;
        if grows > cap {
            return Err(Error::Domain("input tree search did not stabilize".into()));
        }
    }
    'outer: loop {
        for addr in carets(&t) {
            if let Some(cand) = remove_caret(&t, &addr) {
                if act_tree(&cand, w).is_ok() {
                    t = cand;
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(t)
}
