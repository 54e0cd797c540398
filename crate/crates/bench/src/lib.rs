//! Deterministic input families for the criterion benchmarks.
//!
//! Everything here is reproducible without a seed so that benchmark runs
//! compare like with like across machines and revisions.

use parenbraid::{Letter, Tree, Word};

/// `(s1^-1 s2)^n` — the classic input that makes right reversing work
/// quadratically hard while staying within two strand families.
pub fn alternating_word(n: usize) -> Word {
    let mut letters = Vec::with_capacity(2 * n);
    for _ in 0..n {
        letters.push(Letter::sigma(1).inv());
        letters.push(Letter::sigma(2));
    }
    Word::from_letters(letters)
}

/// A signed word cycling through both families with drifting indices.
/// The pattern is fixed, so equal `n` and `max_index` give equal words.
pub fn mixed_word(n: usize, max_index: u32) -> Word {
    let mut letters = Vec::with_capacity(n);
    for k in 0..n {
        let i = (k as u32 * 7 + 3) % max_index + 1;
        let base = if k % 3 == 0 { Letter::a(i) } else { Letter::sigma(i) };
        let l = if k % 4 == 2 { base.inv() } else { base };
        letters.push(l);
    }
    Word::from_letters(letters)
}

/// A positive word in both families, suitable for normal-form splitting.
pub fn positive_word(n: usize, max_index: u32) -> Word {
    let mut letters = Vec::with_capacity(n);
    for k in 0..n {
        let i = (k as u32 * 5 + 1) % max_index + 1;
        letters.push(if k % 2 == 0 { Letter::sigma(i) } else { Letter::a(i) });
    }
    Word::from_letters(letters)
}

/// The left comb of height `h` (all leaves hanging off the left spine).
pub fn left_comb(h: usize) -> Tree {
    let mut t = Tree::Leaf;
    for _ in 0..h {
        t = Tree::node(t, Tree::Leaf);
    }
    t
}

/// A balanced tree with `2^k` leaves.
pub fn balanced_tree(k: usize) -> Tree {
    if k == 0 {
        return Tree::Leaf;
    }
    let sub = balanced_tree(k - 1);
    Tree::node(sub.clone(), sub)
}
