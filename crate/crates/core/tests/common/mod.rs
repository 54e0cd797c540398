//! Shared generators for the integration suites.

#![allow(dead_code)]

use parenbraid::{Letter, Tree, Word};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn random_letter(r: &mut ChaCha8Rng, max_index: u32, signed: bool) -> Letter {
    let i = r.gen_range(1..=max_index);
    let base = if r.gen_bool(0.5) { Letter::sigma(i) } else { Letter::a(i) };
    if signed && r.gen_bool(0.5) {
        base.inv()
    } else {
        base
    }
}

pub fn random_word(r: &mut ChaCha8Rng, len: usize, max_index: u32, signed: bool) -> Word {
    Word::from_letters((0..len).map(|_| random_letter(r, max_index, signed)).collect())
}

pub fn random_sigma_word(r: &mut ChaCha8Rng, len: usize, max_index: u32, signed: bool) -> Word {
    Word::from_letters(
        (0..len)
            .map(|_| {
                let l = Letter::sigma(r.gen_range(1..=max_index));
                if signed && r.gen_bool(0.5) {
                    l.inv()
                } else {
                    l
                }
            })
            .collect(),
    )
}

pub fn random_a_word(r: &mut ChaCha8Rng, len: usize, max_index: u32, signed: bool) -> Word {
    Word::from_letters(
        (0..len)
            .map(|_| {
                let l = Letter::a(r.gen_range(1..=max_index));
                if signed && r.gen_bool(0.5) {
                    l.inv()
                } else {
                    l
                }
            })
            .collect(),
    )
}

/// All instances of the seven defining relation schemas in which every
/// letter index is at most `max_letter_index`.
pub fn relation_instances(max_letter_index: u32) -> Vec<(Word, Word)> {
    let n = max_letter_index;
    let mut out: Vec<(Word, Word)> = Vec::new();
    let mut push = |l: &str, r: &str| out.push((w(l), w(r)));
    for i in 1.. {
        if i + 2 > n {
            break;
        }
        for j in i + 2..=n {
            push(&format!("s{i} s{j}"), &format!("s{j} s{i}"));
            push(&format!("s{i} a{j}"), &format!("a{j} s{i}"));
            push(&format!("a{i} a{}", j - 1), &format!("a{j} a{i}"));
            push(&format!("a{i} s{}", j - 1), &format!("s{j} a{i}"));
        }
    }
    for i in 1.. {
        if i + 1 > n {
            break;
        }
        push(
            &format!("s{i} s{} s{i}", i + 1),
            &format!("s{} s{i} s{}", i + 1, i + 1),
        );
        push(&format!("s{} s{i} a{}", i + 1, i + 1), &format!("a{i} s{i}"));
        push(&format!("s{i} s{} a{i}", i + 1), &format!("a{} s{i}", i + 1));
    }
    out
}

/// All binary trees with exactly `leaves` leaves.
pub fn all_trees(leaves: usize) -> Vec<Tree> {
    assert!(leaves >= 1);
    if leaves == 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..leaves {
        for l in all_trees(k) {
            for r in all_trees(leaves - k) {
                out.push(Tree::node(l.clone(), r.clone()));
            }
        }
    }
    out
}

pub fn random_tree(r: &mut ChaCha8Rng, leaves: usize) -> Tree {
    if leaves == 1 {
        return Tree::Leaf;
    }
    let k = r.gen_range(1..leaves);
    Tree::node(random_tree(r, k), random_tree(r, leaves - k))
}
