//! Normal forms: Zappa-Szep splitting of positive words, fraction forms,
//! special decompositions over the colour calculus, and purity.

use crate::error::{Error, Result};
use crate::ld::{act_coloured, ev, ev_plain, split_factors, BraidColours, ColouredTree};
use crate::reversing::{left_reverse, word_problem};
use crate::trees::{act_tree, act_tree_tracked, minimal_input_tree, right_vine, Tree};
use crate::words::{double_strand, free_reduce, transpose, Family, Word};

/// A positive element split as braid part times Thompson part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZsPair {
    pub braid: Word,
    pub thompson: Word,
}

/// Splits a positive word as a sigma-word followed by an a-word, bubbling
/// each rescaling letter to the right through `a_k g = db_k(g) a_{g[k]}`.
/// The output words depend on the input word, not just its class; equality
/// of splittings is always up to the defining relations.
pub fn zs_split(w: &Word) -> Result<ZsPair> {
    w.check_positive()?;
    let mut ls = w.letters().to_vec();
    loop {
        let Some(p) = (0..ls.len().saturating_sub(1))
            .find(|&p| ls[p].family == Family::A && ls[p + 1].family == Family::Sigma)
        else {
            break;
        };
        let k = ls[p].index;
        let g = ls[p + 1];
        let mut repl =
            double_strand(&Word::single(g), k).expect("crossings double").letters().to_vec();
        repl.push(crate::words::Letter::a(transpose(g, k)));
        ls.splice(p..p + 2, repl);
    }
    let cut = ls.iter().position(|l| l.family == Family::A).unwrap_or(ls.len());
    Ok(ZsPair {
        braid: Word::from_letters(ls[..cut].to_vec()),
        thompson: Word::from_letters(ls[cut..].to_vec()),
    })
}

/// `w` is equal to `num^-1 den` with both parts positive; the two splits
/// refine this to `f^-1 beta^-1 gamma g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionForm {
    pub num: Word,
    pub den: Word,
    /// num = num_split.braid . num_split.thompson
    pub num_split: ZsPair,
    pub den_split: ZsPair,
}

pub fn fraction_form(w: &Word) -> FractionForm {
    let r = left_reverse(w);
    let num_split = zs_split(&r.u).expect("left reversal output is positive");
    let den_split = zs_split(&r.v).expect("left reversal output is positive");
    FractionForm { num: r.u, den: r.v, num_split, den_split }
}

fn vine_for(w: &Word) -> Tree {
    right_vine(w.max_index() as usize + w.len() + 2)
}

/// The product `f_1 shift(f_2) ... shift^(n-1)(f_n)`.
pub fn shifted_product(factors: &[Word]) -> Word {
    let mut out = Word::empty();
    for (k, f) in factors.iter().enumerate() {
        out.extend(&f.shift(k as u32));
    }
    free_reduce(&out)
}

/// The tree sequence of a positive Thompson word: acting on a large plain
/// vine leaves `(t_1) ... (t_p)` followed by untouched leaves.
pub fn thompson_tree_sequence(f: &Word) -> Result<Vec<Tree>> {
    f.check_a_word()?;
    f.check_positive()?;
    let t = act_tree(&vine_for(f), f).expect("the vine is large enough");
    let dec = t.dec();
    let keep = dec.iter().rposition(|f| !f.is_leaf()).map_or(0, |p| p + 1);
    Ok(dec[..keep].iter().map(|&t| t.clone()).collect())
}

/// The unique tree evaluating to `f` when `f` is a special Thompson word.
pub fn parse_special_thompson(f: &Word) -> Result<Option<Tree>> {
    f.check_a_word()?;
    f.check_positive()?;
    let t = act_tree(&vine_for(f), f).expect("the vine is large enough");
    let dec = t.dec();
    if dec[1..].iter().all(|f| f.is_leaf()) {
        Ok(Some(dec[0].clone()))
    } else {
        Ok(None)
    }
}

/// A decomposition into special factors, factor k applied under shift^(k-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialDecomposition {
    pub factors: Vec<Word>,
}

/// The unique decomposition of a positive Thompson word into special
/// Thompson factors.
pub fn special_decomposition_f(f: &Word) -> Result<SpecialDecomposition> {
    let trees = thompson_tree_sequence(f)?;
    Ok(SpecialDecomposition { factors: trees.iter().map(ev_plain).collect() })
}

/// A positive element decomposed into special factors, refined into special
/// braid colours and special Thompson skeleton evaluations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveDecomposition {
    /// Special parenthesized braids; the element is their shifted product.
    pub factors: Vec<Word>,
    /// All leaf colours of the kept coloured factors, in order: special
    /// braid words whose shifted product is the braid part.
    pub braids: Vec<Word>,
    /// Skeleton evaluations: special Thompson words whose shifted product
    /// is the Thompson part.
    pub thompsons: Vec<Word>,
}

/// Decomposes a positive word by acting on a trivially coloured vine and
/// evaluating the touched factors.
pub fn decompose_positive(w: &Word) -> Result<PositiveDecomposition> {
    w.check_positive()?;
    let vine = ColouredTree::uniform(vine_for(w), Word::empty());
    let coloured = act_coloured(&vine, w, &BraidColours).expect("the vine is large enough");
    let (factors, _) = split_factors(&coloured);
    let keep = factors
        .iter()
        .rposition(|f| !(f.skeleton.is_leaf() && f.colours[0].is_empty()))
        .map_or(0, |p| p + 1);
    let kept = &factors[..keep];
    let mut braids = Vec::new();
    for f in kept {
        braids.extend(f.colours.iter().cloned());
    }
    Ok(PositiveDecomposition {
        factors: kept.iter().map(ev).collect(),
        braids,
        thompsons: kept.iter().map(|f| ev_plain(&f.skeleton)).collect(),
    })
}

/// A special element written over its witness tree: the shifted product of
/// the braid colours times the skeleton evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSplit {
    pub braids: Vec<Word>,
    pub thompson: Word,
    pub tree: Tree,
}

/// Splits a word known to represent a special element by running the vine
/// test: the coloured action must leave a single tree followed by trivially
/// coloured leaves.
pub fn split_special(z: &Word) -> Result<SpecialSplit> {
    let vine = ColouredTree::uniform(vine_for(z), Word::empty());
    let coloured = act_coloured(&vine, z, &BraidColours).map_err(|e| Error::NotSpecial {
        reason: format!("the coloured vine action is undefined: {e}"),
    })?;
    let (factors, _) = split_factors(&coloured);
    for (k, f) in factors.iter().enumerate().skip(1) {
        if !f.skeleton.is_leaf() {
            return Err(Error::NotSpecial { reason: format!("factor {} is not a leaf", k + 1) });
        }
        if !word_problem(&f.colours[0], &Word::empty()) {
            return Err(Error::NotSpecial {
                reason: format!("factor {} carries a non-trivial colour", k + 1),
            });
        }
    }
    let head = &factors[0];
    Ok(SpecialSplit {
        braids: head.colours.clone(),
        thompson: ev_plain(&head.skeleton),
        tree: head.skeleton.clone(),
    })
}

/// Whether the induced rearrangement is trivial: the minimal input tree is
/// fixed and the strand bijection is the identity.
pub fn is_pure(w: &Word) -> bool {
    let t = minimal_input_tree(w).expect("a large enough tree exists");
    let (out, ids) = act_tree_tracked(&t, w).expect("defined on the minimal tree");
    out == t && ids.iter().enumerate().all(|(k, &v)| k == v)
}
