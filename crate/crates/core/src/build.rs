//! Constructors for the named summation orders.

use std::collections::HashSet;

use thiserror::Error;

use crate::tree::{Blank, Label, Shape, SumTree, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("empty label sequence")]
    Empty,
    #[error("duplicate label {0:?}")]
    Duplicate(String),
}

fn check(labels: &[Label]) -> Result<(), BuildError> {
    if labels.is_empty() {
        return Err(BuildError::Empty);
    }
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l) {
            return Err(BuildError::Duplicate(l.to_string()));
        }
    }
    Ok(())
}

/// Serial summation: the left-deep fold `(((a+b)+c)+d)`.
pub fn ladder(labels: &[Label]) -> Result<SumTree, BuildError> {
    check(labels)?;
    Ok(ladder_of(labels.iter().cloned().map(Tree::leaf)))
}

fn ladder_of<L>(mut leaves: impl Iterator<Item = Tree<L>>) -> Tree<L> {
    let first = leaves.next().expect("at least one leaf");
    leaves.fold(first, Tree::node)
}

/// Pairwise summation: split in half, larger half on the left when the count
/// is odd, and recurse.
pub fn pairwise(labels: &[Label]) -> Result<SumTree, BuildError> {
    check(labels)?;
    Ok(pairwise_of(labels, &|l| Tree::leaf(l.clone())))
}

fn pairwise_of<T, L>(items: &[T], leaf: &impl Fn(&T) -> Tree<L>) -> Tree<L> {
    match items {
        [one] => leaf(one),
        _ => {
            let mid = items.len().div_ceil(2);
            let (l, r) = items.split_at(mid);
            Tree::node(pairwise_of(l, leaf), pairwise_of(r, leaf))
        }
    }
}

/// The form with the most S-nodes: a perfect tree on the largest power of two
/// `2^k <= n` joined with the same construction on the remaining `n - 2^k`.
pub fn mu(labels: &[Label]) -> Result<SumTree, BuildError> {
    check(labels)?;
    Ok(mu_of(labels, &|l| Tree::leaf(l.clone())))
}

fn mu_of<T, L>(items: &[T], leaf: &impl Fn(&T) -> Tree<L>) -> Tree<L> {
    let n = items.len();
    let block = 1usize << (usize::BITS - 1 - n.leading_zeros());
    if block == n {
        pairwise_of(items, leaf)
    } else {
        let (l, r) = items.split_at(block);
        Tree::node(pairwise_of(l, leaf), mu_of(r, leaf))
    }
}

fn blanks(n: usize) -> Vec<Blank> {
    vec![Blank; n]
}

/// Panics when `n == 0`.
pub fn ladder_shape(n: usize) -> Shape {
    assert!(n >= 1, "a shape needs at least one leaf");
    ladder_of((0..n).map(|_| Tree::leaf(Blank)))
}

/// Panics when `n == 0`.
pub fn pairwise_shape(n: usize) -> Shape {
    assert!(n >= 1, "a shape needs at least one leaf");
    pairwise_of(&blanks(n), &|_| Tree::leaf(Blank))
}

/// Panics when `n == 0`.
pub fn mu_shape(n: usize) -> Shape {
    assert!(n >= 1, "a shape needs at least one leaf");
    mu_of(&blanks(n), &|_| Tree::leaf(Blank))
}
