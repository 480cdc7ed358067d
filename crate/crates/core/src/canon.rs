//! Canonical forms under child swaps.
//!
//! Swapping the two operands of an addition never changes an IEEE-754
//! result, so two summations are computationally equivalent exactly when one
//! can be turned into the other by swapping children at some set of nodes.
//! The canonical representative orders every node's children by
//! `(leaf_count, serialization)`, smaller on the left.

use std::cmp::Ordering;
use std::fmt::Display;

use crate::tree::{canonical_cmp, Shape, SumTree, Tree};

fn canonicalize<L: Display + Clone>(t: &Tree<L>) -> (Tree<L>, String) {
    match t.children() {
        None => (t.clone(), t.serialize()),
        Some((l, r)) => {
            let (cl, tl) = canonicalize(l);
            let (cr, tr) = canonicalize(r);
            let (a, ta, b, tb) =
                if canonical_cmp(cl.leaf_count(), &tl, cr.leaf_count(), &tr) == Ordering::Greater {
                    (cr, tr, cl, tl)
                } else {
                    (cl, tl, cr, tr)
                };
            let text = format!("({ta}+{tb})");
            (Tree::node(a, b), text)
        }
    }
}

/// Canonical representative of the isomorphism class of a parenthetic form.
pub fn canonical_shape(s: &Shape) -> Shape {
    canonicalize(s).0
}

/// Canonical representative of the computational-equivalence class of a
/// summation. Labels are expected to be distinct.
pub fn canonical_labeled(t: &SumTree) -> SumTree {
    canonicalize(t).0
}

/// Serialization of the canonical form; equal keys mean equivalent trees.
pub fn canonical_key<L: Display + Clone>(t: &Tree<L>) -> String {
    canonicalize(t).1
}

pub fn is_canonical<L: Display + Clone>(t: &Tree<L>) -> bool {
    canonical_key(t) == t.serialize()
}

pub fn is_isomorphic(a: &Shape, b: &Shape) -> bool {
    a.leaf_count() == b.leaf_count() && canonical_key(a) == canonical_key(b)
}

pub fn is_equivalent(a: &SumTree, b: &SumTree) -> bool {
    a.leaf_count() == b.leaf_count() && canonical_key(a) == canonical_key(b)
}

/// Number of interior nodes whose two child subtrees are isomorphic. The
/// automorphism group of the shape has order `2^k` for this `k`, so a shape
/// with `n` leaves carries exactly `n! / 2^k` inequivalent labelings.
///
/// Every such node is an S-node; the converse fails once an S-node has
/// equal-sized but differently shaped children (first at eight leaves).
pub fn symmetric_node_count<L>(t: &Tree<L>) -> usize {
    fn walk<L>(t: &Tree<L>) -> (usize, String) {
        match t.children() {
            None => (0, "x".to_string()),
            Some((l, r)) => {
                let (kl, tl) = walk(l);
                let (kr, tr) = walk(r);
                let here = usize::from(tl == tr);
                let (a, b) = if canonical_cmp(l.leaf_count(), &tl, r.leaf_count(), &tr)
                    == Ordering::Greater
                {
                    (tr, tl)
                } else {
                    (tl, tr)
                };
                (kl + kr + here, format!("({a}+{b})"))
            }
        }
    }
    walk(t).0
}
