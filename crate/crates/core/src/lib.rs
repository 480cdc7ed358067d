//! Summation trees and the combinatorics of computationally inequivalent
//! floating-point summations.
//!
//! * [`tree`], [`parse`], [`canon`], [`build`]: the tree types, their text
//!   syntax, canonical forms under child swaps and the named constructors
//!   (ladder, pairwise, `mu`).
//! * [`enumerate`]: exact counts (double factorials, tournaments, S-node
//!   counts, half-Catalan numbers, the `τ(n, s)` table).
//! * [`generate`]: duplicate-free streams of shapes and class
//!   representatives, and brute-force oracles.
//! * [`floateval`]: IEEE-754 evaluation of trees against an exact rational
//!   reference.
//! * [`oeis`]: b-file fixtures and the index mapping of each related
//!   integer sequence.

pub mod build;
pub mod canon;
pub mod enumerate;
pub mod floateval;
pub mod generate;
pub mod oeis;
pub mod parse;
pub mod tree;

pub use build::{ladder, ladder_shape, mu, mu_shape, pairwise, pairwise_shape, BuildError};
pub use canon::{canonical_key, canonical_labeled, canonical_shape, is_equivalent, is_isomorphic};
pub use parse::{parse, parse_labels, parse_shape, ParseError};
pub use tree::{Blank, Label, NodePath, SdLabel, Shape, Side, SumTree, Tree};
