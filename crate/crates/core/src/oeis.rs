//! Checking our counts against integer-sequence b-files.
//!
//! A b-file lists `index term` pairs, one per line; `#` starts a comment.
//! Each supported sequence maps its index `i` to one of our functions:
//!
//! | Sequence | Term `A(i)`                     | Indices compared |
//! |----------|---------------------------------|------------------|
//! | A001147  | `count_all(i + 1)`              | `i >= 0`         |
//! | A001710  | `count_ladder(i)`               | `i >= 2`         |
//! | A096351  | `sigma_pairwise(i)`             | `i >= 1`         |
//! | A268289  | `epsilon(i + 1)`                | `i >= 0`         |
//! | A000992  | `alpha(i)`                      | `i >= 1`         |
//! | A002620  | `tau2_closed(i + 3)`            | `i >= 0`         |
//! | A011371  | `beta(i)`                       | `i >= 1`         |
//! | A049606  | `min_class_count(i)`            | `i >= 1`         |
//!
//! Terms outside the compared range (for instance `A001710(0) = A001710(1)
//! = 1`, which come from a different formula) are skipped and counted.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{
    alpha, beta, count_all, count_ladder, epsilon, min_class_count, sigma_pairwise, tau2_closed,
    EpsilonMethod, SigmaMethod,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("unknown sequence {0:?}")]
    UnknownSequence(String),
    #[error("b-file line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("b-file has no terms")]
    Empty,
}

/// Terms of a b-file, indexed consecutively from `offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub offset: i64,
    pub terms: Vec<BigInt>,
}

impl BFile {
    pub fn parse(text: &str) -> Result<Self, OeisError> {
        let mut offset = None;
        let mut terms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| OeisError::Malformed {
                line: i + 1,
                message,
            };
            let mut fields = line.split_whitespace();
            let (Some(index), Some(term), None) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(bad(format!("expected `index term`, got {line:?}")));
            };
            let index: i64 = index
                .parse()
                .map_err(|_| bad(format!("bad index {index:?}")))?;
            let term: BigInt = term
                .parse()
                .map_err(|_| bad(format!("bad term {term:?}")))?;
            let start = *offset.get_or_insert(index);
            let want = start + terms.len() as i64;
            if index != want {
                return Err(bad(format!(
                    "index {index} out of sequence, expected {want}"
                )));
            }
            terms.push(term);
        }
        Ok(BFile {
            offset: offset.ok_or(OeisError::Empty)?,
            terms,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        (self.offset..).zip(&self.terms)
    }

    /// Renders in b-file syntax.
    pub fn render(&self, header: &str) -> String {
        let mut out = String::new();
        for line in header.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        for (i, t) in self.iter() {
            out.push_str(&format!("{i} {t}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sequence {
    A001147,
    A001710,
    A096351,
    A268289,
    A000992,
    A002620,
    A011371,
    A049606,
}

impl Sequence {
    pub const ALL: [Sequence; 8] = [
        Sequence::A001147,
        Sequence::A001710,
        Sequence::A096351,
        Sequence::A268289,
        Sequence::A000992,
        Sequence::A002620,
        Sequence::A011371,
        Sequence::A049606,
    ];

    /// The function compared against, in terms of the sequence index `i`.
    pub fn mapping(self) -> &'static str {
        match self {
            Sequence::A001147 => "count_all(i + 1)",
            Sequence::A001710 => "count_ladder(i), i >= 2",
            Sequence::A096351 => "sigma_pairwise(i)",
            Sequence::A268289 => "epsilon(i + 1)",
            Sequence::A000992 => "alpha(i)",
            Sequence::A002620 => "tau2_closed(i + 3)",
            Sequence::A011371 => "beta(i)",
            Sequence::A049606 => "min_class_count(i)",
        }
    }

    fn first_index(self) -> i64 {
        match self {
            Sequence::A001147 | Sequence::A268289 | Sequence::A002620 => 0,
            Sequence::A001710 => 2,
            _ => 1,
        }
    }

    /// Our value for index `i`, or `None` when `i` lies outside the mapping.
    pub fn term(self, i: i64) -> Option<BigInt> {
        if i < self.first_index() {
            return None;
        }
        let i = i as u64;
        let big = |v: BigUint| BigInt::from(v);
        let value = match self {
            Sequence::A001147 => big(count_all(i + 1).ok()?),
            Sequence::A001710 => big(count_ladder(i).ok()?),
            Sequence::A096351 => big(sigma_pairwise(i, SigmaMethod::TournamentRecursive).ok()?),
            Sequence::A268289 => BigInt::from(epsilon(i + 1, EpsilonMethod::Recursive).ok()?),
            Sequence::A000992 => big(alpha(i).ok()?),
            Sequence::A002620 => big(tau2_closed(i + 3)),
            Sequence::A011371 => BigInt::from(beta(i).ok()?),
            Sequence::A049606 => big(min_class_count(i).ok()?),
        };
        Some(value)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Sequence {
    type Err = OeisError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let id = s.trim().to_ascii_uppercase();
        Sequence::ALL
            .into_iter()
            .find(|q| q.to_string() == id)
            .ok_or_else(|| OeisError::UnknownSequence(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: i64,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub sequence: Sequence,
    pub mapping: &'static str,
    /// Terms compared before stopping.
    pub compared: usize,
    /// Fixture terms outside the mapping's index range.
    pub skipped: usize,
    pub mismatch: Option<Mismatch>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.compared > 0
    }
}

/// Compares up to `max_terms` fixture terms (all when `None`) with our
/// values, stopping at the first mismatch.
pub fn check(seq: Sequence, fixture: &BFile, max_terms: Option<usize>) -> CheckReport {
    let mut report = CheckReport {
        sequence: seq,
        mapping: seq.mapping(),
        compared: 0,
        skipped: 0,
        mismatch: None,
    };
    for (i, expected) in fixture.iter() {
        if max_terms.is_some_and(|m| report.compared >= m) {
            break;
        }
        let Some(got) = seq.term(i) else {
            report.skipped += 1;
            continue;
        };
        report.compared += 1;
        if &got != expected {
            report.mismatch = Some(Mismatch {
                index: i,
                expected: expected.to_string(),
                got: got.to_string(),
            });
            break;
        }
    }
    report
}
