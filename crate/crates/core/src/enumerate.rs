//! Exact counts of summations, parenthetic forms and S-nodes.
//!
//! Every count is an arbitrary-precision integer. Where more than one
//! derivation exists (recursive, closed form, set cardinality) each is
//! implemented separately so that they can be checked against each other.
//! Divisions are exact by construction; a nonzero remainder is reported as
//! [`CountError::InexactDivision`] because it can only mean a formula bug.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::canon::symmetric_node_count;
use crate::tree::Tree;

pub type BigCount = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("{what} is undefined for n = {n} (requires n >= {min})")]
    OutOfDomain {
        what: &'static str,
        n: u64,
        min: u64,
    },
    #[error("n = {n} exceeds the configured cap of {cap} for {what}")]
    AboveCap {
        what: &'static str,
        n: u64,
        cap: u64,
    },
    #[error("inexact division while computing {what}")]
    InexactDivision { what: &'static str },
}

fn require(what: &'static str, n: u64, min: u64) -> Result<(), CountError> {
    if n < min {
        Err(CountError::OutOfDomain { what, n, min })
    } else {
        Ok(())
    }
}

fn div_pow2(num: BigUint, exp: u64, what: &'static str) -> Result<BigUint, CountError> {
    let tz = num.trailing_zeros().unwrap_or(u64::MAX);
    if tz < exp {
        return Err(CountError::InexactDivision { what });
    }
    Ok(num >> exp)
}

/// Size caps applied by front-ends before calling into this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for machine-integer results (ε, β).
    pub max_small_n: u64,
    /// Largest `n` for factorial-scale results.
    pub max_big_n: u64,
    /// Largest `n` for a printed `τ` table.
    pub max_table_n: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_small_n: 1_000_000,
            max_big_n: 5000,
            max_table_n: 500,
        }
    }
}

impl Limits {
    pub fn check_small(&self, what: &'static str, n: u64) -> Result<(), CountError> {
        if n > self.max_small_n {
            Err(CountError::AboveCap {
                what,
                n,
                cap: self.max_small_n,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_table(&self, n: u64) -> Result<(), CountError> {
        if n > self.max_table_n {
            Err(CountError::AboveCap {
                what: "tau table",
                n,
                cap: self.max_table_n,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_big(&self, what: &'static str, n: u64) -> Result<(), CountError> {
        if n > self.max_big_n {
            Err(CountError::AboveCap {
                what,
                n,
                cap: self.max_big_n,
            })
        } else {
            Ok(())
        }
    }
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the
    // division is exact at every step.
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(2n-3)!!`, the number of computationally inequivalent summations of `n`
/// terms. `count_all(1) = 1`.
pub fn count_all(n: u64) -> Result<BigCount, CountError> {
    require("count_all", n, 1)?;
    Ok((1..n).fold(BigUint::one(), |acc, k| acc * (2 * k - 1)))
}

/// `n!/2`, the number of inequivalent ladder (serial) summations.
pub fn count_ladder(n: u64) -> Result<BigCount, CountError> {
    require("count_ladder", n, 2)?;
    div_pow2(factorial(n), 1, "count_ladder")
}

/// Ways of computing the S-node count of a pairwise tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EpsilonMethod {
    /// `ε(2m) = 2ε(m)+1`, `ε(2m+1) = ε(m)+ε(m+1)`, `ε(1) = 0`.
    Recursive,
    /// Per-level closed form evaluated with bit operations.
    Closed,
    /// Cardinality of the index set from the Takagi-function identity.
    Baruchel,
}

impl EpsilonMethod {
    pub const ALL: [EpsilonMethod; 3] = [
        EpsilonMethod::Recursive,
        EpsilonMethod::Closed,
        EpsilonMethod::Baruchel,
    ];
}

impl fmt::Display for EpsilonMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsilonMethod::Recursive => "recursive",
            EpsilonMethod::Closed => "closed",
            EpsilonMethod::Baruchel => "baruchel",
        })
    }
}

impl FromStr for EpsilonMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "recursive" => Ok(EpsilonMethod::Recursive),
            "closed" => Ok(EpsilonMethod::Closed),
            "baruchel" => Ok(EpsilonMethod::Baruchel),
            _ => Err(format!(
                "unknown epsilon method {s:?} (recursive|closed|baruchel)"
            )),
        }
    }
}

/// Number of S-nodes in the pairwise SD-tree on `n` leaves.
pub fn epsilon(n: u64, method: EpsilonMethod) -> Result<u64, CountError> {
    require("epsilon", n, 1)?;
    Ok(match method {
        EpsilonMethod::Recursive => epsilon_recursive(n),
        EpsilonMethod::Closed => epsilon_closed_bitwise(n),
        EpsilonMethod::Baruchel => epsilon_baruchel(n),
    })
}

/// The recursion, carried as the pair `(ε(k), ε(k+1))` so that each level
/// costs O(1). Requires `n >= 1`.
pub fn epsilon_recursive(n: u64) -> u64 {
    fn pair(k: u64) -> (u64, u64) {
        if k == 1 {
            return (0, 1);
        }
        let m = k / 2;
        let (em, em1) = pair(m);
        if k.is_multiple_of(2) {
            (2 * em + 1, em + em1)
        } else {
            (em + em1, 2 * em1 + 1)
        }
    }
    debug_assert!(n >= 1);
    pair(n).0
}

/// Closed form, written with the same bit tricks as the reference C loop:
/// at level `i` a cleared bit contributes `2^i - (n mod 2^i)` S-nodes and a
/// set bit contributes `n mod 2^i`. Requires `n >= 1`.
pub fn epsilon_closed_bitwise(n: u64) -> u64 {
    debug_assert!(n >= 1);
    let n = n as i64;
    let bits = 64 - n.leading_zeros();
    let mut exp: i64 = 0;
    for i in 0..bits {
        let not_bit = ((n >> i) & 1 == 0) as i64;
        exp += not_bit * (1 << i) + (-(not_bit << 1) + 1) * (n - ((n >> i) << i));
    }
    exp as u64
}

/// Closed form evaluated literally with floor division, `mod` and powers of
/// `-1`. Kept separate from the bitwise version so the two can be compared.
pub fn epsilon_closed_arithmetic(n: u64) -> u64 {
    debug_assert!(n >= 1);
    let top = n.ilog2();
    let mut total: i128 = 0;
    for i in 0..=top {
        let p = 1i128 << i;
        let n = n as i128;
        let flag = ((n / p) + 1) % 2;
        let sign = if flag == 0 { 1 } else { -1 };
        total += flag * p + sign * (n % p);
    }
    total as u64
}

/// `|{k : 1 <= k < n, (n-k-1) mod 2^(floor(log2 k)+1) < 2^floor(log2 k)}|`.
pub fn epsilon_baruchel(n: u64) -> u64 {
    (1..n)
        .filter(|&k| {
            let j = k.ilog2();
            (n - k - 1) % (1u64 << (j + 1)) < (1u64 << j)
        })
        .count() as u64
}

/// Ways of computing the number of inequivalent pairwise summations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SigmaMethod {
    /// Knockout-tournament recursion on binomial coefficients.
    TournamentRecursive,
    /// `n! / 2^ε(n)` with the recursive ε.
    EpsilonRecursive,
    /// `n! / 2^ε(n)` with the closed-form ε.
    EpsilonClosed,
}

impl SigmaMethod {
    pub const ALL: [SigmaMethod; 3] = [
        SigmaMethod::TournamentRecursive,
        SigmaMethod::EpsilonRecursive,
        SigmaMethod::EpsilonClosed,
    ];
}

impl fmt::Display for SigmaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaMethod::TournamentRecursive => "tournament",
            SigmaMethod::EpsilonRecursive => "epsilon-recursive",
            SigmaMethod::EpsilonClosed => "epsilon-closed",
        })
    }
}

impl FromStr for SigmaMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tournament" | "tournament-recursive" => Ok(SigmaMethod::TournamentRecursive),
            "epsilon-recursive" => Ok(SigmaMethod::EpsilonRecursive),
            "epsilon-closed" => Ok(SigmaMethod::EpsilonClosed),
            _ => Err(format!(
                "unknown sigma method {s:?} (tournament|epsilon-recursive|epsilon-closed)"
            )),
        }
    }
}

/// Number of computationally inequivalent pairwise summations on `n` terms.
pub fn sigma_pairwise(n: u64, method: SigmaMethod) -> Result<BigCount, CountError> {
    require("sigma_pairwise", n, 1)?;
    match method {
        SigmaMethod::TournamentRecursive => Ok(sigma_pair(n)?.0),
        SigmaMethod::EpsilonRecursive => div_pow2(factorial(n), epsilon_recursive(n), "sigma"),
        SigmaMethod::EpsilonClosed => div_pow2(factorial(n), epsilon_closed_bitwise(n), "sigma"),
    }
}

/// `(σ(k), σ(k+1))` by the tournament recursion.
fn sigma_pair(k: u64) -> Result<(BigUint, BigUint), CountError> {
    let even = |m: u64, s: &BigUint| -> Result<BigUint, CountError> {
        div_pow2(binomial(2 * m, m) * s * s, 1, "sigma tournament recursion")
    };
    if k == 1 {
        return Ok((BigUint::one(), BigUint::one()));
    }
    let m = k / 2;
    let (sm, sm1) = sigma_pair(m)?;
    let odd = binomial(2 * m + 1, m) * &sm * &sm1;
    if k.is_multiple_of(2) {
        Ok((even(m, &sm)?, odd))
    } else {
        Ok((odd, even(m + 1, &sm1)?))
    }
}

/// `n! / 2^s` for a shape with `n` leaves and `s` S-nodes.
///
/// This is the labeling count when every S-node has isomorphic children
/// (ladders, pairwise trees, the `mu` construction and all shapes with fewer
/// than eight leaves). For the true number of inequivalent labelings of an
/// arbitrary shape use [`class_count_exact`].
pub fn class_count<L>(shape: &Tree<L>) -> Result<BigCount, CountError> {
    div_pow2(
        factorial(shape.leaf_count() as u64),
        shape.s_node_count() as u64,
        "class_count",
    )
}

/// `n! / |Aut(shape)|`: the number of computationally inequivalent
/// summations whose parenthetic form is isomorphic to `shape`.
pub fn class_count_exact<L>(shape: &Tree<L>) -> BigCount {
    factorial(shape.leaf_count() as u64) >> symmetric_node_count(shape)
}

/// Triangular table of `τ(n, s)` built bottom-up by the recursion over the
/// root split. Row `n` holds `s = 0..=β(n)`.
///
/// At an even split the two halves are combined as ordered pairs, which is
/// what the published table and the half-Catalan numbers count.
#[derive(Debug, Clone)]
pub struct TauTable {
    rows: Vec<Vec<BigUint>>,
}

impl TauTable {
    pub fn new(max_n: usize) -> Self {
        Self::build(max_n, usize::MAX, false)
    }

    /// Table restricted to `s <= max_s`; cells above are not computed.
    pub fn truncated(max_n: usize, max_s: usize) -> Self {
        Self::build(max_n, max_s, false)
    }

    /// Same recursion, but the two halves under an S-root are combined as an
    /// unordered pair: counts shapes up to isomorphism.
    pub fn distinct(max_n: usize) -> Self {
        Self::build(max_n, usize::MAX, true)
    }

    fn build(max_n: usize, max_s: usize, unordered: bool) -> Self {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        if max_n >= 1 {
            rows.push(vec![BigUint::one()]);
        }
        for n in 2..=max_n {
            let mut row: Vec<BigUint> = Vec::new();
            for j in 1..=(n - 1) / 2 {
                convolve_into(&mut row, &rows[j], &rows[n - j], 0);
            }
            if n % 2 == 0 {
                let half = &rows[n / 2];
                if unordered {
                    unordered_pairs_into(&mut row, half);
                } else {
                    convolve_into(&mut row, half, half, 1);
                }
            }
            row.truncate(max_s.saturating_add(1));
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
            rows.push(row);
        }
        TauTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `τ(n, s)`; zero outside the support. Panics if `n > max_n`.
    pub fn get(&self, n: usize, s: usize) -> BigUint {
        self.rows[n].get(s).cloned().unwrap_or_default()
    }

    /// Row `n`, indexed by `s`, trailing zeros trimmed.
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }
}

fn convolve_into(out: &mut Vec<BigUint>, a: &[BigUint], b: &[BigUint], shift: usize) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let len = a.len() + b.len() - 1 + shift;
    if out.len() < len {
        out.resize(len, BigUint::zero());
    }
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j + shift] += x * y;
        }
    }
}

fn unordered_pairs_into(out: &mut Vec<BigUint>, a: &[BigUint]) {
    let len = 2 * a.len();
    if out.len() < len {
        out.resize(len, BigUint::zero());
    }
    for i in 0..a.len() {
        for j in i..a.len() {
            let pairs = if i == j {
                (&a[i] * (&a[i] + 1u32)) >> 1
            } else {
                &a[i] * &a[j]
            };
            out[i + j + 1] += pairs;
        }
    }
}

/// `τ(n, s)`: the number of parenthetic forms with `n` leaves and `s`
/// S-nodes, from the recursion with `τ(0,0) = τ(1,0) = 1`.
pub fn tau(n: u64, s: u64) -> BigCount {
    TauTable::truncated(n as usize, s as usize).get(n as usize, s as usize)
}

/// `α(n) = Σ_{i=1}^{⌊n/2⌋} α(i) α(n-i)` with `α(1) = 1`, the half-Catalan
/// numbers.
pub fn alpha(n: u64) -> Result<BigCount, CountError> {
    require("alpha", n, 1)?;
    let n = n as usize;
    let mut a: Vec<BigUint> = vec![BigUint::zero(), BigUint::one()];
    for k in 2..=n {
        let v = (1..=k / 2).map(|i| &a[i] * &a[k - i]).sum();
        a.push(v);
    }
    Ok(a.swap_remove(n))
}

/// Number of parenthetic forms with `n` leaves up to isomorphism
/// (Wedderburn–Etherington numbers). Agrees with [`alpha`] for `n <= 7`.
pub fn alpha_distinct(n: u64) -> Result<BigCount, CountError> {
    require("alpha_distinct", n, 1)?;
    let n = n as usize;
    let mut a: Vec<BigUint> = vec![BigUint::zero(), BigUint::one()];
    for k in 2..=n {
        let mut v: BigUint = (1..=(k - 1) / 2).map(|i| &a[i] * &a[k - i]).sum();
        if k.is_multiple_of(2) {
            let h = &a[k / 2];
            v += (h * (h + 1u32)) >> 1;
        }
        a.push(v);
    }
    Ok(a.swap_remove(n))
}

/// `τ(n, s)` counted up to isomorphism.
pub fn tau_distinct(n: u64, s: u64) -> BigCount {
    TauTable::distinct(n as usize).get(n as usize, s as usize)
}

/// Closed form for `τ(n, 2)`: `(m-1)^2` for `n = 2m+1`, `(m-1)(m-2)` for
/// `n = 2m`. Returns 0 for `n < 3`, where no form has two S-nodes.
pub fn tau2_closed(n: u64) -> BigCount {
    if n < 3 {
        return BigUint::zero();
    }
    let m = BigUint::from(n / 2);
    let one = BigUint::one();
    if n % 2 == 1 {
        let a = &m - &one;
        &a * &a
    } else {
        (&m - &one) * (&m - 2u32)
    }
}

/// Ways of computing β(n), the exponent of 2 in `n!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BetaMethod {
    /// `Σ_i ⌊n / 2^i⌋`.
    Legendre,
    /// `β(2^k + r) = (2^k - 1) + β(r)`.
    Decomposition,
    /// `n - popcount(n)`.
    Popcount,
}

impl BetaMethod {
    pub const ALL: [BetaMethod; 3] = [
        BetaMethod::Legendre,
        BetaMethod::Decomposition,
        BetaMethod::Popcount,
    ];
}

impl fmt::Display for BetaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BetaMethod::Legendre => "legendre",
            BetaMethod::Decomposition => "decomposition",
            BetaMethod::Popcount => "popcount",
        })
    }
}

impl FromStr for BetaMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "legendre" => Ok(BetaMethod::Legendre),
            "decomposition" => Ok(BetaMethod::Decomposition),
            "popcount" => Ok(BetaMethod::Popcount),
            _ => Err(format!(
                "unknown beta method {s:?} (legendre|decomposition|popcount)"
            )),
        }
    }
}

/// Maximum number of S-nodes over all forms with `n` leaves.
pub fn beta(n: u64) -> Result<u64, CountError> {
    beta_with(n, BetaMethod::Legendre)
}

pub fn beta_with(n: u64, method: BetaMethod) -> Result<u64, CountError> {
    require("beta", n, 1)?;
    Ok(match method {
        BetaMethod::Legendre => {
            let mut total = 0;
            let mut p = 2u64;
            while p <= n {
                total += n / p;
                p = match p.checked_mul(2) {
                    Some(p) => p,
                    None => break,
                };
            }
            total
        }
        BetaMethod::Decomposition => {
            let mut rest = n;
            let mut total = 0;
            while rest > 0 {
                let block = 1u64 << rest.ilog2();
                total += block - 1;
                rest -= block;
            }
            total
        }
        BetaMethod::Popcount => n - u64::from(n.count_ones()),
    })
}

/// Fewest inequivalent labelings any form with `n` leaves can have:
/// `n! / 2^β(n)`, the odd part of `n!`.
pub fn min_class_count(n: u64) -> Result<BigCount, CountError> {
    let b = beta(n)?;
    div_pow2(factorial(n), b, "min_class_count")
}

/// `C(n) = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigCount {
    binomial(2 * n, n) / (n + 1)
}

/// `n! · C(n-1) / 2^(n-1)`: counts inequivalent summations by taking every
/// ordering of every parenthesization and dividing out the `n-1` swaps.
pub fn count_all_via_catalan(n: u64) -> Result<BigCount, CountError> {
    require("count_all_via_catalan", n, 1)?;
    div_pow2(factorial(n) * catalan(n - 1), n - 1, "catalan identity")
}

/// Exact count as `u64` where it fits.
pub fn to_u64(c: &BigCount) -> Option<u64> {
    c.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn count_all_values() {
        assert_eq!(count_all(1).unwrap(), big(1));
        assert_eq!(count_all(2).unwrap(), big(1));
        assert_eq!(count_all(5).unwrap(), big(105));
        assert_eq!(count_all(7).unwrap(), big(10395));
        assert!(matches!(count_all(0), Err(CountError::OutOfDomain { .. })));
    }

    #[test]
    fn count_ladder_values() {
        assert_eq!(count_ladder(2).unwrap(), big(1));
        assert_eq!(count_ladder(4).unwrap(), big(12));
        assert_eq!(count_ladder(7).unwrap(), big(2520));
        assert!(count_ladder(1).is_err());
    }

    #[test]
    fn epsilon_figure_values() {
        for m in EpsilonMethod::ALL {
            assert_eq!(epsilon(8, m).unwrap(), 7);
            assert_eq!(epsilon(5, m).unwrap(), 2);
            assert_eq!(epsilon(1, m).unwrap(), 0);
            assert!(epsilon(0, m).is_err());
        }
        assert_eq!(epsilon_baruchel(4), 3);
        let expected = [0, 1, 1, 3, 2, 3, 4, 7];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(epsilon_recursive(i as u64 + 1), *e);
        }
    }

    #[test]
    fn closed_forms_agree() {
        for n in 1..5000 {
            assert_eq!(
                epsilon_closed_bitwise(n),
                epsilon_closed_arithmetic(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn sigma_values() {
        for m in SigmaMethod::ALL {
            assert_eq!(sigma_pairwise(2, m).unwrap(), big(1));
            assert_eq!(sigma_pairwise(8, m).unwrap(), big(315));
            assert_eq!(sigma_pairwise(6, m).unwrap(), big(90));
            assert_eq!(sigma_pairwise(1, m).unwrap(), big(1));
            assert!(sigma_pairwise(0, m).is_err());
        }
    }

    #[test]
    fn tau_table_cells() {
        let t = TauTable::new(15);
        assert_eq!(t.get(15, 5), big(1190));
        assert_eq!(t.get(8, 7), big(1));
        assert_eq!(t.get(9, 2), big(9));
        assert_eq!(t.get(10, 2), big(12));
        assert_eq!(t.get(12, 4), big(119));
        assert_eq!(t.get(8, 8), big(0));
        assert_eq!(t.get(5, 0), big(0));
        assert_eq!(t.get(1, 0), big(1));
        assert_eq!(t.row_sum(15), big(5131));
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(15).unwrap(), big(5131));
        assert_eq!(alpha(6).unwrap(), big(6));
        assert_eq!(alpha(1).unwrap(), big(1));
        assert!(alpha(0).is_err());
        assert_eq!(alpha_distinct(8).unwrap(), big(23));
        assert_eq!(alpha(8).unwrap(), big(24));
    }

    #[test]
    fn tau2_closed_values() {
        assert_eq!(tau2_closed(9), big(9));
        assert_eq!(tau2_closed(4), big(0));
        assert_eq!(tau2_closed(1), big(0));
        assert_eq!(tau(101, 2), tau2_closed(101));
        assert_eq!(tau2_closed(101), big(2401));
    }

    #[test]
    fn beta_values() {
        for m in [
            BetaMethod::Legendre,
            BetaMethod::Decomposition,
            BetaMethod::Popcount,
        ] {
            assert_eq!(beta_with(8, m).unwrap(), 7);
            assert_eq!(beta_with(1, m).unwrap(), 0);
            assert_eq!(beta_with(12, m).unwrap(), 10);
            assert!(beta_with(0, m).is_err());
        }
        assert_eq!(beta(u64::MAX).unwrap(), u64::MAX - 64);
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(4), big(14));
        assert_eq!(factorial(6) * catalan(5) / big(32), big(945));
        assert_eq!(count_all_via_catalan(6).unwrap(), big(945));
    }

    #[test]
    fn exact_division_is_enforced() {
        assert_eq!(
            div_pow2(big(6), 2, "test"),
            Err(CountError::InexactDivision { what: "test" })
        );
    }

    #[test]
    fn limits() {
        let l = Limits::default();
        assert!(l.check_big("count_all", 5000).is_ok());
        assert!(l.check_big("count_all", 5001).is_err());
        assert!(l.check_small("epsilon", 1_000_000).is_ok());
    }
}
