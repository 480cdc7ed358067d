//! IEEE-754 evaluation of summation trees.
//!
//! Inputs are rounded once into the target format; every interior node is
//! then one correctly rounded addition in that format (binary32 sums are
//! computed in `f32`, never through `f64`). The reference value is the exact
//! rational sum of the rounded inputs, so the reported error isolates the
//! effect of grouping and ordering.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::build::{ladder_shape, pairwise_shape};
use crate::enumerate::{class_count_exact, count_all, count_ladder, sigma_pairwise, SigmaMethod};
use crate::generate::{all_classes, class_representatives, GenerateError};
use crate::tree::{Label, NodePath, Shape, SumTree, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    Binary32,
    Binary64,
}

impl Precision {
    fn format(self) -> Format {
        match self {
            Precision::Binary32 => Format {
                precision: 24,
                emin: -126,
                emax: 127,
            },
            Precision::Binary64 => Format {
                precision: 53,
                emin: -1022,
                emax: 1023,
            },
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precision::Binary32 => "binary32",
            Precision::Binary64 => "binary64",
        })
    }
}

impl FromStr for Precision {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary32" | "f32" | "single" => Ok(Precision::Binary32),
            "binary64" | "f64" | "double" => Ok(Precision::Binary64),
            _ => Err(format!("unknown precision {s:?} (binary32|binary64)")),
        }
    }
}

impl Serialize for Precision {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy)]
struct Format {
    precision: u32,
    emin: i64,
    emax: i64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("label {0:?} has no value in the binding")]
    Unbound(String),
    #[error("value {literal:?} for {label:?} is not finite in {precision}")]
    NonFinite {
        label: String,
        literal: String,
        precision: Precision,
    },
    #[error("partial sum {subtree} overflowed in {precision}")]
    Overflow {
        subtree: String,
        precision: Precision,
    },
    #[error("non-finite input {0} to compensated summation")]
    NonFiniteInput(f64),
    #[error("invalid numeric literal {0:?}")]
    BadLiteral(String),
    #[error("binding line {line}: {message}")]
    BadBinding { line: usize, message: String },
    #[error("survey of {n} summands needs a binding of {n} labels, got {got}")]
    BindingMismatch { n: usize, got: usize },
    #[error("survey selector {selector} is capped at n = {cap}, got {n}")]
    AboveCap {
        selector: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("survey evaluated {got} classes but the count formula gives {expected}")]
    CountMismatch { got: String, expected: String },
    #[error(transparent)]
    Generate(#[from] GenerateError),
}

// ---------------------------------------------------------------------------
// Exact values and rounding

/// Exact value of a finite double.
pub fn f64_to_rational(x: f64) -> BigRational {
    assert!(x.is_finite(), "non-finite value has no rational value");
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    let mut q = BigRational::from_integer(BigInt::from(mant)) * pow2(e);
    if negative {
        q = -q;
    }
    q
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// Result of rounding an exact value into a binary format.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rounded {
    /// The rounded value; binary32 results are exactly representable in
    /// `f64`, so one carrier type serves both formats.
    Finite(f64),
    Overflow {
        negative: bool,
    },
}

/// Rounds an exact rational to the nearest representable value of `p`,
/// ties to even, with gradual underflow. Independent of hardware
/// arithmetic.
pub fn round_rational(q: &BigRational, p: Precision) -> Rounded {
    let f = p.format();
    let negative = q.is_negative();
    if q.is_zero() {
        return Rounded::Finite(0.0);
    }
    let num = q.numer().magnitude().clone();
    let den = q.denom().magnitude().clone();
    // 2^e <= |q| < 2^(e+1)
    let mut e = num.bits() as i64 - den.bits() as i64;
    if lt_scaled(&num, &den, e) {
        e -= 1;
    }
    let p_bits = f.precision as i64;
    let mut ulp = (e - (p_bits - 1)).max(f.emin - (p_bits - 1));
    // m = floor(|q| / 2^ulp), r = remainder against the divisor d
    let (n2, d2) = if ulp >= 0 {
        (num, den << ulp as usize)
    } else {
        (num << (-ulp) as usize, den)
    };
    let mut m = &n2 / &d2;
    let r2 = (&n2 - &m * &d2) << 1usize;
    if r2 > d2 || (r2 == d2 && m.bit(0)) {
        m += 1u32;
    }
    if m.bits() as i64 > p_bits {
        m >>= 1usize;
        ulp += 1;
    }
    let hidden = BigUint::one() << (p_bits - 1) as usize;
    let mant: u64 = (&m).try_into().expect("mantissa fits");
    let bits: u64 = if m >= hidden {
        let exponent = ulp + p_bits - 1;
        if exponent > f.emax {
            return Rounded::Overflow { negative };
        }
        let bias = f.emax;
        let field = (exponent + bias) as u64;
        (field << (p_bits - 1)) | (mant - (1u64 << (p_bits - 1)))
    } else {
        mant
    };
    let value = match p {
        Precision::Binary64 => f64::from_bits(bits | ((negative as u64) << 63)),
        Precision::Binary32 => f32::from_bits(bits as u32 | ((negative as u32) << 31)) as f64,
    };
    Rounded::Finite(value)
}

/// `num/den < 2^e`
fn lt_scaled(num: &BigUint, den: &BigUint, e: i64) -> bool {
    if e >= 0 {
        num < &(den << e as usize)
    } else {
        &(num << (-e) as usize) < den
    }
}

/// Nearest double to an exact value, `±inf` on overflow. For display.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    match round_rational(q, Precision::Binary64) {
        Rounded::Finite(x) => x,
        Rounded::Overflow { negative: true } => f64::NEG_INFINITY,
        Rounded::Overflow { negative: false } => f64::INFINITY,
    }
}

// ---------------------------------------------------------------------------
// Literals

const MAX_LITERAL_EXPONENT: i64 = 20_000;

/// Parses a decimal (`-1.5e16`) or C99 hexadecimal (`0x1.8p+3`) literal into
/// its exact value.
pub fn parse_literal(text: &str) -> Result<BigRational, EvalError> {
    let bad = || EvalError::BadLiteral(text.to_string());
    let s = text.trim();
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let value = if let Some(hex) = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) {
        parse_hex_body(hex).ok_or_else(bad)?
    } else {
        parse_decimal_body(body).ok_or_else(bad)?
    };
    Ok(if negative { -value } else { value })
}

fn split_exponent(body: &str, markers: &[char]) -> Option<(String, String, i64)> {
    let (mantissa, exp) = match body.find(markers) {
        Some(i) => {
            let e: i64 = body[i + 1..].parse().ok()?;
            (&body[..i], e)
        }
        None => (body, 0),
    };
    if exp.abs() > MAX_LITERAL_EXPONENT {
        return None;
    }
    let (int, frac) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    Some((int.to_string(), frac.to_string(), exp))
}

fn parse_decimal_body(body: &str) -> Option<BigRational> {
    let (int, frac, exp) = split_exponent(body, &['e', 'E'])?;
    let digits = format!("{int}{frac}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let m = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    let scale = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(m * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(m, num_traits::pow(ten, (-scale) as usize))
    })
}

fn parse_hex_body(body: &str) -> Option<BigRational> {
    let (int, frac, exp) = split_exponent(body, &['p', 'P'])?;
    let digits = format!("{int}{frac}");
    if !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return None;
    }
    let m = BigInt::parse_bytes(digits.as_bytes(), 16)?;
    Some(BigRational::from_integer(m) * pow2(exp - 4 * frac.len() as i64))
}

/// C99 `%a`-style text of a value of format `p`, e.g. `0x1.8p+0`, `0x0p+0`,
/// `-0x1p-1074`. Subnormals print with a leading `0x0.`.
pub fn format_hex(x: f64, p: Precision) -> String {
    let (negative, exp_field, frac, frac_bits, bias) = match p {
        Precision::Binary64 => {
            let b = x.to_bits();
            (
                b >> 63 == 1,
                ((b >> 52) & 0x7ff) as i64,
                b & ((1 << 52) - 1),
                52u32,
                1023i64,
            )
        }
        Precision::Binary32 => {
            let b = (x as f32).to_bits();
            (
                b >> 31 == 1,
                ((b >> 23) & 0xff) as i64,
                (b & ((1 << 23) - 1)) as u64,
                23u32,
                127i64,
            )
        }
    };
    let sign = if negative { "-" } else { "" };
    if exp_field == 0 && frac == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exponent) = if exp_field == 0 {
        (0, 1 - bias)
    } else {
        (1, exp_field - bias)
    };
    let digits = frac_bits.div_ceil(4);
    let aligned = frac << (digits * 4 - frac_bits);
    let mut hex = format!("{:0width$x}", aligned, width = digits as usize);
    while hex.ends_with('0') {
        hex.pop();
    }
    let dot = if hex.is_empty() {
        String::new()
    } else {
        format!(".{hex}")
    };
    format!("{sign}0x{lead}{dot}p{exponent:+}")
}

// ---------------------------------------------------------------------------
// Bindings

/// Values for summand labels, in declaration order, as exact literals.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Binding {
    entries: Vec<(Label, BigRational, String)>,
}

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: Label, literal: &str) -> Result<(), EvalError> {
        let value = parse_literal(literal)?;
        if let Some(e) = self.entries.iter_mut().find(|e| e.0 == label) {
            *e = (label, value, literal.trim().to_string());
        } else {
            self.entries
                .push((label, value, literal.trim().to_string()));
        }
        Ok(())
    }

    /// Binding file: one `label = value` per line; blank lines and lines
    /// starting with `#` are ignored.
    pub fn parse_file(text: &str) -> Result<Self, EvalError> {
        let mut b = Binding::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            b.insert_assignment(line)
                .map_err(|message| EvalError::BadBinding {
                    line: i + 1,
                    message,
                })?;
        }
        Ok(b)
    }

    /// Inline form: `a=1,b=1e16,c=-1e16`.
    pub fn parse_inline(text: &str) -> Result<Self, EvalError> {
        let mut b = Binding::new();
        for (i, part) in text.split(',').enumerate() {
            b.insert_assignment(part.trim())
                .map_err(|message| EvalError::BadBinding {
                    line: i + 1,
                    message,
                })?;
        }
        Ok(b)
    }

    fn insert_assignment(&mut self, line: &str) -> Result<(), String> {
        let (label, value) = line
            .split_once('=')
            .ok_or_else(|| format!("expected `label = value`, got {line:?}"))?;
        let label = Label::new(label.trim()).map_err(|e| e.to_string())?;
        if self.get(&label).is_some() {
            return Err(format!("label {label} bound twice"));
        }
        self.insert(label, value).map_err(|e| e.to_string())
    }

    /// Binds `values` to `labels` pairwise.
    pub fn from_values(labels: &[Label], values: &[f64]) -> Self {
        Binding {
            entries: labels
                .iter()
                .zip(values)
                .map(|(l, v)| (l.clone(), f64_to_rational(*v), format!("{v:e}")))
                .collect(),
        }
    }

    pub fn get(&self, label: &Label) -> Option<&BigRational> {
        self.entries.iter().find(|e| &e.0 == label).map(|e| &e.1)
    }

    pub fn labels(&self) -> Vec<Label> {
        self.entries.iter().map(|e| e.0.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rounds every bound value into `p`.
    pub fn rounded(&self, p: Precision) -> Result<HashMap<Label, f64>, EvalError> {
        self.entries
            .iter()
            .map(|(label, value, literal)| match round_rational(value, p) {
                Rounded::Finite(x) => Ok((label.clone(), x)),
                Rounded::Overflow { .. } => Err(EvalError::NonFinite {
                    label: label.to_string(),
                    literal: literal.clone(),
                    precision: p,
                }),
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Evaluation

fn sum_tree(t: &SumTree, values: &HashMap<Label, f64>, p: Precision) -> Result<f64, EvalError> {
    match t {
        Tree::Leaf(l) => values
            .get(l)
            .copied()
            .ok_or_else(|| EvalError::Unbound(l.to_string())),
        Tree::Node(_) => {
            let (l, r) = t.children().expect("node");
            let a = sum_tree(l, values, p)?;
            let b = sum_tree(r, values, p)?;
            let s = match p {
                Precision::Binary64 => a + b,
                Precision::Binary32 => (a as f32 + b as f32) as f64,
            };
            if s.is_finite() {
                Ok(s)
            } else {
                Err(EvalError::Overflow {
                    subtree: t.serialize(),
                    precision: p,
                })
            }
        }
    }
}

/// Outcome of evaluating one tree.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub tree: String,
    pub precision: Precision,
    pub rounded: f64,
    pub exact: BigRational,
    /// `|rounded - exact|`, exact.
    pub abs_error: BigRational,
    /// `abs_error / |exact|`; 0 when both are 0, `None` when `exact` is 0
    /// and the rounded result is not.
    pub relative_error: Option<f64>,
}

impl EvalReport {
    pub fn rounded_hex(&self) -> String {
        format_hex(self.rounded, self.precision)
    }

    pub fn abs_error_f64(&self) -> f64 {
        rational_to_f64(&self.abs_error)
    }
}

impl Serialize for EvalReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EvalReport", 8)?;
        st.serialize_field("tree", &self.tree)?;
        st.serialize_field("precision", &self.precision)?;
        st.serialize_field("rounded", &self.rounded)?;
        st.serialize_field("rounded_hex", &self.rounded_hex())?;
        st.serialize_field("exact", &self.exact.to_string())?;
        st.serialize_field("abs_error", &self.abs_error_f64())?;
        st.serialize_field("abs_error_exact", &self.abs_error.to_string())?;
        st.serialize_field("relative_error", &self.relative_error)?;
        st.end()
    }
}

fn exact_sum(t: &SumTree, values: &HashMap<Label, f64>) -> BigRational {
    t.leaves()
        .into_iter()
        .map(|l| f64_to_rational(values[l]))
        .fold(BigRational::zero(), |a, b| a + b)
}

fn report(tree: &SumTree, p: Precision, rounded: f64, exact: BigRational) -> EvalReport {
    let abs_error = (f64_to_rational(rounded) - &exact).abs();
    let relative_error = if exact.is_zero() {
        if abs_error.is_zero() {
            Some(0.0)
        } else {
            None
        }
    } else {
        Some(rational_to_f64(&(&abs_error / exact.abs())))
    };
    EvalReport {
        tree: tree.serialize(),
        precision: p,
        rounded,
        exact,
        abs_error,
        relative_error,
    }
}

/// Evaluates `tree` in precision `p`, one rounded addition per node.
pub fn eval(tree: &SumTree, b: &Binding, p: Precision) -> Result<EvalReport, EvalError> {
    let values = b.rounded(p)?;
    eval_rounded(tree, &values, p)
}

fn eval_rounded(
    tree: &SumTree,
    values: &HashMap<Label, f64>,
    p: Precision,
) -> Result<EvalReport, EvalError> {
    let rounded = sum_tree(tree, values, p)?;
    Ok(report(tree, p, rounded, exact_sum(tree, values)))
}

/// Compensated (Kahan–Babuška–Neumaier) summation in precision `p`. Values
/// are first rounded into `p`.
pub fn compensated_sum(values: &[f64], p: Precision) -> Result<f64, EvalError> {
    if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(EvalError::NonFiniteInput(bad));
    }
    Ok(match p {
        Precision::Binary64 => neumaier(values.iter().copied()),
        Precision::Binary32 => neumaier(values.iter().map(|&v| v as f32)) as f64,
    })
}

fn neumaier<T>(values: impl Iterator<Item = T>) -> T
where
    T: Copy
        + PartialOrd
        + Default
        + std::ops::Add<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::Neg<Output = T>,
{
    let abs = |x: T| if x < T::default() { -x } else { x };
    let mut sum = T::default();
    let mut c = T::default();
    for x in values {
        let t = sum + x;
        if abs(sum) >= abs(x) {
            c = c + ((sum - t) + x);
        } else {
            c = c + ((x - t) + sum);
        }
        sum = t;
    }
    sum + c
}

// ---------------------------------------------------------------------------
// Surveys

/// Which family of summations a survey evaluates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    All,
    Ladder,
    Pairwise,
    Shape(Shape),
}

impl Selector {
    pub fn name(&self) -> &'static str {
        match self {
            Selector::All => "all",
            Selector::Ladder => "ladder",
            Selector::Pairwise => "pairwise",
            Selector::Shape(_) => "shape",
        }
    }

    pub fn cap(&self) -> usize {
        match self {
            Selector::All => 7,
            _ => 8,
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Shape(s) => write!(f, "shape:{s}"),
            other => f.write_str(other.name()),
        }
    }
}

/// Error statistics over one representative of every class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyReport {
    pub n: usize,
    #[serde(serialize_with = "display")]
    pub selector: Selector,
    pub precision: Precision,
    /// Number of classes enumerated.
    pub classes: u64,
    /// Classes whose evaluation overflowed; excluded from the statistics.
    pub overflowed: u64,
    /// Number of distinct rounded results (by bit pattern).
    pub distinct: usize,
    /// The distinct rounded results as hex-float text, ascending.
    pub distinct_hex: Vec<String>,
    #[serde(serialize_with = "display")]
    pub exact: BigRational,
    pub min_abs_error: f64,
    pub max_abs_error: f64,
    pub mean_abs_error: f64,
    pub argmin: String,
    pub argmax: String,
    /// Compensated sum of the inputs in declaration order.
    pub compensated: f64,
    pub compensated_abs_error: f64,
}

fn display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn expected_classes(n: usize, selector: &Selector) -> BigUint {
    let n64 = n as u64;
    match selector {
        Selector::All => count_all(n64).expect("n >= 1"),
        Selector::Ladder if n >= 2 => count_ladder(n64).expect("n >= 2"),
        Selector::Ladder => BigUint::one(),
        Selector::Pairwise => {
            sigma_pairwise(n64, SigmaMethod::TournamentRecursive).expect("n >= 1")
        }
        Selector::Shape(s) => class_count_exact(s),
    }
}

/// Evaluates one representative of every equivalence class selected by
/// `selector` over the labels of `b` (in declaration order).
pub fn survey(b: &Binding, p: Precision, selector: &Selector) -> Result<SurveyReport, EvalError> {
    let labels = b.labels();
    let n = labels.len();
    if n == 0 {
        return Err(EvalError::BindingMismatch { n: 1, got: 0 });
    }
    if n > selector.cap() {
        return Err(EvalError::AboveCap {
            selector: selector.name(),
            n,
            cap: selector.cap(),
        });
    }
    if let Selector::Shape(s) = selector {
        if s.leaf_count() != n {
            return Err(EvalError::BindingMismatch {
                n: s.leaf_count(),
                got: n,
            });
        }
    }
    let values = b.rounded(p)?;
    let stream: Box<dyn Iterator<Item = SumTree>> = match selector {
        Selector::All => Box::new(all_classes(&labels)?),
        Selector::Ladder => Box::new(class_representatives(&ladder_shape(n), &labels)?),
        Selector::Pairwise => Box::new(class_representatives(&pairwise_shape(n), &labels)?),
        Selector::Shape(s) => Box::new(class_representatives(s, &labels)?),
    };

    let ordered: Vec<f64> = labels.iter().map(|l| values[l]).collect();
    let exact = ordered
        .iter()
        .map(|&x| f64_to_rational(x))
        .fold(BigRational::zero(), |a, b| a + b);

    let mut classes = 0u64;
    let mut overflowed = 0u64;
    let mut results: HashSet<u64> = HashSet::new();
    let mut total = BigRational::zero();
    let mut min: Option<(BigRational, String)> = None;
    let mut max: Option<(BigRational, String)> = None;
    for tree in stream {
        classes += 1;
        let rounded = match sum_tree(&tree, &values, p) {
            Ok(x) => x,
            Err(EvalError::Overflow { .. }) => {
                overflowed += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let r = report(&tree, p, rounded, exact.clone());
        results.insert(rounded.to_bits());
        total += &r.abs_error;
        let better_min = match &min {
            None => true,
            Some((m, t)) => r.abs_error < *m || (r.abs_error == *m && r.tree < *t),
        };
        if better_min {
            min = Some((r.abs_error.clone(), r.tree.clone()));
        }
        let better_max = match &max {
            None => true,
            Some((m, t)) => r.abs_error > *m || (r.abs_error == *m && r.tree < *t),
        };
        if better_max {
            max = Some((r.abs_error, r.tree));
        }
    }

    let expected = expected_classes(n, selector);
    if BigUint::from(classes) != expected {
        return Err(EvalError::CountMismatch {
            got: classes.to_string(),
            expected: expected.to_string(),
        });
    }

    let evaluated = classes - overflowed;
    let mean = if evaluated == 0 {
        BigRational::zero()
    } else {
        total / BigRational::from_integer(BigInt::from(evaluated))
    };
    let mut distinct: Vec<f64> = results.into_iter().map(f64::from_bits).collect();
    distinct.sort_by(|a, b| a.total_cmp(b));
    let compensated = compensated_sum(&ordered, p)?;
    let (min_err, argmin) = min.unwrap_or_default();
    let (max_err, argmax) = max.unwrap_or_default();
    Ok(SurveyReport {
        n,
        selector: selector.clone(),
        precision: p,
        classes,
        overflowed,
        distinct: distinct.len(),
        distinct_hex: distinct.iter().map(|&x| format_hex(x, p)).collect(),
        min_abs_error: rational_to_f64(&min_err),
        max_abs_error: rational_to_f64(&max_err),
        mean_abs_error: rational_to_f64(&mean),
        argmin,
        argmax,
        compensated_abs_error: rational_to_f64(&(f64_to_rational(compensated) - &exact).abs()),
        compensated,
        exact,
    })
}

/// Applies `trials` random sequences of child swaps to `tree` and reports
/// whether every swapped tree evaluates to the same bits as the original.
pub fn equivalence_evaluation_invariance_check<R: Rng + ?Sized>(
    tree: &SumTree,
    b: &Binding,
    p: Precision,
    trials: usize,
    rng: &mut R,
) -> Result<bool, EvalError> {
    let values = b.rounded(p)?;
    let reference = sum_tree(tree, &values, p)?.to_bits();
    let interior = tree.interior_count();
    if interior == 0 {
        return Ok(true);
    }
    for _ in 0..trials {
        let swaps = rng.gen_range(1..=2 * interior);
        let mut t = tree.clone();
        for _ in 0..swaps {
            let paths: Vec<NodePath> = t.interior_paths();
            let path = &paths[rng.gen_range(0..paths.len())];
            t = t.swap_at(path).expect("interior path");
        }
        if sum_tree(&t, &values, p)?.to_bits() != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The sign-magnitude split of a rational, used by callers that print
/// exact values.
pub fn rational_parts(q: &BigRational) -> (Sign, BigUint, BigUint) {
    (
        q.numer().sign(),
        q.numer().magnitude().clone(),
        q.denom().magnitude().clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use rand::SeedableRng;

    fn bind(pairs: &[(&str, &str)]) -> Binding {
        let mut b = Binding::new();
        for (l, v) in pairs {
            b.insert(Label::new(l).unwrap(), v).unwrap();
        }
        b
    }

    fn big_small() -> Binding {
        bind(&[("a", "1"), ("b", "1e16"), ("c", "-1e16")])
    }

    #[test]
    fn rounding_matches_std_parse() {
        for s in [
            "0.1",
            "1e16",
            "-2.5",
            "3.4028235e38",
            "1e-320",
            "4.9e-324",
            "123456789.123456789",
            "0.3",
        ] {
            let q = parse_literal(s).unwrap();
            assert_eq!(
                round_rational(&q, Precision::Binary64),
                Rounded::Finite(s.parse::<f64>().unwrap()),
                "{s}"
            );
            let want32 = s.parse::<f32>().unwrap();
            if want32.is_finite() {
                assert_eq!(
                    round_rational(&q, Precision::Binary32),
                    Rounded::Finite(want32 as f64),
                    "{s}"
                );
            }
        }
        let q = parse_literal("1e39").unwrap();
        assert_eq!(
            round_rational(&q, Precision::Binary32),
            Rounded::Overflow { negative: false }
        );
    }

    #[test]
    fn ties_round_to_even() {
        // 1e16 + 1 sits halfway between 1e16 and 1e16 + 2.
        let q = parse_literal("10000000000000001").unwrap();
        assert_eq!(
            round_rational(&q, Precision::Binary64),
            Rounded::Finite(1e16)
        );
        let q = parse_literal("10000000000000003").unwrap();
        assert_eq!(
            round_rational(&q, Precision::Binary64),
            Rounded::Finite(1.0000000000000004e16)
        );
    }

    #[test]
    fn hex_literals_and_formatting() {
        assert_eq!(
            parse_literal("0x1.8p+0").unwrap(),
            parse_literal("1.5").unwrap()
        );
        assert_eq!(
            parse_literal("-0x10").unwrap(),
            parse_literal("-16").unwrap()
        );
        assert_eq!(format_hex(0.0, Precision::Binary64), "0x0p+0");
        assert_eq!(format_hex(-0.0, Precision::Binary64), "-0x0p+0");
        assert_eq!(format_hex(1.0, Precision::Binary64), "0x1p+0");
        assert_eq!(format_hex(1.5, Precision::Binary64), "0x1.8p+0");
        assert_eq!(format_hex(1e16, Precision::Binary64), "0x1.1c37937e08p+53");
        assert_eq!(format_hex(0.1, Precision::Binary64), "0x1.999999999999ap-4");
        assert_eq!(
            format_hex(0.1f32 as f64, Precision::Binary32),
            "0x1.99999ap-4"
        );
        assert_eq!(
            format_hex(f64::from_bits(1), Precision::Binary64),
            "0x0.0000000000001p-1022"
        );
        for s in [
            "0x1.999999999999ap-4",
            "0x1.1c37937e08p+53",
            "-0x1.8p+0",
            "0x0.0000000000001p-1022",
        ] {
            let q = parse_literal(s).unwrap();
            let Rounded::Finite(x) = round_rational(&q, Precision::Binary64) else {
                panic!()
            };
            assert_eq!(format_hex(x, Precision::Binary64), s);
        }
        assert!(parse_literal("0x").is_err());
        assert!(parse_literal("abc").is_err());
        assert!(parse_literal("inf").is_err());
        assert!(parse_literal("1e999999").is_err());
    }

    #[test]
    fn eval_big_small() {
        let b = big_small();
        let r = eval(&parse("((a+b)+c)").unwrap(), &b, Precision::Binary64).unwrap();
        assert_eq!(r.rounded, 0.0);
        assert_eq!(r.exact, BigRational::one());
        assert_eq!(r.abs_error, BigRational::one());
        assert_eq!(r.rounded_hex(), "0x0p+0");
        assert_eq!(r.relative_error, Some(1.0));
        let r = eval(&parse("(a+(b+c))").unwrap(), &b, Precision::Binary64).unwrap();
        assert_eq!(r.rounded, 1.0);
        assert!(r.abs_error.is_zero());
    }

    #[test]
    fn eval_zero_binding() {
        let b = bind(&[("a", "0"), ("b", "0"), ("c", "0")]);
        let r = eval(&parse("((a+b)+c)").unwrap(), &b, Precision::Binary32).unwrap();
        assert_eq!(r.rounded, 0.0);
        assert!(r.abs_error.is_zero());
        assert_eq!(r.relative_error, Some(0.0));
    }

    #[test]
    fn relative_error_undefined_at_exact_zero() {
        let b = bind(&[("a", "1"), ("b", "1e16"), ("c", "-1e16"), ("d", "-1")]);
        let r = eval(&parse("(((a+b)+c)+d)").unwrap(), &b, Precision::Binary64).unwrap();
        assert_eq!(r.rounded, -1.0);
        assert!(r.exact.is_zero());
        assert_eq!(r.relative_error, None);
    }

    #[test]
    fn eval_errors() {
        let b = bind(&[("a", "1")]);
        assert_eq!(
            eval(&parse("(a+b)").unwrap(), &b, Precision::Binary64).unwrap_err(),
            EvalError::Unbound("b".into())
        );
        let huge = bind(&[("a", "1e300"), ("b", "1e300")]);
        assert!(matches!(
            eval(&parse("(a+b)").unwrap(), &huge, Precision::Binary32).unwrap_err(),
            EvalError::NonFinite { .. }
        ));
        let max = bind(&[("a", "1.7e308"), ("b", "1.7e308")]);
        assert!(matches!(
            eval(&parse("(a+b)").unwrap(), &max, Precision::Binary64).unwrap_err(),
            EvalError::Overflow { .. }
        ));
    }

    #[test]
    fn binary32_rounds_directly() {
        // 1 + 2^-24 + 2^-48 rounds up in binary32 only if the addend is not
        // first rounded through binary64's wider significand... both ways
        // agree here, but the evaluation must match a direct binary32 oracle.
        let b = bind(&[("a", "1"), ("b", "0x1.000002p-24")]);
        let r = eval(&parse("(a+b)").unwrap(), &b, Precision::Binary32).unwrap();
        let exact =
            parse_literal("1").unwrap() + round_to(&parse_literal("0x1.000002p-24").unwrap());
        assert_eq!(
            Rounded::Finite(r.rounded),
            round_rational(&exact, Precision::Binary32)
        );
    }

    fn round_to(q: &BigRational) -> BigRational {
        match round_rational(q, Precision::Binary32) {
            Rounded::Finite(x) => f64_to_rational(x),
            _ => unreachable!(),
        }
    }

    #[test]
    fn compensated_examples() {
        assert_eq!(
            compensated_sum(&[1.0, 1e16, -1e16], Precision::Binary64).unwrap(),
            1.0
        );
        assert_eq!(compensated_sum(&[2.5], Precision::Binary64).unwrap(), 2.5);
        let tenth = 0.1f32 as f64;
        let v = vec![tenth; 10_000];
        let got = compensated_sum(&v, Precision::Binary32).unwrap();
        let exact = f64_to_rational(tenth) * BigRational::from_integer(BigInt::from(10_000));
        let Rounded::Finite(nearest) = round_rational(&exact, Precision::Binary32) else {
            panic!()
        };
        let ulp = (nearest as f32).to_bits().abs_diff((got as f32).to_bits());
        assert!(ulp <= 1, "got {got}, nearest {nearest}");
        assert!(compensated_sum(&[f64::NAN], Precision::Binary64).is_err());
    }

    #[test]
    fn survey_three_classes() {
        let r = survey(&big_small(), Precision::Binary64, &Selector::All).unwrap();
        assert_eq!(r.classes, 3);
        assert_eq!(r.distinct, 2);
        assert_eq!(r.distinct_hex, ["0x0p+0", "0x1p+0"]);
        assert!(r.min_abs_error <= r.mean_abs_error && r.mean_abs_error <= r.max_abs_error);
        assert_eq!(r.compensated, 1.0);
    }

    #[test]
    fn survey_caps_and_mismatch() {
        let b = Binding::from_values(&Label::alphabet(8), &[1.0; 8]);
        assert!(matches!(
            survey(&b, Precision::Binary64, &Selector::All),
            Err(EvalError::AboveCap { .. })
        ));
        let shape = ladder_shape(3);
        assert!(matches!(
            survey(
                &big_small(),
                Precision::Binary64,
                &Selector::Shape(ladder_shape(4))
            ),
            Err(EvalError::BindingMismatch { .. })
        ));
        let r = survey(&big_small(), Precision::Binary64, &Selector::Shape(shape)).unwrap();
        assert_eq!(r.classes, 3);
    }

    #[test]
    fn invariance_holds() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let t = parse("(((a+b)+c)+d)").unwrap();
        let b = bind(&[("a", "1"), ("b", "1e16"), ("c", "-1e16"), ("d", "7")]);
        for p in [Precision::Binary32, Precision::Binary64] {
            assert!(equivalence_evaluation_invariance_check(&t, &b, p, 100, &mut rng).unwrap());
        }
    }
}
