//! Power series of operators: coefficient laws, the absolute series
//! `f_a(z) = Σ |cₙ| zⁿ`, scalar and matrix evaluation, a catalogue of
//! standard series, and checkers for the trace inequalities they satisfy.

mod rules;
mod theorems;

use alloc::borrow::Cow;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::linalg::{normal_eig, Matrix, C64};

pub use rules::{CoefficientStream, Rule};
pub use theorems::{
    check_commuting_series, check_commuting_series_example, check_normal_series, check_normal_series_example,
    check_series_brackets, CommutingPair, ExampleKind, COEFFICIENT_PROBE, ORACLE_TOL, TRUNCATED_CROSSCHECK_DIM,
};

/// Coefficients cached per series at construction.
pub const MEMO_TERMS: usize = 2048;

/// Relative tail bound used by [`PowerSeries::value`].
pub const DEFAULT_TAIL_TOL: f64 = 1e-17;

/// Term budget of [`eval_scalar`].
pub const MAX_TERMS: usize = 1_000_000;

/// Arguments must satisfy `|z| ≤ DISK_FRACTION · R`.
pub const DISK_FRACTION: f64 = 0.95;

/// A power series `Σ cₙ zⁿ` with a name, radius and coefficient law.
///
/// Coefficients are memoised on construction, so a series is immutable and
/// can be shared across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    name: Cow<'static, str>,
    rule: Rule,
    start_index: usize,
    radius: f64,
    memo: Vec<C64>,
}

impl PowerSeries {
    pub fn new(name: impl Into<Cow<'static, str>>, rule: Rule) -> Result<Self> {
        match &rule {
            Rule::Gauss2F1 { a, b, c } if !(*a > 0.0 && *b > 0.0 && *c > 0.0) => {
                return Err(Error::InvalidParameter("hypergeometric parameters must be positive"));
            }
            Rule::Custom(c) if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) => {
                return Err(Error::NonFinite);
            }
            _ => {}
        }
        let memo: Vec<C64> = CoefficientStream::new(&rule).take(MEMO_TERMS).collect();
        let start_index = if memo[0].is_zero() { 1 } else { 0 };
        Ok(Self { name: name.into(), radius: rule.radius(), rule, start_index, memo })
    }

    /// Catalogue series for a rule, named canonically.
    pub fn from_rule(rule: Rule) -> Self {
        let name = canonical_name(&rule);
        Self::new(name, rule).expect("catalogue rules are valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    /// `1` when `c₀ = 0`, else `0`.
    pub fn start_index(&self) -> usize {
        self.start_index
    }

    /// Radius of convergence, possibly infinite.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn coeff(&self, n: usize) -> C64 {
        match self.memo.get(n) {
            Some(&c) => c,
            None => CoefficientStream::new(&self.rule).nth(n).unwrap_or_else(C64::zero),
        }
    }

    /// `c₀, c₁, …` without end.
    pub fn coefficients(&self) -> impl Iterator<Item = C64> + '_ {
        self.memo.iter().copied().chain(CoefficientStream::new(&self.rule).skip(self.memo.len()))
    }

    pub fn has_closed_form(&self) -> bool {
        self.rule.closed_form(C64::zero()).is_some()
    }

    pub fn closed_form(&self, z: C64) -> Option<C64> {
        self.rule.closed_form(z)
    }

    /// The series with coefficients `|cₙ|` and the same radius.
    pub fn absolute_series(&self) -> PowerSeries {
        let rule = self.rule.absolute();
        if rule == self.rule {
            return self.clone();
        }
        let name: Cow<'static, str> = match rule {
            Rule::Custom(_) => format!("abs-{}", self.name).into(),
            _ => canonical_name(&rule).into(),
        };
        PowerSeries::new(name, rule).expect("absolute rule of a valid rule is valid")
    }

    /// True when the first `probe` coefficients are real and nonnegative.
    pub fn has_nonnegative_coefficients(&self, probe: usize) -> bool {
        self.coefficients().take(probe).all(|c| c.im == 0.0 && c.re >= 0.0)
    }

    /// `f(z)`: the closed form when known, the summed series otherwise.
    pub fn value(&self, z: C64) -> Result<C64> {
        check_disk(self.radius, z.norm())?;
        match self.closed_form(z) {
            Some(v) => Ok(v),
            None => eval_scalar(self, z, DEFAULT_TAIL_TOL),
        }
    }
}

fn check_disk(radius: f64, modulus: f64) -> Result<()> {
    let limit = DISK_FRACTION * radius;
    if !(modulus <= limit) {
        return Err(Error::OutOfDisk { modulus, limit });
    }
    Ok(())
}

/// Catalogue name of a rule.
pub fn canonical_name(rule: &Rule) -> &'static str {
    match rule {
        Rule::Zero => "zero",
        Rule::Identity => "identity",
        Rule::Exp => "exp",
        Rule::ExpMinusOne => "exp-minus-one",
        Rule::Cos => "cos",
        Rule::Sin => "sin",
        Rule::Cosh => "cosh",
        Rule::Sinh => "sinh",
        Rule::Geom => "geom",
        Rule::GeomAlt => "geom-alt",
        Rule::GeomMinusOne => "geom-minus-one",
        Rule::GeomAltMinusOne => "geom-alt-minus-one",
        Rule::LogOnePlusInv => "log-one-plus-inv",
        Rule::LogOneMinusInv => "log-one-minus-inv",
        Rule::HalfLogRatio => "half-log-ratio",
        Rule::Artanh => "artanh",
        Rule::Arcsin => "arcsin",
        Rule::Gauss2F1 { .. } => "gauss-2F1",
        Rule::Custom(_) => "custom",
    }
}

/// Sum of the series at `z`, stopped once two consecutive terms satisfy
/// `|cₙ||z|ⁿ/(1 − |z|/ρ) < tail_tol·max(1, |sum|)`, with `ρ` the radius, or
/// `2|z|` for entire series.
pub fn eval_scalar(s: &PowerSeries, z: C64, tail_tol: f64) -> Result<C64> {
    let r = z.norm();
    check_disk(s.radius, r)?;
    if let Some(len) = s.rule.support() {
        let coeffs: Vec<C64> = s.coefficients().take(len).collect();
        return Ok(coeffs.iter().rev().fold(C64::zero(), |acc, &c| acc * z + c));
    }
    if r == 0.0 {
        return Ok(s.coeff(0));
    }
    let rho = if s.radius.is_finite() { s.radius } else { 2.0 * r };
    let damping = 1.0 / (1.0 - r / rho);
    let mut sum = C64::zero();
    let mut power = C64::new(1.0, 0.0);
    let mut small = 0;
    for c in s.coefficients().take(MAX_TERMS) {
        let term = c * power;
        sum += term;
        if term.norm() * damping < tail_tol * sum.norm().max(1.0) {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        if !sum.re.is_finite() || !sum.im.is_finite() {
            break;
        }
        power *= z;
    }
    Err(Error::NoConvergence { what: "power series", budget: MAX_TERMS })
}

/// `U·diag(f(λᵢ))·U*` for normal `M = U·diag(λᵢ)·U*`.
///
/// Eigenvalue images use the closed form where the catalogue has one and
/// the summed series otherwise.
pub fn eval_matrix_spectral(s: &PowerSeries, m: &Matrix) -> Result<Matrix> {
    let eig = normal_eig(m)?;
    let images = eig.values.iter().map(|&l| s.value(l)).collect::<Result<Vec<_>>>()?;
    let mut it = images.into_iter();
    Ok(eig.map_values(|_| it.next().unwrap_or_else(C64::zero)))
}

/// `Σ_{k<terms} c_k M^k` by Horner's scheme.
pub fn eval_matrix_truncated(s: &PowerSeries, m: &Matrix, terms: usize) -> Matrix {
    let n = m.dim();
    let coeffs: Vec<C64> = s.coefficients().take(terms).collect();
    let mut acc = Matrix::zeros(n);
    for &c in coeffs.iter().rev() {
        acc = &acc * m;
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    acc
}

/// Number of terms after which `Σ |cₖ| xᵏ` has a geometric tail bound below
/// `tol` relative to the partial sum, for an argument of modulus `x`.
pub fn truncation_terms(s: &PowerSeries, x: f64, tol: f64) -> Result<usize> {
    check_disk(s.radius, x)?;
    if let Some(len) = s.rule.support() {
        return Ok(len);
    }
    if x == 0.0 {
        return Ok(1);
    }
    let rho = if s.radius.is_finite() { s.radius } else { 2.0 * x };
    let damping = 1.0 / (1.0 - x / rho);
    let mut sum = 0.0;
    let mut power = 1.0;
    let mut small = 0;
    for (k, c) in s.coefficients().take(MAX_TERMS).enumerate() {
        let term = c.norm() * power;
        sum += term;
        if term * damping < tol * sum.max(1.0) {
            small += 1;
            if small >= 2 {
                return Ok(k + 1);
            }
        } else {
            small = 0;
        }
        power *= x;
    }
    Err(Error::NoConvergence { what: "truncation length", budget: MAX_TERMS })
}

/// Named catalogue of standard series.
#[derive(Debug, Clone)]
pub struct SeriesCatalog {
    entries: Vec<PowerSeries>,
}

impl SeriesCatalog {
    /// Alternating series, their absolute partners, further series with
    /// nonnegative coefficients, and the shifted and trivial helpers used
    /// by the theorem checkers.
    pub fn standard() -> Self {
        let rules = [
            Rule::LogOnePlusInv,
            Rule::Cos,
            Rule::Sin,
            Rule::GeomAlt,
            Rule::LogOneMinusInv,
            Rule::Cosh,
            Rule::Sinh,
            Rule::Geom,
            Rule::Exp,
            Rule::HalfLogRatio,
            Rule::Arcsin,
            Rule::Artanh,
            Rule::Gauss2F1 { a: 1.0, b: 1.0, c: 2.0 },
            Rule::ExpMinusOne,
            Rule::GeomMinusOne,
            Rule::GeomAltMinusOne,
            Rule::Identity,
            Rule::Zero,
        ];
        Self { entries: rules.into_iter().map(PowerSeries::from_rule).collect() }
    }

    pub fn entries(&self) -> &[PowerSeries] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&PowerSeries> {
        self.entries.iter().find(|s| s.name() == name)
    }

    /// Entry by name, or `InvalidParameter`.
    pub fn require(&self, name: &str) -> Result<&PowerSeries> {
        self.get(name).ok_or(Error::InvalidParameter("unknown series name"))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(PowerSeries::name)
    }

    /// Pairs of an alternating series and the series of its absolute
    /// coefficients.
    pub fn absolute_pairs() -> [(&'static str, &'static str); 5] {
        [
            ("log-one-plus-inv", "log-one-minus-inv"),
            ("cos", "cosh"),
            ("sin", "sinh"),
            ("geom-alt", "geom"),
            ("geom-alt-minus-one", "geom-minus-one"),
        ]
    }
}

impl Default for SeriesCatalog {
    fn default() -> Self {
        Self::standard()
    }
}
