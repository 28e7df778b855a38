//! The superadditive trace functional
//! `σ(P) = [tr(PA|T|^{2α}A*)]^{1/2}·[tr(PA|T*|^{2(1−α)}A*)]^{1/2} − |tr(PATA*)|`
//! on positive semidefinite `P`, its order properties, and the version for
//! tuples of operators.
//!
//! All traces are rewritten as `tr(W|T|^s)` with `W = A*PA`, so one singular
//! value decomposition of `T` serves every `P` and every exponent.

use alloc::vec::Vec;

use num_traits::Float;

use crate::check::{Context, InequalityCheck};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, svd, Matrix, ModulusPowers, PowerSum, PsdPowers, C64, DECOMPOSITION_TOL};
use crate::pointwise::check_unit_interval;

/// Tolerated negative excess of a trace of positive factors before it is
/// treated as a decomposition failure rather than rounding.
const NEGATIVE_TRACE_REL: f64 = 1e-8;

/// Value of `σ` at one exponent, with the two terms it is the difference of.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaValue {
    pub value: f64,
    pub bracket: f64,
    pub cross: f64,
}

impl SigmaValue {
    /// Size of the cancelling terms.
    pub fn scale(&self) -> f64 {
        self.bracket.max(self.cross)
    }
}

/// The three traces behind `σ(P)`, as functions of the exponent.
#[derive(Debug, Clone)]
pub struct SigmaTerms {
    abs: PowerSum,
    adj: PowerSum,
    cross: C64,
}

impl SigmaTerms {
    /// `Σ cₖ·termsₖ` where the modulus traces are weighted by `|cₖ|` and the
    /// cross trace by `cₖ` itself.
    pub fn combine<'a>(parts: impl IntoIterator<Item = (&'a SigmaTerms, C64)>) -> Self {
        let mut out = Self { abs: PowerSum::new(Vec::new(), Vec::new()), adj: PowerSum::new(Vec::new(), Vec::new()), cross: C64::new(0.0, 0.0) };
        for (terms, c) in parts {
            let m = c.norm();
            out.abs = out.abs.plus(&terms.abs.scaled(m));
            out.adj = out.adj.plus(&terms.adj.scaled(m));
            out.cross += terms.cross * c;
        }
        out
    }

    /// `tr(W T)`, complex.
    pub fn cross_trace(&self) -> C64 {
        self.cross
    }

    /// `tr(W|T|^{2α})` and `tr(W|T*|^{2(1−α)})`, clamped at zero after the
    /// sanity window.
    pub fn modulus_traces(&self, alpha: f64) -> Result<(f64, f64)> {
        check_unit_interval(alpha)?;
        let (s, r) = (2.0 * alpha, 2.0 * (1.0 - alpha));
        Ok((nonnegative(self.abs.eval(s), self.abs.magnitude(s))?, nonnegative(self.adj.eval(r), self.adj.magnitude(r))?))
    }

    pub fn eval(&self, alpha: f64) -> Result<SigmaValue> {
        let (x, y) = self.modulus_traces(alpha)?;
        let bracket = x.sqrt() * y.sqrt();
        let cross = self.cross.norm();
        Ok(SigmaValue { value: bracket - cross, bracket, cross })
    }
}

fn nonnegative(value: f64, magnitude: f64) -> Result<f64> {
    if value < -NEGATIVE_TRACE_REL * magnitude {
        return Err(Error::NegativeTrace { value });
    }
    Ok(value.max(0.0))
}

/// `σ_{A,T,α}` for fixed `A` and `T`.
#[derive(Debug, Clone)]
pub struct Functional {
    a: Matrix,
    t: Matrix,
    modulus: ModulusPowers,
}

impl Functional {
    pub fn new(a: &Matrix, t: &Matrix) -> Result<Self> {
        a.check_same_dim(t)?;
        Ok(Self { a: a.clone(), t: t.clone(), modulus: ModulusPowers::new(t)? })
    }

    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    /// Terms for `σ(P)`; `P` must be positive semidefinite.
    pub fn terms(&self, p: &Matrix) -> Result<SigmaTerms> {
        self.a.check_same_dim(p)?;
        PsdPowers::new(p)?;
        let w = (&(&self.a.adjoint() * p) * &self.a).hermitian_part();
        Ok(self.terms_for_weight(&w))
    }

    /// Terms for `σ(|V|²)`, written through `W = |VA|²` so no square of `V`
    /// is formed separately.
    pub fn modulus_terms(&self, v: &Matrix) -> Result<SigmaTerms> {
        self.a.check_same_dim(v)?;
        let va = v * &self.a;
        Ok(self.terms_for_weight(&(&va.adjoint() * &va).hermitian_part()))
    }

    /// Terms for `σ(1)`, i.e. `W = |A|²`.
    pub fn identity_terms(&self) -> SigmaTerms {
        self.terms_for_weight(&(&self.a.adjoint() * &self.a).hermitian_part())
    }

    fn terms_for_weight(&self, w: &Matrix) -> SigmaTerms {
        SigmaTerms {
            abs: self.modulus.abs_trace_sum(w),
            adj: self.modulus.adj_abs_trace_sum(w),
            cross: w.trace_of_product(&self.t),
        }
    }

    pub fn sigma(&self, p: &Matrix, alpha: f64) -> Result<SigmaValue> {
        self.terms(p)?.eval(alpha)
    }
}

/// `σ_{A,T,α}(P)`.
pub fn sigma(a: &Matrix, t: &Matrix, alpha: f64, p: &Matrix) -> Result<f64> {
    Ok(Functional::new(a, t)?.sigma(p, alpha)?.value)
}

pub(crate) fn ctx(n: usize, alpha: f64) -> Context {
    Context::new(n).with_alpha(alpha)
}

/// `σ(P) ≥ 0`, judged against the size of the cancelling terms.
pub fn check_nonnegative(a: &Matrix, t: &Matrix, alpha: f64, p: &Matrix) -> Result<InequalityCheck> {
    let f = Functional::new(a, t)?;
    let s = f.sigma(p, alpha)?;
    Ok(InequalityCheck::at_least("sigma-nonnegative", s.value, 0.0, s.scale()).with_context(ctx(f.dim(), alpha)))
}

/// `NotOrdered` unless `larger − smaller` is positive semidefinite up to
/// rounding.
pub(crate) fn ensure_ordered(larger: &Matrix, smaller: &Matrix) -> Result<()> {
    larger.check_same_dim(smaller)?;
    let diff = (larger - smaller).hermitian_part();
    let min = hermitian_eig(&diff)?.real_values().into_iter().fold(f64::INFINITY, f64::min);
    let scale = larger.hs_norm() + smaller.hs_norm();
    if min < -DECOMPOSITION_TOL * scale {
        return Err(Error::NotOrdered { min_eigenvalue: min });
    }
    Ok(())
}

pub(crate) fn superadditive_check(sum: SigmaValue, p: SigmaValue, q: SigmaValue, name: &'static str) -> InequalityCheck {
    let scale = sum.scale().max(p.scale() + q.scale());
    InequalityCheck::at_least(name, sum.value, p.value + q.value, scale)
}

/// `σ(P + Q) ≥ σ(P) + σ(Q)`.
pub fn check_superadditive(
    a: &Matrix,
    t: &Matrix,
    alpha: f64,
    p: &Matrix,
    q: &Matrix,
) -> Result<InequalityCheck> {
    let f = Functional::new(a, t)?;
    let sp = f.sigma(p, alpha)?;
    let sq = f.sigma(q, alpha)?;
    let spq = f.sigma(&(p + q), alpha)?;
    Ok(superadditive_check(spq, sp, sq, "superadditive").with_context(ctx(f.dim(), alpha)))
}

/// `σ(P) ≥ σ(Q)` for `P ≥ Q`.
pub fn check_monotone(a: &Matrix, t: &Matrix, alpha: f64, p: &Matrix, q: &Matrix) -> Result<InequalityCheck> {
    let f = Functional::new(a, t)?;
    ensure_ordered(p, q)?;
    let sp = f.sigma(p, alpha)?;
    let sq = f.sigma(q, alpha)?;
    Ok(InequalityCheck::at_least("monotone", sp.value, sq.value, sp.scale().max(sq.scale()))
        .with_context(ctx(f.dim(), alpha)))
}

pub(crate) fn check_bounds(m_lo: f64, m_hi: f64) -> Result<()> {
    if !(m_lo > 0.0 && m_hi >= m_lo && m_hi.is_finite()) {
        return Err(Error::InvalidParameter("sandwich constants need M ≥ m > 0"));
    }
    Ok(())
}

pub(crate) fn sandwich_pair(
    names: (&'static str, &'static str),
    middle: SigmaValue,
    base: SigmaValue,
    lower: f64,
    upper: f64,
    n: usize,
    alpha: f64,
) -> (InequalityCheck, InequalityCheck) {
    let c = ctx(n, alpha);
    (
        InequalityCheck::at_least(names.0, upper * base.value, middle.value, middle.scale().max(upper * base.scale()))
            .with_context(c.clone()),
        InequalityCheck::at_least(names.1, middle.value, lower * base.value, middle.scale().max(lower * base.scale()))
            .with_context(c),
    )
}

/// `M·σ(Q) ≥ σ(P) ≥ m·σ(Q)` for `MQ ≥ P ≥ mQ`.
///
/// `M = m` is accepted, so that `P = Q` with `m = M = 1` is a valid input.
#[allow(clippy::too_many_arguments)]
pub fn check_sandwich(
    a: &Matrix,
    t: &Matrix,
    alpha: f64,
    p: &Matrix,
    q: &Matrix,
    m: f64,
    big_m: f64,
) -> Result<(InequalityCheck, InequalityCheck)> {
    check_bounds(m, big_m)?;
    let f = Functional::new(a, t)?;
    ensure_ordered(&q.scale(big_m), p)?;
    ensure_ordered(p, &q.scale(m))?;
    let sp = f.sigma(p, alpha)?;
    let sq = f.sigma(q, alpha)?;
    Ok(sandwich_pair(("sandwich/upper", "sandwich/lower"), sp, sq, m, big_m, f.dim(), alpha))
}

/// The sandwich with `Q = 1`, taking `m` and `M` from the extreme
/// eigenvalues of `P`.
pub fn check_identity_sandwich(
    a: &Matrix,
    t: &Matrix,
    alpha: f64,
    p: &Matrix,
) -> Result<(InequalityCheck, InequalityCheck)> {
    let f = Functional::new(a, t)?;
    let eig = PsdPowers::new(p)?;
    let big_m = eig.norm();
    let m = eig.eigenvalues().last().copied().unwrap_or(0.0);
    if !(m > 0.0) {
        return Err(Error::PreconditionFailed("identity sandwich needs P bounded below by a positive multiple of 1"));
    }
    let sp = f.terms(p)?.eval(alpha)?;
    let base = f.identity_terms().eval(alpha)?;
    Ok(sandwich_pair(("identity-sandwich/upper", "identity-sandwich/lower"), sp, base, m, big_m, f.dim(), alpha))
}

/// Superadditivity at `P = |V|²`, `Q = |U|²` and, when `|V|² ≥ |U|²`,
/// monotonicity between them; `None` marks the second as not applicable.
pub fn check_vsq_forms(
    a: &Matrix,
    t: &Matrix,
    alpha: f64,
    v: &Matrix,
    u: &Matrix,
) -> Result<(InequalityCheck, Option<InequalityCheck>)> {
    let f = Functional::new(a, t)?;
    v.check_same_dim(u)?;
    let tv = f.modulus_terms(v)?;
    let tu = f.modulus_terms(u)?;
    let sv = tv.eval(alpha)?;
    let su = tu.eval(alpha)?;
    let sum = SigmaTerms::combine([(&tv, C64::new(1.0, 0.0)), (&tu, C64::new(1.0, 0.0))]).eval(alpha)?;
    let c = ctx(f.dim(), alpha);
    let superadditive = superadditive_check(sum, sv, su, "vsq-forms/superadditive").with_context(c.clone());
    let vv = &v.adjoint() * v;
    let uu = &u.adjoint() * u;
    let monotone = match ensure_ordered(&vv, &uu) {
        Ok(()) => Some(
            InequalityCheck::at_least("vsq-forms/monotone", sv.value, su.value, sv.scale().max(su.scale()))
                .with_context(c),
        ),
        Err(Error::NotOrdered { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok((superadditive, monotone))
}

/// `‖U‖²·σ(1) ≥ σ(|U|²) ≥ ‖U⁻¹‖⁻²·σ(1)` for invertible `U`, with `σ(1)`
/// built on `|A|²`.
pub fn check_invertible_sandwich(
    a: &Matrix,
    t: &Matrix,
    alpha: f64,
    u: &Matrix,
) -> Result<(InequalityCheck, InequalityCheck)> {
    let f = Functional::new(a, t)?;
    let sv = svd(u)?.real_values();
    let top = sv.first().copied().unwrap_or(0.0);
    let bottom = sv.last().copied().unwrap_or(0.0);
    if !(bottom > 1e-8 * top) {
        return Err(Error::Singular);
    }
    let middle = f.modulus_terms(u)?.eval(alpha)?;
    let base = f.identity_terms().eval(alpha)?;
    Ok(sandwich_pair(
        ("invertible-sandwich/upper", "invertible-sandwich/lower"),
        middle,
        base,
        bottom * bottom,
        top * top,
        f.dim(),
        alpha,
    ))
}

/// Relative gap `|σ(cP) − c·σ(P)| / (c·scale)`.
pub fn homogeneity_gap(a: &Matrix, t: &Matrix, alpha: f64, p: &Matrix, c: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter("homogeneity factor must be positive"));
    }
    let f = Functional::new(a, t)?;
    let base = f.sigma(p, alpha)?;
    let scaled = f.sigma(&p.scale(c), alpha)?;
    let scale = c * base.scale();
    if scale == 0.0 {
        return Ok(scaled.value.abs());
    }
    Ok((scaled.value - c * base.value).abs() / scale)
}

/// `(T_k, A_k, P_k, z_k, p_k)` for `k = 1..n`.
#[derive(Debug, Clone)]
pub struct OperatorTuple {
    t: Vec<Matrix>,
    a: Vec<Matrix>,
    p: Vec<Matrix>,
    z: Vec<C64>,
    weights: Vec<f64>,
}

impl OperatorTuple {
    pub fn new(t: Vec<Matrix>, a: Vec<Matrix>, p: Vec<Matrix>, z: Vec<C64>, weights: Vec<f64>) -> Result<Self> {
        let len = t.len();
        if len == 0 {
            return Err(Error::InvalidParameter("operator tuple is empty"));
        }
        for other in [a.len(), p.len(), z.len(), weights.len()] {
            if other != len {
                return Err(Error::DimensionMismatch { expected: len, found: other });
            }
        }
        let dim = t[0].dim();
        for m in t.iter().chain(&a).chain(&p) {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.dim() });
            }
        }
        if weights.iter().any(|&w| !(w >= 0.0 && w.is_finite())) {
            return Err(Error::InvalidParameter("tuple weights must be finite and nonnegative"));
        }
        for pk in &p {
            PsdPowers::new(pk)?;
        }
        Ok(Self { t, a, p, z, weights })
    }

    /// Tuple with `P_k = 1`, `z_k = 1` and unit weights.
    pub fn plain(t: Vec<Matrix>, a: Vec<Matrix>) -> Result<Self> {
        let len = t.len();
        let dim = t.first().map(Matrix::dim).unwrap_or(0);
        let p = (0..len).map(|_| Matrix::identity(dim)).collect();
        Self::new(t, a, p, alloc::vec![C64::new(1.0, 0.0); len], alloc::vec![1.0; len])
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.t[0].dim()
    }

    pub fn positives(&self) -> &[Matrix] {
        &self.p
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.z
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn with_positives(&self, p: Vec<Matrix>) -> Result<Self> {
        Self::new(self.t.clone(), self.a.clone(), p, self.z.clone(), self.weights.clone())
    }
}

/// Per-component functionals of a tuple, decomposed once.
#[derive(Debug, Clone)]
pub struct TupleFunctional {
    parts: Vec<Functional>,
    dim: usize,
}

impl TupleFunctional {
    pub fn new(tuple: &OperatorTuple) -> Result<Self> {
        let parts = tuple.t.iter().zip(&tuple.a).map(|(t, a)| Functional::new(a, t)).collect::<Result<Vec<_>>>()?;
        Ok(Self { parts, dim: tuple.dim() })
    }

    /// Terms of `Σ_k c_k·(P_k A_k … A_k*)`.
    pub fn terms(&self, p: &[Matrix], c: &[C64]) -> Result<SigmaTerms> {
        if p.len() != self.parts.len() || c.len() != self.parts.len() {
            return Err(Error::DimensionMismatch { expected: self.parts.len(), found: p.len().min(c.len()) });
        }
        let each = self.parts.iter().zip(p).map(|(f, pk)| f.terms(pk)).collect::<Result<Vec<_>>>()?;
        Ok(SigmaTerms::combine(each.iter().zip(c.iter().copied())))
    }

    /// Terms with every `P_k = p_k·1`.
    pub fn weighted_identity_terms(&self, weights: &[f64]) -> SigmaTerms {
        let each: Vec<SigmaTerms> = self.parts.iter().map(Functional::identity_terms).collect();
        SigmaTerms::combine(each.iter().zip(weights.iter().map(|&w| C64::new(w, 0.0))))
    }

    pub fn sigma(&self, p: &[Matrix], alpha: f64) -> Result<SigmaValue> {
        let ones = alloc::vec![C64::new(1.0, 0.0); p.len()];
        self.terms(p, &ones)?.eval(alpha)
    }
}

/// `|tr Σ z_k P_k A_k T_k A_k*|² ≤ tr(Σ|z_k|P_k A_k|T_k|^{2α}A_k*)·tr(Σ|z_k|P_k A_k|T_k*|^{2(1−α)}A_k*)`.
pub fn tuple_check(tuple: &OperatorTuple, alpha: f64) -> Result<InequalityCheck> {
    let f = TupleFunctional::new(tuple)?;
    tuple_kato_check(&f.terms(&tuple.p, &tuple.z)?, f.dim, alpha)
}

pub(crate) fn tuple_kato_check(terms: &SigmaTerms, n: usize, alpha: f64) -> Result<InequalityCheck> {
    let (x, y) = terms.modulus_traces(alpha)?;
    Ok(InequalityCheck::new("tuple-kato", terms.cross_trace().norm_sqr(), x * y).with_context(ctx(n, alpha)))
}

/// `σ_{A,T,α}(P)` for tuples.
pub fn tuple_sigma(tuple: &OperatorTuple, alpha: f64) -> Result<f64> {
    Ok(TupleFunctional::new(tuple)?.sigma(&tuple.p, alpha)?.value)
}

fn check_len(tuple: &OperatorTuple, q: &[Matrix]) -> Result<()> {
    if q.len() != tuple.len() {
        return Err(Error::DimensionMismatch { expected: tuple.len(), found: q.len() });
    }
    Ok(())
}

/// `σ(P + Q) ≥ σ(P) + σ(Q)` componentwise over the tuple.
pub fn check_tuple_superadditive(tuple: &OperatorTuple, q: &[Matrix], alpha: f64) -> Result<InequalityCheck> {
    check_len(tuple, q)?;
    let f = TupleFunctional::new(tuple)?;
    let sum: Vec<Matrix> = tuple.p.iter().zip(q).map(|(a, b)| a + b).collect();
    let check = superadditive_check(f.sigma(&sum, alpha)?, f.sigma(&tuple.p, alpha)?, f.sigma(q, alpha)?, "tuple-superadditive");
    Ok(check.with_context(ctx(f.dim, alpha)))
}

/// `σ(P) ≥ σ(Q)` when `P_k ≥ Q_k` for every `k`.
pub fn check_tuple_monotone(tuple: &OperatorTuple, q: &[Matrix], alpha: f64) -> Result<InequalityCheck> {
    check_len(tuple, q)?;
    for (pk, qk) in tuple.p.iter().zip(q) {
        ensure_ordered(pk, qk)?;
    }
    let f = TupleFunctional::new(tuple)?;
    let sp = f.sigma(&tuple.p, alpha)?;
    let sq = f.sigma(q, alpha)?;
    Ok(InequalityCheck::at_least("tuple-monotone", sp.value, sq.value, sp.scale().max(sq.scale()))
        .with_context(ctx(f.dim, alpha)))
}

/// `M·σ(Q) ≥ σ(P) ≥ m·σ(Q)` when `M·Q_k ≥ P_k ≥ m·Q_k` for every `k`.
pub fn check_tuple_sandwich(
    tuple: &OperatorTuple,
    q: &[Matrix],
    m: f64,
    big_m: f64,
    alpha: f64,
) -> Result<(InequalityCheck, InequalityCheck)> {
    check_bounds(m, big_m)?;
    check_len(tuple, q)?;
    for (pk, qk) in tuple.p.iter().zip(q) {
        ensure_ordered(&qk.scale(big_m), pk)?;
        ensure_ordered(pk, &qk.scale(m))?;
    }
    let f = TupleFunctional::new(tuple)?;
    let sp = f.sigma(&tuple.p, alpha)?;
    let sq = f.sigma(q, alpha)?;
    Ok(sandwich_pair(("tuple-sandwich/upper", "tuple-sandwich/lower"), sp, sq, m, big_m, f.dim, alpha))
}

pub(crate) fn weight_extremes(weights: &[f64]) -> Result<(f64, f64)> {
    let hi = weights.iter().copied().fold(0.0, f64::max);
    let lo = weights.iter().copied().fold(f64::INFINITY, f64::min);
    if hi == 0.0 {
        return Err(Error::NotApplicable("all tuple weights are zero"));
    }
    Ok((lo, hi))
}

/// `max p_k·σ(1) ≥ σ(p) ≥ min p_k·σ(1)` for the weighted functional
/// `σ(p) = σ(p_1·1, …, p_n·1)`.
///
/// Both outer terms use the unweighted `σ(1)`, cross term included; this is
/// the form that follows from monotonicity.
pub fn weight_bounds(tuple: &OperatorTuple, alpha: f64) -> Result<(InequalityCheck, InequalityCheck)> {
    let (lo, hi) = weight_extremes(&tuple.weights)?;
    let f = TupleFunctional::new(tuple)?;
    let weighted = f.weighted_identity_terms(&tuple.weights).eval(alpha)?;
    let unit = f.weighted_identity_terms(&alloc::vec![1.0; tuple.len()]).eval(alpha)?;
    Ok(sandwich_pair(("weight-bounds/upper", "weight-bounds/lower"), weighted, unit, lo, hi, f.dim, alpha))
}

/// The weight bounds with the weighted cross term `|tr Σ p_k|A_k|²T_k|`
/// subtracted inside both outer brackets, read literally.
///
/// This variant does not hold in general: for a single component with
/// `p < 1` and a nonzero cross term its lower bound exceeds `σ(p)`.
pub fn weight_bounds_as_printed(tuple: &OperatorTuple, alpha: f64) -> Result<(InequalityCheck, InequalityCheck)> {
    let (lo, hi) = weight_extremes(&tuple.weights)?;
    let f = TupleFunctional::new(tuple)?;
    let weighted = f.weighted_identity_terms(&tuple.weights).eval(alpha)?;
    let unit = f.weighted_identity_terms(&alloc::vec![1.0; tuple.len()]).eval(alpha)?;
    let outer = SigmaValue { value: unit.bracket - weighted.cross, bracket: unit.bracket, cross: weighted.cross };
    Ok(sandwich_pair(
        ("weight-bounds-as-printed/upper", "weight-bounds-as-printed/lower"),
        weighted,
        outer,
        lo,
        hi,
        f.dim,
        alpha,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn d(x: &[f64]) -> Matrix {
        Matrix::real_diag(x)
    }

    fn nil() -> Matrix {
        Matrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap()
    }

    fn id() -> Matrix {
        Matrix::identity(2)
    }

    #[test]
    fn sigma_examples() {
        let a = Matrix::from_real_rows(&[[1.0, 2.0], [-1.0, 0.5]]).unwrap();
        let p = d(&[0.3, 2.0]);
        assert!(sigma(&a, &id(), 0.4, &p).unwrap().abs() < 1e-14);
        assert_relative_eq!(sigma(&id(), &d(&[1.0, -1.0]), 0.5, &id()).unwrap(), 2.0, max_relative = 1e-14);
        assert_eq!(sigma(&a, &nil(), 0.3, &Matrix::zeros(2)).unwrap(), 0.0);
        assert!(matches!(sigma(&id(), &nil(), 0.5, &d(&[1.0, -1.0])), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn sigma_of_nilpotent_is_geometric_mean() {
        // |T| = diag(0,1), |T*| = diag(1,0), tr T = 0.
        for (p1, p2) in [(1.0, 1.0), (4.0, 9.0), (0.0, 3.0)] {
            let s = sigma(&id(), &nil(), 0.5, &d(&[p1, p2])).unwrap();
            assert_relative_eq!(s, (p1 * p2).sqrt(), max_relative = 1e-14);
        }
    }

    #[test]
    fn superadditive_examples() {
        let t = d(&[1.0, -1.0]);
        let c = check_superadditive(&id(), &t, 0.5, &id(), &id()).unwrap();
        assert_relative_eq!(c.rhs, 4.0, max_relative = 1e-14);
        assert_relative_eq!(c.lhs, 4.0, max_relative = 1e-14);
        let p = d(&[0.5, 3.0]);
        let c = check_superadditive(&id(), &nil(), 0.3, &p, &Matrix::zeros(2)).unwrap();
        assert!(c.is_equality(1e-14));
        let c = check_superadditive(&id(), &nil(), 0.5, &d(&[4.0, 1.0]), &d(&[1.0, 4.0])).unwrap();
        assert_relative_eq!(c.rhs, 5.0, max_relative = 1e-14);
        assert_relative_eq!(c.lhs, 4.0, max_relative = 1e-14);
    }

    #[test]
    fn monotone_examples() {
        let t = d(&[1.0, -1.0]);
        let c = check_monotone(&id(), &t, 0.5, &id().scale(2.0), &id()).unwrap();
        assert_relative_eq!(c.rhs, 4.0, max_relative = 1e-14);
        assert_relative_eq!(c.lhs, 2.0, max_relative = 1e-14);
        let p = d(&[0.2, 1.5]);
        assert!(check_monotone(&id(), &nil(), 0.7, &p, &p).unwrap().is_equality(1e-14));
        assert!(check_monotone(&id(), &nil(), 0.7, &p, &Matrix::zeros(2)).unwrap().passed);
        assert!(matches!(check_monotone(&id(), &t, 0.5, &id(), &id().scale(2.0)), Err(Error::NotOrdered { .. })));
    }

    #[test]
    fn sandwich_examples() {
        let a = Matrix::from_real_rows(&[[1.0, 0.5], [0.0, 2.0]]).unwrap();
        let t = Matrix::from_rows(&[[C64::new(0.0, 1.0), C64::new(1.0, 0.0)], [C64::new(0.5, 0.0), C64::new(-1.0, 0.0)]]).unwrap();
        let q = d(&[1.0, 2.0]);
        let (up, lo) = check_sandwich(&a, &t, 0.3, &q.scale(1.5), &q, 1.0, 2.0).unwrap();
        assert!(up.passed && lo.passed);
        let base = sigma(&a, &t, 0.3, &q).unwrap();
        assert_relative_eq!(up.lhs, 1.5 * base, max_relative = 1e-12);
        let (up, lo) = check_sandwich(&a, &t, 0.3, &q, &q, 1.0, 1.0).unwrap();
        assert!(up.is_equality(1e-12) && lo.is_equality(1e-12));
        assert!(matches!(check_sandwich(&a, &t, 0.3, &q, &q, 2.0, 1.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(check_sandwich(&a, &t, 0.3, &q.scale(3.0), &q, 1.0, 2.0), Err(Error::NotOrdered { .. })));
    }

    #[test]
    fn identity_sandwich_matches_general_sandwich() {
        let a = Matrix::from_real_rows(&[[1.0, 0.5], [0.0, 2.0]]).unwrap();
        let p = d(&[0.5, 3.0]);
        let (u1, l1) = check_identity_sandwich(&a, &nil(), 0.6, &p).unwrap();
        let (u2, l2) = check_sandwich(&a, &nil(), 0.6, &p, &id(), 0.5, 3.0).unwrap();
        assert_relative_eq!(u1.rhs, u2.rhs, max_relative = 1e-12);
        assert_relative_eq!(l1.lhs, l2.lhs, max_relative = 1e-12);
        assert!(matches!(check_identity_sandwich(&a, &nil(), 0.6, &d(&[0.0, 1.0])), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn vsq_examples() {
        let t = d(&[1.0, -1.0]);
        let v = Matrix::from_real_rows(&[[1.0, 1.0], [0.0, 2.0]]).unwrap();
        let (_, mono) = check_vsq_forms(&id(), &t, 0.5, &v, &v).unwrap();
        assert!(mono.unwrap().is_equality(1e-14));
        let (sup, _) = check_vsq_forms(&id(), &nil(), 0.5, &v, &Matrix::zeros(2)).unwrap();
        assert!(sup.is_equality(1e-14));
        // |V|² = diag(4,0), |U|² = diag(1,0): every σ vanishes.
        let (sup, mono) = check_vsq_forms(&id(), &t, 0.5, &d(&[2.0, 0.0]), &d(&[1.0, 0.0])).unwrap();
        assert!(sup.lhs.abs() < 1e-14 && sup.rhs.abs() < 1e-14 && sup.passed);
        let mono = mono.unwrap();
        assert!(mono.lhs.abs() < 1e-14 && mono.rhs.abs() < 1e-14 && mono.passed);
        // With T nilpotent, σ(diag(a,b)) = √(ab).
        let (sup, mono) = check_vsq_forms(&id(), &nil(), 0.5, &d(&[2.0, 1.0]), &d(&[1.0, 1.0])).unwrap();
        assert_relative_eq!(sup.lhs, 3.0, max_relative = 1e-14);
        assert_relative_eq!(sup.rhs, 5.0_f64.sqrt() * 2.0_f64.sqrt(), max_relative = 1e-14);
        let mono = mono.unwrap();
        assert_relative_eq!(mono.rhs, 2.0, max_relative = 1e-14);
        let (_, mono) = check_vsq_forms(&id(), &nil(), 0.5, &d(&[2.0, 0.0]), &d(&[0.0, 1.0])).unwrap();
        assert!(mono.is_none());
    }

    #[test]
    fn invertible_sandwich_examples() {
        let a = Matrix::from_real_rows(&[[1.0, 0.5], [0.0, 2.0]]).unwrap();
        let (up, lo) = check_invertible_sandwich(&a, &nil(), 0.4, &id().scale(3.0)).unwrap();
        assert!(up.is_equality(1e-12) && lo.is_equality(1e-12));
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let u = Matrix::from_real_rows(&[[r, -r], [r, r]]).unwrap();
        let (up, lo) = check_invertible_sandwich(&a, &nil(), 0.4, &u).unwrap();
        assert!(up.is_equality(1e-12) && lo.is_equality(1e-12));
        assert_eq!(check_invertible_sandwich(&a, &nil(), 0.4, &d(&[1.0, 0.0])).unwrap_err(), Error::Singular);
    }

    #[test]
    fn homogeneity() {
        let a = Matrix::from_real_rows(&[[1.0, 0.5], [0.0, 2.0]]).unwrap();
        let p = d(&[0.5, 3.0]);
        for c in [0.5, 2.0, 10.0] {
            assert!(homogeneity_gap(&a, &nil(), 0.3, &p, c).unwrap() < 1e-12);
        }
    }

    fn pair_tuple(weights: [f64; 2], z: [C64; 2]) -> OperatorTuple {
        OperatorTuple::new(
            alloc::vec![d(&[1.0, -1.0]), nil()],
            alloc::vec![id(), id()],
            alloc::vec![id(), id()],
            z.to_vec(),
            weights.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn tuple_examples() {
        let one = C64::new(1.0, 0.0);
        let tup = pair_tuple([1.0, 1.0], [one, one]);
        assert_relative_eq!(tuple_sigma(&tup, 0.5).unwrap(), 3.0, max_relative = 1e-14);
        let c = tuple_check(&pair_tuple([1.0, 1.0], [one, C64::new(0.0, 1.0)]), 0.5).unwrap();
        assert_eq!(c.lhs, 0.0);
        assert_relative_eq!(c.rhs, 9.0, max_relative = 1e-14);
        let zero = C64::new(0.0, 0.0);
        let c = tuple_check(&pair_tuple([1.0, 1.0], [zero, zero]), 0.5).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
    }

    #[test]
    fn tuple_with_identity_operators_is_equality_for_nonnegative_z() {
        let a1 = Matrix::from_real_rows(&[[1.0, 0.5], [0.0, 2.0]]).unwrap();
        let tup = OperatorTuple::new(
            alloc::vec![id(), id()],
            alloc::vec![a1, id()],
            alloc::vec![d(&[1.0, 2.0]), d(&[0.5, 0.5])],
            alloc::vec![C64::new(0.3, 0.0), C64::new(2.0, 0.0)],
            alloc::vec![1.0, 1.0],
        )
        .unwrap();
        assert!(tuple_check(&tup, 0.35).unwrap().is_equality(1e-13));
        assert!(tuple_sigma(&tup, 0.35).unwrap().abs() < 1e-13);
    }

    #[test]
    fn single_tuple_matches_single_operator() {
        let a = Matrix::from_real_rows(&[[1.0, 0.5], [0.0, 2.0]]).unwrap();
        let t = Matrix::from_rows(&[[C64::new(0.0, 1.0), C64::new(1.0, 0.0)], [C64::new(0.5, 0.0), C64::new(-1.0, 0.0)]]).unwrap();
        let p = d(&[0.7, 1.3]);
        let tup = OperatorTuple::new(alloc::vec![t.clone()], alloc::vec![a.clone()], alloc::vec![p.clone()], alloc::vec![C64::new(1.0, 0.0)], alloc::vec![1.0]).unwrap();
        assert_relative_eq!(tuple_sigma(&tup, 0.3).unwrap(), sigma(&a, &t, 0.3, &p).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn tuple_order_checks() {
        let one = C64::new(1.0, 0.0);
        let tup = pair_tuple([1.0, 1.0], [one, one]).with_positives(alloc::vec![d(&[2.0, 3.0]), d(&[1.0, 1.0])]).unwrap();
        let q = alloc::vec![d(&[1.0, 1.0]), d(&[0.5, 1.0])];
        assert!(check_tuple_superadditive(&tup, &q, 0.5).unwrap().passed);
        assert!(check_tuple_monotone(&tup, &q, 0.5).unwrap().passed);
        let (u, l) = check_tuple_sandwich(&tup, &q, 1.0, 3.0, 0.5).unwrap();
        assert!(u.passed && l.passed);
        assert!(matches!(check_tuple_monotone(&tup, &[d(&[3.0, 3.0]), q[1].clone()], 0.5), Err(Error::NotOrdered { .. })));
    }

    #[test]
    fn weight_bounds_examples() {
        let one = C64::new(1.0, 0.0);
        let (u, l) = weight_bounds(&pair_tuple([1.0, 2.0], [one, one]), 0.5).unwrap();
        assert_relative_eq!(u.lhs, 4.0, max_relative = 1e-14);
        assert_relative_eq!(u.rhs, 6.0, max_relative = 1e-14);
        assert_relative_eq!(l.rhs, 4.0, max_relative = 1e-14);
        assert_relative_eq!(l.lhs, 3.0, max_relative = 1e-14);
        let (u, l) = weight_bounds(&pair_tuple([0.7, 0.7], [one, one]), 0.3).unwrap();
        assert!(u.is_equality(1e-13) && l.is_equality(1e-13));
        assert!(matches!(weight_bounds(&pair_tuple([0.0, 0.0], [one, one]), 0.5), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn weight_bounds_single_component_is_double_equality() {
        let t = Matrix::from_real_rows(&[[2.0, 1.0], [0.0, 0.5]]).unwrap();
        let tup = OperatorTuple::new(alloc::vec![t], alloc::vec![id()], alloc::vec![id()], alloc::vec![C64::new(1.0, 0.0)], alloc::vec![2.5]).unwrap();
        let (u, l) = weight_bounds(&tup, 0.4).unwrap();
        assert!(u.is_equality(1e-13) && l.is_equality(1e-13));
    }

    #[test]
    fn weight_bounds_read_literally_can_fail() {
        // T = [1], A = [1], p = 1/2: σ(p) = 0, literal lower bound 1/2·(1 − 1/2).
        let one = Matrix::identity(1);
        let tup = OperatorTuple::new(alloc::vec![one.clone()], alloc::vec![one.clone()], alloc::vec![one], alloc::vec![C64::new(1.0, 0.0)], alloc::vec![0.5]).unwrap();
        let (_, lower) = weight_bounds_as_printed(&tup, 0.5).unwrap();
        assert_relative_eq!(lower.lhs, 0.25, max_relative = 1e-14);
        assert!(lower.is_violation());
        let (u, l) = weight_bounds(&tup, 0.5).unwrap();
        assert!(u.passed && l.passed);
    }
}
