use alloc::vec::Vec;

use num_traits::Float;

use super::{eval_matrix_spectral, eval_matrix_truncated, truncation_terms, PowerSeries, Rule};
use crate::check::{Context, InequalityCheck};
use crate::error::{Error, Result};
use crate::linalg::{check_normal, normal_eig, pow0, Matrix, ModulusPowers, C64, DECOMPOSITION_TOL};
use crate::pointwise::{check_open_interval, check_unit_interval};

/// Relative gap allowed between independent evaluation routes.
pub const ORACLE_TOL: f64 = 1e-8;

/// Largest dimension for which the commuting-pair check also runs the
/// truncated matrix series as a cross-check.
pub const TRUNCATED_CROSSCHECK_DIM: usize = 16;

/// Coefficients probed when a series must have nonnegative or dominating
/// coefficients.
pub const COEFFICIENT_PROBE: usize = 64;

// Admissible tolerance on commutators, relative to ‖T‖‖A‖.
const COMMUTATION_TOL: f64 = 1e-9;

// Generic complex weight used to find a common eigenbasis.
const SHARED_MIX: C64 = C64::new(0.754_877_666_246_692_7, 0.569_840_290_998_053_2);

/// Closed-form families of the operator series examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ExampleKind {
    /// `(1 + λ)^{-1}`, or `(1 + λ)^{-1} − 1` when the series must vanish at 0.
    ResolventPlus,
    /// `(1 − λ)^{-1}`, or `(1 − λ)^{-1} − 1`.
    ResolventMinus,
    /// `exp λ`, or `exp λ − 1`.
    Exp,
}

impl ExampleKind {
    pub const ALL: [ExampleKind; 3] = [ExampleKind::ResolventPlus, ExampleKind::ResolventMinus, ExampleKind::Exp];

    pub fn name(self) -> &'static str {
        match self {
            ExampleKind::ResolventPlus => "resolvent-plus",
            ExampleKind::ResolventMinus => "resolvent-minus",
            ExampleKind::Exp => "exp",
        }
    }

    fn vanishing_rule(self) -> Rule {
        match self {
            ExampleKind::ResolventPlus => Rule::GeomAltMinusOne,
            ExampleKind::ResolventMinus => Rule::GeomMinusOne,
            ExampleKind::Exp => Rule::ExpMinusOne,
        }
    }

    fn rule(self) -> Rule {
        match self {
            ExampleKind::ResolventPlus => Rule::GeomAlt,
            ExampleKind::ResolventMinus => Rule::Geom,
            ExampleKind::Exp => Rule::Exp,
        }
    }
}

fn precondition_traces(x: f64, y: f64, radius: f64) -> Result<()> {
    if !(x < radius && y < radius) {
        return Err(Error::PreconditionFailed("trace load must lie below the radius of convergence"));
    }
    Ok(())
}

fn relative_gap(a: f64, b: f64, scale: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 {
        0.0
    } else {
        d / a.abs().max(b.abs()).max(scale).max(1e-300)
    }
}

fn ensure_agreement(first: &InequalityCheck, second: &InequalityCheck) -> Result<()> {
    let scale = first.rhs.abs().max(second.rhs.abs());
    let gap = relative_gap(first.lhs, second.lhs, scale).max(relative_gap(first.rhs, second.rhs, 0.0));
    if !(gap <= ORACLE_TOL) {
        return Err(Error::OracleMismatch { gap });
    }
    Ok(())
}

/// `|tr f(N)|² ≤ tr f_a(|N|^{2α})·tr f_a(|N|^{2(1−α)})` for normal `N` and a
/// series with `f(0) = 0`, with both trace loads below the radius.
///
/// All three operator functions are evaluated as matrices by spectral
/// calculus.
pub fn check_normal_series(n: &Matrix, alpha: f64, s: &PowerSeries) -> Result<InequalityCheck> {
    check_open_interval(alpha)?;
    if s.start_index() != 1 {
        return Err(Error::NotApplicable("series must vanish at the origin"));
    }
    check_normal(n, DECOMPOSITION_TOL)?;
    let modulus = ModulusPowers::new(n)?;
    let (p, q) = (2.0 * alpha, 2.0 * (1.0 - alpha));
    precondition_traces(modulus.trace_pow(p), modulus.trace_pow(q), s.radius())?;
    let fa = s.absolute_series();
    let lhs = eval_matrix_spectral(s, n)?.trace().norm_sqr();
    let x = eval_matrix_spectral(&fa, &modulus.abs_pow(p).hermitian_part())?.trace().re;
    let y = eval_matrix_spectral(&fa, &modulus.abs_pow(q).hermitian_part())?.trace().re;
    Ok(InequalityCheck::new("normal-series", lhs, x * y).with_context(Context::new(n.dim()).with_alpha(alpha)))
}

/// The normal-series bound for a closed-form family, evaluated with matrix
/// inverses and exponentials and cross-checked against the generic series
/// route.
///
/// The left side uses the requested sign; the right side always uses
/// `X(1 − X)^{-1}` or `exp X − 1`.
pub fn check_normal_series_example(n: &Matrix, alpha: f64, which: ExampleKind) -> Result<InequalityCheck> {
    let series = PowerSeries::from_rule(which.vanishing_rule());
    let generic = check_normal_series(n, alpha, &series)?;
    let dim = n.dim();
    let id = Matrix::identity(dim);
    let modulus = ModulusPowers::new(n)?;
    let x = modulus.abs_pow(2.0 * alpha).hermitian_part();
    let y = modulus.abs_pow(2.0 * (1.0 - alpha)).hermitian_part();
    let (lhs, rhs) = match which {
        ExampleKind::ResolventPlus | ExampleKind::ResolventMinus => {
            let shifted = if which == ExampleKind::ResolventPlus { &id + n } else { &id - n };
            let lhs = (n * &shifted.inverse()?).trace().norm_sqr();
            let side = |p: &Matrix| -> Result<f64> { Ok((p * &(&id - p).inverse()?).trace().re) };
            (lhs, side(&x)? * side(&y)?)
        }
        ExampleKind::Exp => {
            let exp = PowerSeries::from_rule(Rule::Exp);
            let side = |p: &Matrix| -> Result<C64> { Ok((&eval_matrix_spectral(&exp, p)? - &id).trace()) };
            (side(n)?.norm_sqr(), side(&x)?.re * side(&y)?.re)
        }
    };
    let check = InequalityCheck::new("normal-series-example", lhs, rhs)
        .with_context(Context::new(dim).with_alpha(alpha).with_note(which.name()));
    ensure_agreement(&check, &generic)?;
    Ok(check)
}

/// A double-commuting normal pair `(T, A)` diagonalised in one basis.
#[derive(Debug, Clone)]
pub struct CommutingPair {
    t_values: Vec<C64>,
    a_values: Vec<C64>,
    product: Matrix,
}

impl CommutingPair {
    /// Fails with `NotNormal` or `NotDoubleCommuting` when the hypotheses
    /// fail within tolerance.
    pub fn new(t: &Matrix, a: &Matrix) -> Result<Self> {
        t.check_same_dim(a)?;
        check_normal(t, DECOMPOSITION_TOL)?;
        check_normal(a, DECOMPOSITION_TOL)?;
        let (nt, na) = (t.hs_norm(), a.hs_norm());
        let a_adj = a.adjoint();
        let commutator = (&(t * a) - &(a * t)).hs_norm().max((&(t * &a_adj) - &(&a_adj * t)).hs_norm());
        if commutator > COMMUTATION_TOL * nt * na {
            return Err(Error::NotDoubleCommuting { commutator });
        }
        let unit = |m: &Matrix, norm: f64| if norm > 0.0 { m.scale(1.0 / norm) } else { m.clone() };
        let mixed = &unit(t, nt) + &unit(a, na).scale_complex(SHARED_MIX);
        let basis = normal_eig(&mixed)?.basis;
        let u_adj = basis.adjoint();
        let mut values = [Vec::new(), Vec::new()];
        for (slot, (m, norm)) in values.iter_mut().zip([(t, nt), (a, na)]) {
            let rotated = &(&u_adj * m) * &basis;
            let diag = rotated.diagonal();
            let off = (&rotated - &Matrix::diag(&diag)).hs_norm();
            if off > 1e-8 * norm {
                return Err(Error::NotDoubleCommuting { commutator: off });
            }
            *slot = diag;
        }
        let [t_values, a_values] = values;
        let product = &(&a_adj * a) * t;
        Ok(Self { t_values, a_values, product })
    }

    pub fn dim(&self) -> usize {
        self.t_values.len()
    }

    /// The pair `(T, cA)`.
    pub fn with_weight_scale(&self, c: f64) -> Self {
        Self {
            t_values: self.t_values.clone(),
            a_values: self.a_values.iter().map(|a| a.scale(c)).collect(),
            product: self.product.scale(c * c),
        }
    }

    /// Eigenvalues of `|A|²T` in the shared basis.
    pub fn argument_values(&self) -> Vec<C64> {
        self.t_values.iter().zip(&self.a_values).map(|(t, a)| *t * a.norm_sqr()).collect()
    }

    /// Eigenvalues of `|A|²|T|^s`, with `0⁰ = 1`.
    pub fn power_values(&self, s: f64) -> Vec<f64> {
        self.t_values.iter().zip(&self.a_values).map(|(t, a)| a.norm_sqr() * pow0(t.norm(), s)).collect()
    }

    /// `tr(|A|²|T|^s)`.
    pub fn power_trace(&self, s: f64) -> f64 {
        self.power_values(s).iter().sum()
    }

    fn trace_of(s: &PowerSeries, values: &[f64]) -> Result<f64> {
        values.iter().map(|&x| s.value(C64::new(x, 0.0)).map(|v| v.re)).sum()
    }

    fn argument_trace(&self, s: &PowerSeries) -> Result<C64> {
        self.argument_values().into_iter().map(|z| s.value(z)).sum()
    }

    fn loads(&self, alpha: f64, radius: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        check_unit_interval(alpha)?;
        let x = self.power_values(2.0 * alpha);
        let y = self.power_values(2.0 * (1.0 - alpha));
        precondition_traces(x.iter().sum(), y.iter().sum(), radius)?;
        Ok((x, y))
    }

    /// `|tr f(|A|²T)|² ≤ tr f_a(|A|²|T|^{2α})·tr f_a(|A|²|T|^{2(1−α)})`.
    pub fn series_check(&self, s: &PowerSeries, alpha: f64) -> Result<InequalityCheck> {
        let (x, y) = self.loads(alpha, s.radius())?;
        let fa = s.absolute_series();
        let lhs = self.argument_trace(s)?.norm_sqr();
        let rhs = Self::trace_of(&fa, &x)? * Self::trace_of(&fa, &y)?;
        Ok(InequalityCheck::new("commuting-series", lhs, rhs).with_context(Context::new(self.dim()).with_alpha(alpha)))
    }

    /// Relative gap between `tr f(|A|²T)` from the shared eigenbasis and
    /// from the truncated matrix series.
    pub fn truncated_gap(&self, s: &PowerSeries) -> Result<f64> {
        let z = self.argument_values();
        let fa = s.absolute_series();
        let reach = z.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let terms = truncation_terms(&fa, reach, 1e-17)?;
        let spectral = self.argument_trace(s)?;
        let truncated = eval_matrix_truncated(s, &self.product, terms).trace();
        let magnitude: f64 = z.iter().map(|v| fa.value(C64::new(v.norm(), 0.0)).map(|w| w.re)).sum::<Result<f64>>()?;
        let d = (spectral - truncated).norm();
        Ok(if d == 0.0 { 0.0 } else { d / spectral.norm().max(magnitude).max(1e-300) })
    }

    /// `σ_h = [tr h(X)]^{1/2}[tr h(Y)]^{1/2} − |tr h(Z)|` for `X`, `Y` the
    /// two power loads and `Z = |A|²T`.
    fn bracket(&self, s: &PowerSeries, x: &[f64], y: &[f64]) -> Result<(f64, f64, C64)> {
        Ok((Self::trace_of(s, x)?, Self::trace_of(s, y)?, self.argument_trace(s)?))
    }
}

/// Series bound for a double-commuting normal pair with both trace loads
/// below the radius. For small dimensions the truncated matrix series is
/// evaluated as an independent route and must agree.
pub fn check_commuting_series(t: &Matrix, a: &Matrix, alpha: f64, s: &PowerSeries) -> Result<InequalityCheck> {
    let pair = CommutingPair::new(t, a)?;
    let check = pair.series_check(s, alpha)?;
    if pair.dim() <= TRUNCATED_CROSSCHECK_DIM {
        let gap = pair.truncated_gap(s)?;
        if !(gap <= ORACLE_TOL) {
            return Err(Error::OracleMismatch { gap });
        }
    }
    Ok(check)
}

/// The commuting-series bound for a closed-form family, evaluated with
/// matrix inverses and exponentials of `|A|²T` and `|A|²|T|^{2α}`, and
/// cross-checked against the shared-eigenbasis route.
pub fn check_commuting_series_example(t: &Matrix, a: &Matrix, alpha: f64, which: ExampleKind) -> Result<InequalityCheck> {
    let series = PowerSeries::from_rule(which.rule());
    let generic = CommutingPair::new(t, a)?.series_check(&series, alpha)?;
    let dim = t.dim();
    let id = Matrix::identity(dim);
    let aa = (&a.adjoint() * a).hermitian_part();
    let modulus = ModulusPowers::new(t)?;
    let z = &aa * t;
    let x = (&aa * &modulus.abs_pow(2.0 * alpha)).hermitian_part();
    let y = (&aa * &modulus.abs_pow(2.0 * (1.0 - alpha))).hermitian_part();
    let (lhs, rhs) = match which {
        ExampleKind::ResolventPlus | ExampleKind::ResolventMinus => {
            let shifted = if which == ExampleKind::ResolventPlus { &id + &z } else { &id - &z };
            let side = |p: &Matrix| -> Result<f64> { Ok((&id - p).inverse()?.trace().re) };
            (shifted.inverse()?.trace().norm_sqr(), side(&x)? * side(&y)?)
        }
        ExampleKind::Exp => {
            let exp = PowerSeries::from_rule(Rule::Exp);
            let side = |p: &Matrix| -> Result<C64> { Ok(eval_matrix_spectral(&exp, p)?.trace()) };
            (side(&z)?.norm_sqr(), side(&x)?.re * side(&y)?.re)
        }
    };
    let check = InequalityCheck::new("commuting-series-example", lhs, rhs)
        .with_context(Context::new(dim).with_alpha(alpha).with_note(which.name()));
    ensure_agreement(&check, &generic)?;
    Ok(check)
}

/// Bracket inequalities for two series `f`, `g` with nonnegative
/// coefficients: superadditivity `σ_{f+g} ≥ σ_f + σ_g`, and, when
/// `f` dominates `g` coefficientwise on the probed range, `σ_f ≥ σ_g`.
///
/// The dominance check is `None` when dominance fails on the probe.
pub fn check_series_brackets(
    t: &Matrix,
    a: &Matrix,
    alpha: f64,
    f: &PowerSeries,
    g: &PowerSeries,
) -> Result<(InequalityCheck, Option<InequalityCheck>)> {
    ensure_nonnegative(f, g)?;
    CommutingPair::new(t, a)?.bracket_checks(f, g, alpha)
}

fn ensure_nonnegative(f: &PowerSeries, g: &PowerSeries) -> Result<()> {
    if !f.has_nonnegative_coefficients(COEFFICIENT_PROBE) || !g.has_nonnegative_coefficients(COEFFICIENT_PROBE) {
        return Err(Error::NotApplicable("series must have nonnegative coefficients"));
    }
    Ok(())
}

impl CommutingPair {
    /// The two bracket checks of [`check_series_brackets`] for this pair.
    pub fn bracket_checks(
        &self,
        f: &PowerSeries,
        g: &PowerSeries,
        alpha: f64,
    ) -> Result<(InequalityCheck, Option<InequalityCheck>)> {
        ensure_nonnegative(f, g)?;
        let (x, y) = self.loads(alpha, f.radius().min(g.radius()))?;
        let (fx, fy, fz) = self.bracket(f, &x, &y)?;
        let (gx, gy, gz) = self.bracket(g, &x, &y)?;
        let root = |u: f64, v: f64| u.max(0.0).sqrt() * v.max(0.0).sqrt();
        let sigma_f = root(fx, fy) - fz.norm();
        let sigma_g = root(gx, gy) - gz.norm();
        let joint = root(fx + gx, fy + gy);
        let sigma_sum = joint - (fz + gz).norm();
        let (bf, bg) = (root(fx, fy), root(gx, gy));
        let ctx = Context::new(self.dim()).with_alpha(alpha);
        let superadditive =
            InequalityCheck::at_least("series-brackets/superadditive", sigma_sum, sigma_f + sigma_g, joint.max(bf + bg))
                .with_context(ctx.clone());
        let dominates = f.coefficients().zip(g.coefficients()).take(COEFFICIENT_PROBE).all(|(p, q)| p.re >= q.re);
        let dominance = dominates
            .then(|| InequalityCheck::at_least("series-brackets/dominance", sigma_f, sigma_g, bf.max(bg)).with_context(ctx));
        Ok((superadditive, dominance))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_double_commuting_pair, gen_matrix, scale_to_trace_budget, OperatorClass, SeedPlan};
    use crate::series::SeriesCatalog;
    use crate::trace_suite::check_normal_trace;
    use approx::assert_relative_eq;

    fn series(name: &str) -> PowerSeries {
        SeriesCatalog::standard().require(name).unwrap().clone()
    }

    fn scalar(x: f64) -> Matrix {
        Matrix::real_diag(&[x])
    }

    #[test]
    fn identity_series_reduces_to_normal_trace() {
        let id = series("identity");
        for k in 0..5 {
            let n = gen_matrix(4, OperatorClass::Normal, SeedPlan::new(11, k));
            for alpha in [0.2, 0.5, 0.9] {
                let c = check_normal_series(&n, alpha, &id);
                let (powers, _) = check_normal_trace(&n, alpha).unwrap();
                match c {
                    Ok(c) => {
                        assert_relative_eq!(c.lhs, powers.lhs, max_relative = 1e-10);
                        assert_relative_eq!(c.rhs, powers.rhs, max_relative = 1e-10);
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn scalar_exp_minus_one_is_equality() {
        let c = check_normal_series(&scalar(0.25), 0.5, &series("exp-minus-one")).unwrap();
        let v = (0.25_f64.exp() - 1.0).powi(2);
        assert_relative_eq!(c.lhs, v, max_relative = 1e-14);
        assert!((c.lhs - 0.080_67).abs() < 1e-5);
        assert!(c.rel_slack.abs() <= 1e-8);
    }

    #[test]
    fn zero_operator_gives_zero_sides() {
        let c = check_normal_series(&Matrix::zeros(3), 0.3, &series("sinh")).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        for which in ExampleKind::ALL {
            let c = check_normal_series_example(&Matrix::zeros(2), 0.5, which).unwrap();
            assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        }
    }

    #[test]
    fn normal_series_rejects_bad_inputs() {
        let n = scalar(0.25);
        assert!(matches!(check_normal_series(&n, 0.5, &series("exp")), Err(Error::NotApplicable(_))));
        assert!(matches!(check_normal_series(&n, 0.0, &series("sinh")), Err(Error::InvalidParameter(_))));
        let heavy = Matrix::real_diag(&[0.6, 0.5]);
        assert!(matches!(check_normal_series(&heavy, 0.5, &series("geom-minus-one")), Err(Error::PreconditionFailed(_))));
        let nil = Matrix::from_real_rows(&[[0.0, 0.1], [0.0, 0.0]]).unwrap();
        assert!(matches!(check_normal_series(&nil, 0.5, &series("sinh")), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn resolvent_example_scalar_values() {
        let c = check_normal_series_example(&scalar(0.25), 0.5, ExampleKind::ResolventPlus).unwrap();
        assert_relative_eq!(c.lhs, 0.04, max_relative = 1e-14);
        assert_relative_eq!(c.rhs, 1.0 / 9.0, max_relative = 1e-14);
        let m = check_normal_series_example(&scalar(0.25), 0.5, ExampleKind::ResolventMinus).unwrap();
        assert_relative_eq!(m.lhs, 1.0 / 9.0, max_relative = 1e-14);
        assert!(m.is_equality(1e-12));
        let e = check_normal_series_example(&scalar(0.25), 0.5, ExampleKind::Exp).unwrap();
        assert_relative_eq!(e.lhs, (0.25_f64.exp() - 1.0).powi(2), max_relative = 1e-14);
        assert!(e.is_equality(1e-8));
    }

    #[test]
    fn normal_series_examples_hold_on_random_draws() {
        for k in 0..10 {
            let raw = gen_matrix(5, OperatorClass::Normal, SeedPlan::new(5, k));
            for alpha in [0.25, 0.5, 0.8] {
                let n = scale_to_trace_budget(&raw, alpha, 1.0, 0.8).unwrap();
                for which in ExampleKind::ALL {
                    let c = check_normal_series_example(&n, alpha, which).unwrap();
                    assert!(c.rel_slack >= -1e-9, "{which:?}: {c:?}");
                }
            }
        }
    }

    #[test]
    fn commuting_series_with_identity_weight_matches_normal_series() {
        let s = series("exp-minus-one");
        for k in 0..5 {
            let n = gen_matrix(4, OperatorClass::Normal, SeedPlan::new(17, k));
            let id = Matrix::identity(4);
            let a = check_commuting_series(&n, &id, 0.4, &s).unwrap();
            let b = check_normal_series(&n, 0.4, &s).unwrap();
            assert_relative_eq!(a.lhs, b.lhs, max_relative = 1e-10);
            assert_relative_eq!(a.rhs, b.rhs, max_relative = 1e-10);
        }
    }

    #[test]
    fn commuting_series_scalar_equality_and_zero_t() {
        let (a, t) = (C64::new(0.6, -0.3), 0.8);
        let c = check_commuting_series(&scalar(t), &Matrix::diag(&[a]), 0.5, &series("exp")).unwrap();
        assert_relative_eq!(c.lhs, (a.norm_sqr() * t).exp().powi(2), max_relative = 1e-14);
        assert!(c.rel_slack.abs() <= 1e-8);
        let n = 3;
        let a = gen_matrix(n, OperatorClass::Normal, SeedPlan::new(3, 0));
        let c = check_commuting_series(&Matrix::zeros(n), &a, 0.5, &series("exp")).unwrap();
        assert_relative_eq!(c.lhs, 9.0, max_relative = 1e-14);
        assert_relative_eq!(c.rhs, 9.0, max_relative = 1e-14);
    }

    #[test]
    fn commuting_series_rejects_non_commuting_pair() {
        let t = Matrix::real_diag(&[1.0, 2.0]);
        let a = Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(matches!(check_commuting_series(&t, &a, 0.5, &series("exp")), Err(Error::NotDoubleCommuting { .. })));
    }

    #[test]
    fn commuting_series_holds_on_random_pairs() {
        let names = ["exp", "cos", "sinh", "geom-alt", "log-one-plus-inv", "artanh", "arcsin", "gauss-2F1"];
        for k in 0..12 {
            let (t, a) = gen_double_commuting_pair(4, SeedPlan::new(23, k));
            let a = a.scale(0.45);
            for name in names {
                for alpha in [0.0, 0.3, 0.5, 1.0] {
                    match check_commuting_series(&t, &a, alpha, &series(name)) {
                        Ok(c) => assert!(c.rel_slack >= -1e-9, "{name} {c:?}"),
                        Err(e) => assert!(e.is_precondition(), "{name}: {e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn truncated_route_agrees() {
        let (t, a) = gen_double_commuting_pair(5, SeedPlan::new(29, 1));
        let pair = CommutingPair::new(&t, &a.scale(0.5)).unwrap();
        for name in ["exp", "geom", "log-one-minus-inv", "cos"] {
            assert!(pair.truncated_gap(&series(name)).unwrap() < 1e-12, "{name}");
        }
    }

    #[test]
    fn commuting_examples_scalar_and_random() {
        let c = check_commuting_series_example(&scalar(0.5), &scalar(0.5), 0.5, ExampleKind::ResolventMinus).unwrap();
        assert_relative_eq!(c.lhs, (1.0_f64 / 0.875).powi(2), max_relative = 1e-14);
        assert!(c.is_equality(1e-12));
        let c = check_commuting_series_example(&Matrix::zeros(2), &Matrix::identity(2), 0.5, ExampleKind::Exp).unwrap();
        assert_relative_eq!(c.lhs, 4.0, max_relative = 1e-14);
        for k in 0..6 {
            let (t, a) = gen_double_commuting_pair(4, SeedPlan::new(31, k));
            let a = a.scale(0.4);
            for which in ExampleKind::ALL {
                match check_commuting_series_example(&t, &a, 0.3, which) {
                    Ok(c) => assert!(c.rel_slack >= -1e-9),
                    Err(e) => assert!(e.is_precondition(), "{e}"),
                }
            }
        }
    }

    #[test]
    fn sinh_cosh_brackets_sum_to_exp() {
        let (t, a) = gen_double_commuting_pair(3, SeedPlan::new(37, 0));
        let (sup, dom) = check_series_brackets(&t, &a, 0.4, &series("sinh"), &series("cosh")).unwrap();
        assert!(sup.passes(&Default::default()), "{sup:?}");
        assert!(dom.is_none());
        let pair = CommutingPair::new(&t, &a).unwrap();
        let (x, y) = pair.loads(0.4, f64::INFINITY).unwrap();
        let (ex, ey, ez) = pair.bracket(&series("exp"), &x, &y).unwrap();
        assert_relative_eq!(sup.lhs.max(sup.rhs), ex.sqrt() * ey.sqrt() - ez.norm(), max_relative = 1e-10);
    }

    #[test]
    fn geometric_dominates_logarithm() {
        let (t, a) = gen_double_commuting_pair(3, SeedPlan::new(41, 0));
        let a = a.scale(0.3);
        let (sup, dom) = check_series_brackets(&t, &a, 0.5, &series("geom"), &series("log-one-minus-inv")).unwrap();
        let dom = dom.expect("geometric coefficients dominate");
        assert!(sup.passes(&Default::default()));
        assert!(dom.passes(&Default::default()), "{dom:?}");
        let (_, none) = check_series_brackets(&t, &a, 0.5, &series("log-one-minus-inv"), &series("geom")).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn zero_series_brackets_are_equal() {
        let (t, a) = gen_double_commuting_pair(3, SeedPlan::new(43, 0));
        let (sup, dom) = check_series_brackets(&t, &a, 0.5, &series("exp"), &series("zero")).unwrap();
        assert!(sup.is_equality(1e-12), "{sup:?}");
        assert!(dom.unwrap().rel_slack >= 0.0);
        assert!(matches!(
            check_series_brackets(&t, &a, 0.5, &series("cos"), &series("exp")),
            Err(Error::NotApplicable(_))
        ));
    }
}
