//! Trace inequalities derived from Kato's inequality: the modulus-power
//! bound on `|tr T|`, basis-sum bounds, product and normal variants.

use alloc::vec::Vec;

use num_traits::Float;

use crate::check::{Context, InequalityCheck};
use crate::error::{Error, Result};
use crate::linalg::{check_normal, pow0, Matrix, ModulusPowers, PowerSum, C64, DECOMPOSITION_TOL};
use crate::pointwise::{check_open_interval, check_unit_interval};

pub use crate::registry::{sharpness_search, Sharpness};


/// Exponent grid for sweeps and infima over `α`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<f64>", into = "Vec<f64>"))]
pub struct AlphaGrid {
    points: Vec<f64>,
}

impl AlphaGrid {
    /// Strictly increasing points in `[0, 1]`.
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("alpha grid is empty"));
        }
        if points.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(Error::InvalidParameter("alpha grid points must lie in [0, 1]"));
        }
        if points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter("alpha grid must be strictly increasing"));
        }
        Ok(Self { points })
    }

    /// `k/steps` for `k = 0..=steps`.
    pub fn uniform(steps: usize) -> Self {
        let steps = steps.max(1);
        Self { points: (0..=steps).map(|k| k as f64 / steps as f64).collect() }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Points strictly inside `(0, 1)`.
    pub fn interior(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().copied().filter(|&a| a > 0.0 && a < 1.0)
    }
}

impl Default for AlphaGrid {
    /// `{0, 0.05, …, 1}`.
    fn default() -> Self {
        Self::uniform(20)
    }
}

impl TryFrom<Vec<f64>> for AlphaGrid {
    type Error = Error;

    fn try_from(points: Vec<f64>) -> Result<Self> {
        Self::new(points)
    }
}

impl From<AlphaGrid> for Vec<f64> {
    fn from(grid: AlphaGrid) -> Self {
        grid.points
    }
}

fn endpoint_context(n: usize, alpha: f64) -> Context {
    let ctx = Context::new(n).with_alpha(alpha);
    if alpha == 0.0 || alpha == 1.0 {
        ctx.with_note("alpha endpoint, zeroth power read as identity")
    } else {
        ctx
    }
}

fn same_dims(ms: &[&Matrix]) -> Result<()> {
    let n = ms[0].dim();
    for m in &ms[1..] {
        if m.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.dim() });
        }
    }
    Ok(())
}

fn check_basis(basis: &Matrix) -> Result<()> {
    let deviation = basis.unitary_defect();
    if deviation > DECOMPOSITION_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

/// `|tr T|² ≤ tr(|T|^{2α})·tr(|T*|^{2(1−α)})`.
#[derive(Debug, Clone)]
pub struct TraceKato {
    n: usize,
    trace: C64,
    sigma: PowerSum,
}

impl TraceKato {
    pub fn new(t: &Matrix) -> Result<Self> {
        let modulus = ModulusPowers::new(t)?;
        let ones = alloc::vec![1.0; t.dim()];
        Ok(Self { n: t.dim(), trace: t.trace(), sigma: PowerSum::new(modulus.singular_values().to_vec(), ones) })
    }

    pub fn at(&self, alpha: f64) -> Result<InequalityCheck> {
        check_unit_interval(alpha)?;
        let rhs = self.sigma.eval(2.0 * alpha) * self.sigma.eval(2.0 * (1.0 - alpha));
        Ok(InequalityCheck::new("trace-kato", self.trace.norm_sqr(), rhs).with_context(endpoint_context(self.n, alpha)))
    }

    /// `|tr T|² ≤ tr|T|·tr|T*|`, the `α = 1/2` case evaluated on its own.
    pub fn half(&self) -> InequalityCheck {
        let tr_abs = self.sigma.eval(1.0);
        InequalityCheck::new("trace-kato-half", self.trace.norm_sqr(), tr_abs * tr_abs)
            .with_context(Context::new(self.n).with_alpha(0.5))
    }
}

pub fn check_trace_kato(t: &Matrix, alpha: f64) -> Result<InequalityCheck> {
    TraceKato::new(t)?.at(alpha)
}

/// Column norms `‖T bᵢ‖` and `‖T* bᵢ‖` over an orthonormal basis.
#[derive(Debug, Clone)]
pub struct BasisNorms {
    n: usize,
    trace: f64,
    forward: Vec<f64>,
    backward: Vec<f64>,
}

impl BasisNorms {
    pub fn new(t: &Matrix, basis: &Matrix) -> Result<Self> {
        same_dims(&[t, basis])?;
        check_basis(basis)?;
        let adj = t.adjoint();
        let tb = t * basis;
        let ab = &adj * basis;
        Ok(Self {
            n: t.dim(),
            trace: t.trace().norm(),
            forward: tb_column_norms(&tb),
            backward: tb_column_norms(&ab),
        })
    }

    /// `Σᵢ ‖T bᵢ‖^α ‖T* bᵢ‖^{1−α}` with `0^0 = 1`.
    pub fn mixed_sum(&self, alpha: f64) -> f64 {
        self.forward.iter().zip(&self.backward).map(|(&f, &b)| pow0(f, alpha) * pow0(b, 1.0 - alpha)).sum()
    }

    pub fn at(&self, alpha: f64) -> Result<InequalityCheck> {
        check_unit_interval(alpha)?;
        Ok(InequalityCheck::new("basis-bound", self.trace, self.mixed_sum(alpha))
            .with_context(endpoint_context(self.n, alpha)))
    }

    /// `|tr T| ≤ Σᵢ √(‖T bᵢ‖·‖T* bᵢ‖)`.
    pub fn cbs(&self) -> InequalityCheck {
        let rhs = self.forward.iter().zip(&self.backward).map(|(&f, &b)| (f * b).sqrt()).sum();
        InequalityCheck::new("cbs-corollary", self.trace, rhs).with_context(Context::new(self.n))
    }

    /// Smallest mixed sum over the grid, refined by golden-section search
    /// between the neighbours of the best grid point. The mixed sum is
    /// convex in `α` on `(0, 1)`.
    pub fn infimum(&self, grid: &AlphaGrid) -> (f64, f64) {
        let pts = grid.points();
        let (mut best_k, mut best) = (0, f64::INFINITY);
        for (k, &a) in pts.iter().enumerate() {
            let v = self.mixed_sum(a);
            if v < best {
                best = v;
                best_k = k;
            }
        }
        let mut best_alpha = pts[best_k];
        let lo = if best_k > 0 { pts[best_k - 1] } else { pts[0] };
        let hi = if best_k + 1 < pts.len() { pts[best_k + 1] } else { pts[best_k] };
        if hi > lo {
            let (a, v) = golden_section(|a| self.mixed_sum(a), lo, hi, 20);
            if v < best {
                best = v;
                best_alpha = a;
            }
        }
        (best_alpha, best)
    }

    /// `|tr T| ≤ inf_α Σ‖Tbᵢ‖^α‖T*bᵢ‖^{1−α}` and
    /// `inf_α (…) ≤ min(Σ‖Tbᵢ‖, Σ‖T*bᵢ‖)`.
    pub fn inf_bound(&self, grid: &AlphaGrid) -> (InequalityCheck, InequalityCheck) {
        let (alpha, inf) = self.infimum(grid);
        let ctx = Context::new(self.n).with_alpha(alpha);
        let f: f64 = self.forward.iter().sum();
        let b: f64 = self.backward.iter().sum();
        (
            InequalityCheck::new("basis-inf-bound/trace", self.trace, inf).with_context(ctx.clone()),
            InequalityCheck::new("basis-inf-bound/min", inf, f.min(b)).with_context(ctx),
        )
    }
}

fn tb_column_norms(m: &Matrix) -> Vec<f64> {
    let n = m.dim();
    (0..n).map(|j| (0..n).map(|i| m[(i, j)].norm_sqr()).sum::<f64>().sqrt()).collect()
}

// Minimiser of a unimodal function on [lo, hi].
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iterations: usize) -> (f64, f64) {
    let r = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iterations {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

pub fn check_basis_bound(t: &Matrix, basis: &Matrix, alpha: f64) -> Result<InequalityCheck> {
    BasisNorms::new(t, basis)?.at(alpha)
}

/// Both halves of the infimum bound; see [`BasisNorms::inf_bound`].
pub fn check_basis_inf_bound(
    t: &Matrix,
    basis: &Matrix,
    grid: &AlphaGrid,
) -> Result<(InequalityCheck, InequalityCheck)> {
    Ok(BasisNorms::new(t, basis)?.inf_bound(grid))
}

pub fn check_cbs_corollary(t: &Matrix, basis: &Matrix) -> Result<InequalityCheck> {
    Ok(BasisNorms::new(t, basis)?.cbs())
}

/// For normal `N`: `|tr N|² ≤ tr(|N|^{2α})·tr(|N|^{2(1−α)})` and
/// `|tr N| ≤ tr|N|`.
#[derive(Debug, Clone)]
pub struct NormalTrace {
    inner: TraceKato,
}

impl NormalTrace {
    pub fn new(n: &Matrix) -> Result<Self> {
        check_normal(n, DECOMPOSITION_TOL)?;
        Ok(Self { inner: TraceKato::new(n)? })
    }

    pub fn at(&self, alpha: f64) -> Result<(InequalityCheck, InequalityCheck)> {
        check_open_interval(alpha)?;
        let t = &self.inner;
        let rhs = t.sigma.eval(2.0 * alpha) * t.sigma.eval(2.0 * (1.0 - alpha));
        let ctx = Context::new(t.n).with_alpha(alpha);
        Ok((
            InequalityCheck::new("normal-trace/powers", t.trace.norm_sqr(), rhs).with_context(ctx.clone()),
            InequalityCheck::new("normal-trace/modulus", t.trace.norm(), t.sigma.eval(1.0)).with_context(ctx),
        ))
    }
}

pub fn check_normal_trace(n: &Matrix, alpha: f64) -> Result<(InequalityCheck, InequalityCheck)> {
    NormalTrace::new(n)?.at(alpha)
}

/// `|tr(AB*T)|²` against `tr(|A*|²|T|^{2α})·tr(|B*|²|T*|^{2(1−α)})` and the
/// `α`-free minimum form with `|T|²`, `|T*|²`.
#[derive(Debug, Clone)]
pub struct ProductTrace {
    n: usize,
    lhs: f64,
    abs: PowerSum,
    adj: PowerSum,
    min_rhs: f64,
}

impl ProductTrace {
    pub fn new(t: &Matrix, a: &Matrix, b: &Matrix) -> Result<Self> {
        same_dims(&[t, a, b])?;
        let modulus = ModulusPowers::new(t)?;
        let (a_adj, b_adj, t_adj) = (a.adjoint(), b.adjoint(), t.adjoint());
        let aa = (a * &a_adj).hermitian_part();
        let bb = (b * &b_adj).hermitian_part();
        let lhs = (&(a * &b_adj) * t).trace().norm_sqr();
        let tt = &t_adj * t;
        let t_tt = t * &t_adj;
        let via_b = b.hs_norm().powi(2) * aa.trace_of_product(&tt).re;
        let via_a = a.hs_norm().powi(2) * bb.trace_of_product(&t_tt).re;
        let min_rhs = via_b.min(via_a);
        Ok(Self { n: t.dim(), lhs, abs: modulus.abs_trace_sum(&aa), adj: modulus.adj_abs_trace_sum(&bb), min_rhs })
    }

    fn rhs(&self, alpha: f64) -> f64 {
        self.abs.eval(2.0 * alpha) * self.adj.eval(2.0 * (1.0 - alpha))
    }

    pub fn at(&self, alpha: f64) -> Result<(InequalityCheck, InequalityCheck)> {
        check_unit_interval(alpha)?;
        let ctx = endpoint_context(self.n, alpha);
        Ok((
            InequalityCheck::new("product-trace/powers", self.lhs, self.rhs(alpha)).with_context(ctx.clone()),
            InequalityCheck::new("product-trace/min", self.lhs, self.min_rhs).with_context(ctx),
        ))
    }

    /// `|tr(AB*T)|² ≤ tr(|A*|²|T|)·tr(|B*|²|T*|)`.
    pub fn half(&self) -> InequalityCheck {
        InequalityCheck::new("corollary-half", self.lhs, self.abs.eval(1.0) * self.adj.eval(1.0))
            .with_context(Context::new(self.n).with_alpha(0.5))
    }
}

pub fn check_product_trace(
    t: &Matrix,
    a: &Matrix,
    b: &Matrix,
    alpha: f64,
) -> Result<(InequalityCheck, InequalityCheck)> {
    ProductTrace::new(t, a, b)?.at(alpha)
}

pub fn check_corollary_half(t: &Matrix, a: &Matrix, b: &Matrix) -> Result<InequalityCheck> {
    Ok(ProductTrace::new(t, a, b)?.half())
}

/// Product bounds for normal `N`, where `|N*| = |N|`.
#[derive(Debug, Clone)]
pub struct NormalProduct {
    n: usize,
    lhs: f64,
    a_form: PowerSum,
    b_form: PowerSum,
    min_rhs: f64,
}

impl NormalProduct {
    pub fn new(n: &Matrix, a: &Matrix, b: &Matrix) -> Result<Self> {
        same_dims(&[n, a, b])?;
        check_normal(n, DECOMPOSITION_TOL)?;
        let modulus = ModulusPowers::new(n)?;
        let aa = (a * &a.adjoint()).hermitian_part();
        let bb = (b * &b.adjoint()).hermitian_part();
        let nn = &n.adjoint() * n;
        let lhs = (&(a * &b.adjoint()) * n).trace().norm_sqr();
        let via_b = b.hs_norm().powi(2) * aa.trace_of_product(&nn).re;
        let via_a = a.hs_norm().powi(2) * bb.trace_of_product(&nn).re;
        Ok(Self {
            n: n.dim(),
            lhs,
            a_form: modulus.abs_trace_sum(&aa),
            b_form: modulus.abs_trace_sum(&bb),
            min_rhs: via_b.min(via_a),
        })
    }

    /// Power form at `α`, the square-root form, and the minimum form.
    pub fn at(&self, alpha: f64) -> Result<(InequalityCheck, InequalityCheck, InequalityCheck)> {
        check_unit_interval(alpha)?;
        let ctx = endpoint_context(self.n, alpha);
        let powers = self.a_form.eval(2.0 * alpha) * self.b_form.eval(2.0 * (1.0 - alpha));
        let half = self.a_form.eval(1.0) * self.b_form.eval(1.0);
        Ok((
            InequalityCheck::new("normal-product/powers", self.lhs, powers).with_context(ctx.clone()),
            InequalityCheck::new("normal-product/half", self.lhs, half).with_context(ctx.clone()),
            InequalityCheck::new("normal-product/min", self.lhs, self.min_rhs).with_context(ctx),
        ))
    }
}

pub fn check_normal_product(
    n: &Matrix,
    a: &Matrix,
    b: &Matrix,
    alpha: f64,
) -> Result<(InequalityCheck, InequalityCheck, InequalityCheck)> {
    NormalProduct::new(n, a, b)?.at(alpha)
}

/// Single-weight forms: `|tr(|B|²T)|²` and `|tr(B²T)|²` against products of
/// weighted modulus-power traces, plus the normal-operator forms when `T`
/// is normal.
#[derive(Debug, Clone)]
pub struct RemarkVariants {
    n: usize,
    modulus_weighted: f64,
    square_weighted: f64,
    b_abs: PowerSum,
    b_adj: PowerSum,
    bstar_abs: PowerSum,
    normal: bool,
}

impl RemarkVariants {
    pub fn new(t: &Matrix, b: &Matrix) -> Result<Self> {
        same_dims(&[t, b])?;
        let modulus = ModulusPowers::new(t)?;
        let b_adj_m = b.adjoint();
        let bb = (&b_adj_m * b).hermitian_part();
        let bstar = (b * &b_adj_m).hermitian_part();
        Ok(Self {
            n: t.dim(),
            modulus_weighted: bb.trace_of_product(t).norm_sqr(),
            square_weighted: (b * b).trace_of_product(t).norm_sqr(),
            b_abs: modulus.abs_trace_sum(&bb),
            b_adj: modulus.adj_abs_trace_sum(&bb),
            bstar_abs: modulus.abs_trace_sum(&bstar),
            normal: check_normal(t, DECOMPOSITION_TOL).is_ok(),
        })
    }

    /// The two general forms and, when `T` is normal, the two normal forms
    /// (which use `|T|` in place of `|T*|`).
    #[allow(clippy::type_complexity)]
    pub fn at(
        &self,
        alpha: f64,
    ) -> Result<(InequalityCheck, InequalityCheck, Option<InequalityCheck>, Option<InequalityCheck>)> {
        check_unit_interval(alpha)?;
        let (s, r) = (2.0 * alpha, 2.0 * (1.0 - alpha));
        let ctx = endpoint_context(self.n, alpha);
        let modulus_form = InequalityCheck::new(
            "remark-variants/modulus-weight",
            self.modulus_weighted,
            self.b_abs.eval(s) * self.b_adj.eval(r),
        )
        .with_context(ctx.clone());
        let square_form = InequalityCheck::new(
            "remark-variants/square-weight",
            self.square_weighted,
            self.bstar_abs.eval(s) * self.b_adj.eval(r),
        )
        .with_context(ctx.clone());
        let (normal_modulus, normal_square) = if self.normal {
            (
                Some(
                    InequalityCheck::new(
                        "remark-variants/normal-modulus-weight",
                        self.modulus_weighted,
                        self.b_abs.eval(s) * self.b_abs.eval(r),
                    )
                    .with_context(ctx.clone()),
                ),
                Some(
                    InequalityCheck::new(
                        "remark-variants/normal-square-weight",
                        self.square_weighted,
                        self.bstar_abs.eval(s) * self.b_abs.eval(r),
                    )
                    .with_context(ctx),
                ),
            )
        } else {
            (None, None)
        };
        Ok((modulus_form, square_form, normal_modulus, normal_square))
    }
}

#[allow(clippy::type_complexity)]
pub fn check_remark_variants(
    t: &Matrix,
    b: &Matrix,
    alpha: f64,
) -> Result<(InequalityCheck, InequalityCheck, Option<InequalityCheck>, Option<InequalityCheck>)> {
    RemarkVariants::new(t, b)?.at(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn nil() -> Matrix {
        Matrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert_eq!(AlphaGrid::default().points().len(), 21);
        assert_eq!(AlphaGrid::default().interior().count(), 19);
        assert!(AlphaGrid::new(alloc::vec![0.2, 0.1]).is_err());
        assert!(AlphaGrid::new(alloc::vec![0.0, 1.5]).is_err());
        assert!(AlphaGrid::new(alloc::vec![]).is_err());
    }

    #[test]
    fn trace_kato_examples() {
        let c = check_trace_kato(&Matrix::identity(3), 0.3).unwrap();
        assert_eq!((c.lhs, c.rhs), (9.0, 9.0));
        let c = check_trace_kato(&nil(), 0.5).unwrap();
        assert_eq!(c.lhs, 0.0);
        assert_relative_eq!(c.rhs, 1.0, max_relative = 1e-14);
        let z = Matrix::scalar(C64::new(0.3, -1.2));
        for alpha in [0.0, 0.1, 0.5, 0.77, 1.0] {
            assert!(check_trace_kato(&z, alpha).unwrap().is_equality(1e-14));
        }
        assert!(check_trace_kato(&z, 0.0).unwrap().context.note.is_some());
    }

    #[test]
    fn basis_bound_examples() {
        let id = Matrix::identity(2);
        for alpha in [0.0, 0.4, 1.0] {
            let c = check_basis_bound(&Matrix::real_diag(&[2.0, 3.0]), &id, alpha).unwrap();
            assert_relative_eq!(c.lhs, 5.0);
            assert_relative_eq!(c.rhs, 5.0, max_relative = 1e-15);
        }
        let c = check_basis_bound(&nil(), &id, 0.5).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        let c = check_basis_bound(&Matrix::zeros(2), &id, 0.5).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        assert!(matches!(
            check_basis_bound(&nil(), &Matrix::real_diag(&[1.0, 2.0]), 0.5),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn cbs_matches_basis_bound_at_half() {
        let id = Matrix::identity(2);
        for t in [Matrix::real_diag(&[2.0, 3.0]), nil(), Matrix::zeros(2)] {
            let a = check_basis_bound(&t, &id, 0.5).unwrap();
            let b = check_cbs_corollary(&t, &id).unwrap();
            assert_relative_eq!(a.rhs, b.rhs, max_relative = 1e-15);
            assert_eq!(a.lhs, b.lhs);
        }
    }

    #[test]
    fn inf_bound_examples() {
        let grid = AlphaGrid::default();
        let (tr, min) = check_basis_inf_bound(&nil(), &Matrix::identity(2), &grid).unwrap();
        assert!(tr.rhs.abs() < 1e-12);
        assert_eq!(min.rhs, 1.0);
        assert!(tr.passed && min.passed);
        let d = Matrix::diag(&[C64::new(1.0, 1.0), C64::new(-2.0, 0.0)]);
        let (tr, min) = check_basis_inf_bound(&d, &Matrix::identity(2), &grid).unwrap();
        let total = 2.0_f64.sqrt() + 2.0;
        assert_relative_eq!(tr.rhs, total, max_relative = 1e-14);
        assert_relative_eq!(min.rhs, total, max_relative = 1e-14);
        let (tr, min) = check_basis_inf_bound(&Matrix::zeros(2), &Matrix::identity(2), &grid).unwrap();
        assert_eq!((tr.lhs, tr.rhs, min.rhs), (0.0, 0.0, 0.0));
    }

    #[test]
    fn golden_section_finds_minimum() {
        let (x, v) = golden_section(|a| (a - 0.37) * (a - 0.37), 0.0, 1.0, 40);
        assert!((x - 0.37).abs() < 1e-6 && v < 1e-12);
    }

    #[test]
    fn normal_trace_examples() {
        let (p, m) = check_normal_trace(&Matrix::real_diag(&[1.0, -1.0]), 0.3).unwrap();
        assert_eq!(p.lhs, 0.0);
        assert_relative_eq!(p.rhs, 4.0, max_relative = 1e-14);
        assert_relative_eq!(m.rhs, 2.0, max_relative = 1e-14);
        let (_, m) = check_normal_trace(&Matrix::real_diag(&[0.5, 2.0]), 0.3).unwrap();
        assert!(m.is_equality(1e-14));
        let (p, _) = check_normal_trace(&Matrix::scalar(C64::new(0.0, 2.0)), 0.8).unwrap();
        assert!(p.is_equality(1e-14));
        assert!(matches!(check_normal_trace(&nil(), 0.5), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn product_trace_examples() {
        let id = Matrix::identity(2);
        let t = Matrix::from_rows(&[[C64::new(1.0, 1.0), C64::new(0.5, 0.0)], [C64::new(0.0, -1.0), C64::new(2.0, 0.0)]])
            .unwrap();
        for alpha in [0.0, 0.25, 0.5, 1.0] {
            let (p, _) = check_product_trace(&t, &id, &id, alpha).unwrap();
            let k = check_trace_kato(&t, alpha).unwrap();
            assert_relative_eq!(p.lhs, k.lhs, max_relative = 1e-12);
            assert_relative_eq!(p.rhs, k.rhs, max_relative = 1e-12);
        }
        let (a, b, t) = (C64::new(0.5, 1.0), C64::new(-2.0, 0.3), C64::new(0.1, 0.7));
        let (p, _) = check_product_trace(&Matrix::scalar(t), &Matrix::scalar(a), &Matrix::scalar(b), 0.35).unwrap();
        assert!(p.is_equality(1e-13));
        let (_, m) = check_product_trace(&id, &id, &id, 0.5).unwrap();
        assert_eq!(m.lhs, 4.0);
        assert!(m.is_equality(1e-14));
        assert!(matches!(check_product_trace(&id, &Matrix::identity(3), &id, 0.5), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn corollary_half_matches_product_at_half() {
        let t = nil();
        let a = Matrix::from_real_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
        let b = Matrix::from_real_rows(&[[0.5, 0.0], [1.0, -1.0]]).unwrap();
        let (p, _) = check_product_trace(&t, &a, &b, 0.5).unwrap();
        let h = check_corollary_half(&t, &a, &b).unwrap();
        assert_relative_eq!(p.rhs, h.rhs, max_relative = 1e-14);
    }

    #[test]
    fn normal_product_examples() {
        let n = Matrix::real_diag(&[1.0, -1.0]);
        let id = Matrix::identity(2);
        let (_, half, min) = check_normal_product(&n, &id, &id, 0.5).unwrap();
        assert_eq!(half.lhs, 0.0);
        assert_relative_eq!(half.rhs, 4.0, max_relative = 1e-14);
        let (_, m13) = check_product_trace(&n, &id, &id, 0.5).unwrap();
        assert_relative_eq!(min.rhs, m13.rhs, max_relative = 1e-14);
        let z = Matrix::scalar(C64::new(-0.4, 0.9));
        let (p, _, _) = check_normal_product(&z, &Matrix::scalar(C64::new(2.0, 0.0)), &Matrix::scalar(C64::new(0.0, 1.0)), 0.2)
            .unwrap();
        assert!(p.is_equality(1e-13));
    }

    #[test]
    fn remark_variants_examples() {
        let t = Matrix::real_diag(&[1.0, -1.0]);
        let b = Matrix::real_diag(&[1.0, 0.0]);
        let (m, s, nm, ns) = check_remark_variants(&t, &b, 0.5).unwrap();
        assert_relative_eq!(m.lhs, 1.0);
        assert_relative_eq!(m.rhs, 1.0, max_relative = 1e-14);
        assert!(s.passed && nm.unwrap().passed && ns.unwrap().passed);
        let (m, _, nm, _) = check_remark_variants(&nil(), &Matrix::identity(2), 0.3).unwrap();
        let k = check_trace_kato(&nil(), 0.3).unwrap();
        assert_relative_eq!(m.rhs, k.rhs, max_relative = 1e-14);
        assert!(nm.is_none());
        let (m, s, nm, ns) =
            check_remark_variants(&Matrix::scalar(C64::new(0.2, 0.4)), &Matrix::scalar(C64::new(1.5, -0.5)), 0.9).unwrap();
        for c in [m, s, nm.unwrap(), ns.unwrap()] {
            assert!(c.is_equality(1e-13), "{c:?}");
        }
    }
}
