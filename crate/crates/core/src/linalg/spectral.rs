use alloc::vec::Vec;

use num_traits::{Float, Zero};

use super::{hermitian_eig, svd, Matrix, Vector, C64, DECOMPOSITION_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralKind {
    HermitianEigen,
    NormalEigen,
    Singular,
}

/// Eigen- or singular decomposition.
///
/// For the eigen kinds `A = basis · diag(values) · basis*`. For
/// [`SpectralKind::Singular`], `A = basis · diag(values) · right*` with
/// `right` the second unitary factor.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub kind: SpectralKind,
    pub basis: Matrix,
    pub values: Vec<C64>,
    pub right: Option<Matrix>,
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn reconstruct(&self) -> Matrix {
        let right = self.right.as_ref().unwrap_or(&self.basis);
        diag_sandwich(&self.basis, &self.values, right)
    }

    /// `‖A − reconstruction‖₂`.
    pub fn residual(&self, a: &Matrix) -> f64 {
        (a - &self.reconstruct()).hs_norm()
    }

    /// `basis · diag(f(values)) · basis*`; the functional calculus of an
    /// eigen decomposition.
    pub fn map_values(&self, mut f: impl FnMut(C64) -> C64) -> Matrix {
        let mapped: Vec<C64> = self.values.iter().map(|&z| f(z)).collect();
        diag_sandwich(&self.basis, &mapped, &self.basis)
    }
}

/// `u · diag(d) · w*`.
pub(crate) fn diag_sandwich(u: &Matrix, d: &[C64], w: &Matrix) -> Matrix {
    let n = u.dim();
    let mut out = Matrix::zeros(n);
    for k in 0..n {
        if d[k].is_zero() {
            continue;
        }
        for i in 0..n {
            let a = u[(i, k)] * d[k];
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                out[(i, j)] += a * w[(j, k)].conj();
            }
        }
    }
    out
}

/// `u · diag(d) · u*` with a real diagonal, returned exactly Hermitian.
pub(crate) fn real_diag_sandwich(u: &Matrix, d: &[f64]) -> Matrix {
    let n = u.dim();
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = C64::zero();
            for k in 0..n {
                if d[k] != 0.0 {
                    acc += u[(i, k)] * u[(j, k)].conj() * d[k];
                }
            }
            if i == j {
                out[(i, i)] = C64::new(acc.re, 0.0);
            } else {
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
        }
    }
    out
}

/// Indices sorting `values` descending; ties keep their first occurrence.
pub(crate) fn sort_order_desc(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(core::cmp::Ordering::Equal));
    order
}

/// Rotates each column so its largest-magnitude component (first on ties) is
/// real positive.
pub(crate) fn normalize_column_phases(m: &Matrix) -> Matrix {
    let n = m.dim();
    let mut out = m.clone();
    for j in 0..n {
        let mut best = 0usize;
        let mut best_abs = -1.0;
        for i in 0..n {
            let a = m[(i, j)].norm();
            if a > best_abs * (1.0 + 1e-12) {
                best_abs = a;
                best = i;
            }
        }
        let z = m[(best, j)];
        if z.norm() > 0.0 {
            let phase = z.conj() / z.norm();
            for i in 0..n {
                out[(i, j)] = m[(i, j)] * phase;
            }
            out[(best, j)] = C64::new(out[(best, j)].norm(), 0.0);
        }
    }
    out
}

/// `x^s` with the convention `0^0 = 1`.
#[inline]
pub fn pow0(x: f64, s: f64) -> f64 {
    if s == 0.0 {
        1.0
    } else if x <= 0.0 {
        0.0
    } else if s == 1.0 {
        x
    } else {
        x.powf(s)
    }
}

/// Cached eigendecomposition of a positive semidefinite matrix, for repeated
/// fractional powers.
#[derive(Debug, Clone)]
pub struct PsdPowers {
    eig: SpectralData,
    eigenvalues: Vec<f64>,
}

impl PsdPowers {
    /// Fails with `NotPsd` when an eigenvalue lies below `−ε·‖P‖₂`;
    /// eigenvalues inside that window are clamped to zero.
    pub fn new(p: &Matrix) -> Result<Self> {
        Self::with_tolerance(p, DECOMPOSITION_TOL)
    }

    pub fn with_tolerance(p: &Matrix, tol: f64) -> Result<Self> {
        let eig = hermitian_eig(p)?;
        let scale = p.hs_norm();
        let raw = eig.real_values();
        let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -tol * scale {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        let mut eigenvalues: Vec<f64> = raw.iter().map(|&l| l.max(0.0)).collect();
        snap_noise(&mut eigenvalues);
        Ok(Self { eig, eigenvalues })
    }

    /// Clamped eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn basis(&self) -> &Matrix {
        &self.eig.basis
    }

    /// Operator norm, the largest eigenvalue.
    pub fn norm(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// `P^s`.
    pub fn power(&self, s: f64) -> Matrix {
        let d: Vec<f64> = self.eigenvalues.iter().map(|&l| pow0(l, s)).collect();
        real_diag_sandwich(&self.eig.basis, &d)
    }

    /// `⟨P^s x, x⟩ = Σ λᵢ^s |⟨x, uᵢ⟩|²`.
    pub fn quadratic_form(&self, s: f64, x: &Vector) -> f64 {
        self.form_sum(x).eval(s)
    }

    /// `s ↦ ⟨P^s x, x⟩` with the projections precomputed.
    pub fn form_sum(&self, x: &Vector) -> PowerSum {
        PowerSum::new(self.eigenvalues.clone(), vector_weights(&self.eig.basis, x))
    }

    /// `s ↦ tr(W·P^s)` for Hermitian `W`.
    pub fn trace_sum(&self, w: &Matrix) -> PowerSum {
        PowerSum::new(self.eigenvalues.clone(), matrix_weights(&self.eig.basis, w))
    }
}

/// `P^s` for positive semidefinite `P` and `s ≥ 0`, with `0^0 = 1`.
pub fn frac_power(p: &Matrix, s: f64) -> Result<Matrix> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter("fractional power exponent must be finite and nonnegative"));
    }
    Ok(PsdPowers::new(p)?.power(s))
}

/// Singular value decomposition of `T` packaged for the powers `|T|^s`
/// and `|T*|^s`.
///
/// With `T = U·Σ·V*`, `|T| = V·Σ·V*` and `|T*| = U·Σ·U*`.
#[derive(Debug, Clone)]
pub struct ModulusPowers {
    svd: SpectralData,
    sigma: Vec<f64>,
}

impl ModulusPowers {
    pub fn new(t: &Matrix) -> Result<Self> {
        let svd = svd(t)?;
        let mut sigma = svd.real_values();
        snap_noise(&mut sigma);
        Ok(Self { svd, sigma })
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> &[f64] {
        &self.sigma
    }

    pub fn op_norm(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    fn right(&self) -> &Matrix {
        self.svd.right.as_ref().expect("singular decomposition carries a right factor")
    }

    /// `|T|^s`.
    pub fn abs_pow(&self, s: f64) -> Matrix {
        let d: Vec<f64> = self.sigma.iter().map(|&x| pow0(x, s)).collect();
        real_diag_sandwich(self.right(), &d)
    }

    /// `|T*|^s`.
    pub fn adj_abs_pow(&self, s: f64) -> Matrix {
        let d: Vec<f64> = self.sigma.iter().map(|&x| pow0(x, s)).collect();
        real_diag_sandwich(&self.svd.basis, &d)
    }

    /// `tr(|T|^s) = tr(|T*|^s) = Σ σᵢ^s`.
    pub fn trace_pow(&self, s: f64) -> f64 {
        self.sigma.iter().map(|&x| pow0(x, s)).sum()
    }

    /// `⟨|T|^s x, x⟩`.
    pub fn abs_form(&self, s: f64, x: &Vector) -> f64 {
        self.abs_form_sum(x).eval(s)
    }

    /// `⟨|T*|^s y, y⟩`.
    pub fn adj_abs_form(&self, s: f64, y: &Vector) -> f64 {
        self.adj_abs_form_sum(y).eval(s)
    }

    /// `s ↦ ⟨|T|^s x, x⟩`.
    pub fn abs_form_sum(&self, x: &Vector) -> PowerSum {
        PowerSum::new(self.sigma.clone(), vector_weights(self.right(), x))
    }

    /// `s ↦ ⟨|T*|^s y, y⟩`.
    pub fn adj_abs_form_sum(&self, y: &Vector) -> PowerSum {
        PowerSum::new(self.sigma.clone(), vector_weights(&self.svd.basis, y))
    }

    /// `s ↦ tr(W·|T|^s)` for Hermitian `W`.
    pub fn abs_trace_sum(&self, w: &Matrix) -> PowerSum {
        PowerSum::new(self.sigma.clone(), matrix_weights(self.right(), w))
    }

    /// `s ↦ tr(W·|T*|^s)` for Hermitian `W`.
    pub fn adj_abs_trace_sum(&self, w: &Matrix) -> PowerSum {
        PowerSum::new(self.sigma.clone(), matrix_weights(&self.svd.basis, w))
    }
}

/// `s ↦ Σₖ wₖ·λₖ^s` over nonnegative `λₖ`, with `0^0 = 1`.
///
/// Every trace or quadratic form of a fractional power reduces to one of
/// these once the decomposition is known, which keeps sweeps over the
/// exponent cheap.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSum {
    bases: Vec<f64>,
    weights: Vec<f64>,
}

impl PowerSum {
    pub fn new(bases: Vec<f64>, weights: Vec<f64>) -> Self {
        assert_eq!(bases.len(), weights.len(), "power sum lengths differ");
        Self { bases, weights }
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.bases.iter().zip(&self.weights).map(|(&b, &w)| w * pow0(b, s)).sum()
    }

    /// `Σₖ |wₖ|·λₖ^s`, the size against which cancellation in `eval` is judged.
    pub fn magnitude(&self, s: f64) -> f64 {
        self.bases.iter().zip(&self.weights).map(|(&b, &w)| w.abs() * pow0(b, s)).sum()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { bases: self.bases.clone(), weights: self.weights.iter().map(|w| c * w).collect() }
    }

    /// Sum of two power sums, concatenating the terms.
    pub fn plus(&self, other: &PowerSum) -> Self {
        let mut bases = self.bases.clone();
        bases.extend_from_slice(&other.bases);
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        Self { bases, weights }
    }
}

// |⟨x, bₖ⟩|² for each column bₖ.
fn vector_weights(basis: &Matrix, x: &Vector) -> Vec<f64> {
    let n = basis.dim();
    (0..n)
        .map(|k| (0..n).map(|i| x[i] * basis[(i, k)].conj()).sum::<C64>().norm_sqr())
        .collect()
}

// Re (B* W B)ₖₖ for each column bₖ.
fn matrix_weights(basis: &Matrix, w: &Matrix) -> Vec<f64> {
    let n = basis.dim();
    (0..n)
        .map(|k| {
            let mut acc = 0.0;
            for i in 0..n {
                let wb: C64 = (0..n).map(|j| w[(i, j)] * basis[(j, k)]).sum();
                acc += (basis[(i, k)].conj() * wb).re;
            }
            acc
        })
        .collect()
}

// Values at the rounding level of the largest one are indistinguishable from
// zero, and would otherwise blow up under small fractional exponents.
fn snap_noise(values: &mut [f64]) {
    let top = values.iter().copied().fold(0.0, f64::max);
    let floor = 4.0 * values.len() as f64 * f64::EPSILON * top;
    for v in values.iter_mut() {
        if *v <= floor {
            *v = 0.0;
        }
    }
}

/// Operator modulus `|A| = √(A*A)`.
pub fn modulus(a: &Matrix) -> Result<Matrix> {
    Ok(ModulusPowers::new(a)?.abs_pow(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        (a - b).hs_norm() <= tol
    }

    #[test]
    fn modulus_of_nilpotent() {
        let a = Matrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(close(&modulus(&a).unwrap(), &Matrix::real_diag(&[0.0, 1.0]), 1e-15));
    }

    #[test]
    fn modulus_of_positive_is_itself() {
        let p = Matrix::from_real_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        assert!(close(&modulus(&p).unwrap(), &p, 1e-14));
        assert!(close(&modulus(&Matrix::real_diag(&[-3.0])).unwrap(), &Matrix::real_diag(&[3.0]), 0.0));
    }

    #[test]
    fn modulus_squared_is_gram() {
        let c = C64::new;
        let a = Matrix::from_rows(&[[c(1.0, 2.0), c(0.0, -1.0)], [c(0.5, 0.5), c(-2.0, 0.0)]]).unwrap();
        let m = modulus(&a).unwrap();
        assert!(close(&(&m * &m), &(&a.adjoint() * &a), 1e-13));
        assert!(m.hermitian_defect() == 0.0);
    }

    #[test]
    fn fractional_power_examples() {
        let p = Matrix::real_diag(&[4.0, 9.0]);
        assert!(close(&frac_power(&p, 0.5).unwrap(), &Matrix::real_diag(&[2.0, 3.0]), 1e-15));
        let q = Matrix::from_real_rows(&[[0.0, 0.0], [0.0, 0.0]]).unwrap();
        assert_eq!(frac_power(&q, 0.0).unwrap(), Matrix::identity(2));
        assert!(close(&frac_power(&Matrix::real_diag(&[0.0, 1.0]), 0.3).unwrap(), &Matrix::real_diag(&[0.0, 1.0]), 1e-15));
    }

    #[test]
    fn negative_eigenvalue_window() {
        // Tiny negativity is clamped, larger negativity is an error.
        let tiny = Matrix::real_diag(&[1.0, -1e-14]);
        assert!(close(&frac_power(&tiny, 0.5).unwrap(), &Matrix::real_diag(&[1.0, 0.0]), 1e-15));
        let bad = Matrix::real_diag(&[1.0, -1e-3]);
        assert!(matches!(frac_power(&bad, 0.5), Err(Error::NotPsd { .. })));
        assert!(frac_power(&tiny, -1.0).is_err());
    }

    #[test]
    fn pow0_convention() {
        assert_eq!(pow0(0.0, 0.0), 1.0);
        assert_eq!(pow0(0.0, 0.5), 0.0);
        assert_abs_diff_eq!(pow0(4.0, 0.5), 2.0);
    }

    #[test]
    fn modulus_powers_forms_match_matrices() {
        let c = C64::new;
        let t = Matrix::from_rows(&[[c(0.2, 1.0), c(1.0, 0.0)], [c(0.0, 0.0), c(-0.7, 0.3)]]).unwrap();
        let mp = ModulusPowers::new(&t).unwrap();
        let x = Vector::new(alloc::vec![c(1.0, -0.5), c(0.25, 2.0)]).unwrap();
        let s = 0.6;
        let direct = mp.abs_pow(s).apply(&x).inner(&x).re;
        assert_abs_diff_eq!(mp.abs_form(s, &x), direct, epsilon = 1e-13);
        let direct = mp.adj_abs_pow(s).apply(&x).inner(&x).re;
        assert_abs_diff_eq!(mp.adj_abs_form(s, &x), direct, epsilon = 1e-13);
        assert_abs_diff_eq!(mp.abs_pow(s).trace().re, mp.trace_pow(s), epsilon = 1e-13);
    }
}
