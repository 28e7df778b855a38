//! Seeded random operators with prescribed structure.
//!
//! Every object is a pure function of a [`SeedPlan`]: a ChaCha20 generator is
//! seeded from `master_seed` and switched to stream `stream_index`, so
//! distinct stream indices give independent sequences.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{check_normal, Matrix, Vector, C64, DECOMPOSITION_TOL};

/// Name of the random generator, recorded in reports.
pub const RNG_NAME: &str = "ChaCha20 (rand_chacha 0.9), seed_from_u64 + set_stream";

/// `(master_seed, stream_index)` pair that fully determines a draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeedPlan {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeedPlan {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self { master_seed, stream_index }
    }

    pub fn with_stream(self, stream_index: u64) -> Self {
        Self { stream_index, ..self }
    }
}

/// Structural class of a generated operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum OperatorClass {
    General,
    Selfadjoint,
    Positive,
    Unitary,
    Normal,
    NilpotentLike,
}

impl OperatorClass {
    pub const ALL: [OperatorClass; 6] = [
        OperatorClass::General,
        OperatorClass::Selfadjoint,
        OperatorClass::Positive,
        OperatorClass::Unitary,
        OperatorClass::Normal,
        OperatorClass::NilpotentLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorClass::General => "general",
            OperatorClass::Selfadjoint => "selfadjoint",
            OperatorClass::Positive => "positive",
            OperatorClass::Unitary => "unitary",
            OperatorClass::Normal => "normal",
            OperatorClass::NilpotentLike => "nilpotent-like",
        }
    }

    /// Whether `m` satisfies the class predicate within `tol`.
    pub fn holds(self, m: &Matrix, tol: f64) -> bool {
        let scale = m.hs_norm().max(f64::MIN_POSITIVE);
        match self {
            OperatorClass::General => m.is_finite(),
            OperatorClass::Selfadjoint => m.hermitian_defect() <= tol * scale,
            OperatorClass::Positive => {
                m.hermitian_defect() <= tol * scale
                    && crate::linalg::PsdPowers::with_tolerance(m, tol).is_ok()
            }
            OperatorClass::Unitary => m.unitary_defect() <= tol,
            OperatorClass::Normal => check_normal(m, tol).is_ok(),
            OperatorClass::NilpotentLike => {
                let n = m.dim();
                (0..n).all(|i| (0..=i).all(|j| m[(i, j)] == C64::new(0.0, 0.0)))
            }
        }
    }
}

/// Stateful sampler drawing successive objects from one stream.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha20Rng,
}

impl Sampler {
    pub fn new(seed: SeedPlan) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed.master_seed);
        rng.set_stream(seed.stream_index);
        Self { rng }
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Standard complex normal: real and imaginary parts `N(0, 1/2)`.
    pub fn complex_normal(&mut self) -> C64 {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        C64::new(r * self.normal(), r * self.normal())
    }

    /// Uniform in the closed unit disk.
    pub fn unit_disk(&mut self) -> C64 {
        let r = self.uniform().sqrt();
        C64::from_polar(r, 2.0 * PI * self.uniform())
    }

    pub fn vector(&mut self, n: usize) -> Vector {
        Vector::from_fn(n, |_| self.complex_normal())
    }

    pub fn gaussian_matrix(&mut self, n: usize) -> Matrix {
        Matrix::from_fn(n, |_, _| self.complex_normal())
    }

    /// Orthonormalised Gaussian matrix; fails on a numerically singular
    /// draw.
    pub fn try_unitary(&mut self, n: usize) -> Result<Matrix> {
        orthonormalize(&self.gaussian_matrix(n))
    }

    /// Random unitary, redrawing on degenerate draws.
    pub fn unitary(&mut self, n: usize) -> Matrix {
        loop {
            if let Ok(u) = self.try_unitary(n) {
                return u;
            }
        }
    }

    pub fn psd(&mut self, n: usize) -> Matrix {
        let u = self.unitary(n);
        let d: Vec<f64> = (0..n).map(|_| self.uniform()).collect();
        hermitian_from(&u, &d)
    }

    pub fn matrix(&mut self, n: usize, class: OperatorClass) -> Matrix {
        match class {
            OperatorClass::General => self.gaussian_matrix(n),
            OperatorClass::Selfadjoint => self.gaussian_matrix(n).hermitian_part(),
            OperatorClass::Positive => self.psd(n),
            OperatorClass::Unitary => self.unitary(n),
            OperatorClass::Normal => {
                let u = self.unitary(n);
                let d: Vec<C64> = (0..n).map(|_| self.unit_disk()).collect();
                &(&u * &Matrix::diag(&d)) * &u.adjoint()
            }
            OperatorClass::NilpotentLike => {
                let mut m = Matrix::zeros(n);
                for i in 0..n {
                    for j in i + 1..n {
                        m[(i, j)] = self.complex_normal();
                    }
                }
                m
            }
        }
    }

    /// `(T, A) = (U·diag(t)·U*, U·diag(a)·U*)` with one shared unitary.
    pub fn double_commuting_pair(&mut self, n: usize) -> (Matrix, Matrix) {
        let u = self.unitary(n);
        let t: Vec<C64> = (0..n).map(|_| self.unit_disk()).collect();
        let a: Vec<C64> = (0..n).map(|_| self.unit_disk()).collect();
        let adj = u.adjoint();
        (&(&u * &Matrix::diag(&t)) * &adj, &(&u * &Matrix::diag(&a)) * &adj)
    }
}

/// `U·diag(d)·U*`, symmetrised so the result is exactly Hermitian.
pub(crate) fn hermitian_from(u: &Matrix, d: &[f64]) -> Matrix {
    let dc: Vec<C64> = d.iter().map(|&x| C64::new(x, 0.0)).collect();
    (&(u * &Matrix::diag(&dc)) * &u.adjoint()).hermitian_part()
}

// Gram–Schmidt with reorthogonalisation. The implicit R factor has a positive
// diagonal, so a Gaussian input gives a Haar-distributed unitary.
fn orthonormalize(g: &Matrix) -> Result<Matrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..n {
        let start: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for _ in 0..2 {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let proj: C64 = rest[0].iter().zip(&done[k]).map(|(a, b)| *a * b.conj()).sum();
                for (a, b) in rest[0].iter_mut().zip(&done[k]) {
                    *a -= proj * *b;
                }
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 1e-8 * start) || norm == 0.0 {
            return Err(Error::DegenerateDraw);
        }
        for a in cols[j].iter_mut() {
            *a /= norm;
        }
    }
    Ok(Matrix::from_fn(n, |i, j| cols[j][i]))
}

/// Random `n × n` matrix of the given class.
pub fn gen_matrix(n: usize, class: OperatorClass, seed: SeedPlan) -> Matrix {
    Sampler::new(seed).matrix(n, class)
}

/// Normal pair sharing an eigenbasis, hence double commuting.
pub fn gen_double_commuting_pair(n: usize, seed: SeedPlan) -> (Matrix, Matrix) {
    Sampler::new(seed).double_commuting_pair(n)
}

/// Orthonormal basis as the columns of a unitary matrix.
///
/// Fails with `DegenerateDraw` when the underlying Gaussian draw is
/// numerically singular; callers may retry with another stream.
pub fn gen_orthonormal_basis(n: usize, seed: SeedPlan) -> Result<Matrix> {
    Sampler::new(seed).try_unitary(n)
}

/// Largest `c > 0` (to bisection accuracy) with
/// `max(Σ (cσᵢ)^{2α}, Σ (cσᵢ)^{2(1−α)}) ≤ margin·R`.
///
/// `sigma` are the singular values of the operator to be scaled. Returns
/// `None` when every singular value is zero or `R` is infinite, in which case
/// no scaling is needed.
pub fn trace_budget_scale(sigma: &[f64], alpha: f64, radius: f64, margin: f64) -> Option<f64> {
    if !radius.is_finite() || sigma.iter().all(|&s| s == 0.0) {
        return None;
    }
    let target = margin * radius;
    let load = |c: f64| {
        let a: f64 = sigma.iter().map(|&s| (c * s).powf(2.0 * alpha)).sum();
        let b: f64 = sigma.iter().map(|&s| (c * s).powf(2.0 * (1.0 - alpha))).sum();
        a.max(b)
    };
    let (mut lo, mut hi) = (1.0_f64, 1.0_f64);
    while load(lo) > target {
        lo *= 0.5;
    }
    while load(hi) <= target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if load(mid) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// Rescales the normal operator `N` so that both trace loads
/// `tr(|cN|^{2α})` and `tr(|cN|^{2(1−α)})` equal `margin·R` (from below).
///
/// `N = 0` and `R = ∞` are returned unchanged.
pub fn scale_to_trace_budget(n: &Matrix, alpha: f64, radius: f64, margin: f64) -> Result<Matrix> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter("alpha must lie in (0, 1)"));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter("radius must be positive"));
    }
    if !(margin > 0.0 && margin < 1.0) {
        return Err(Error::InvalidParameter("margin must lie in (0, 1)"));
    }
    check_normal(n, DECOMPOSITION_TOL)?;
    let sigma = crate::linalg::svd(n)?.real_values();
    Ok(match trace_budget_scale(&sigma, alpha, radius, margin) {
        Some(c) => n.scale(c),
        None => n.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn seed(k: u64) -> SeedPlan {
        SeedPlan::new(7, k)
    }

    #[test]
    fn class_predicates_hold() {
        for n in 1..=6 {
            for class in OperatorClass::ALL {
                for k in 0..20 {
                    let m = gen_matrix(n, class, seed(k));
                    assert!(class.holds(&m, 1e-10), "{} n={n} k={k}", class.name());
                }
            }
        }
    }

    #[test]
    fn one_by_one_positive_is_nonnegative() {
        let m = gen_matrix(1, OperatorClass::Positive, seed(3));
        assert!(m[(0, 0)].re >= 0.0 && m[(0, 0)].im == 0.0);
    }

    #[test]
    fn deterministic_and_stream_separated() {
        let a = gen_matrix(4, OperatorClass::General, seed(1));
        assert_eq!(a, gen_matrix(4, OperatorClass::General, seed(1)));
        assert_ne!(a, gen_matrix(4, OperatorClass::General, seed(2)));
        assert_ne!(a, gen_matrix(4, OperatorClass::General, SeedPlan::new(8, 1)));
    }

    #[test]
    fn unitary_basis() {
        let u = gen_orthonormal_basis(1, seed(0)).unwrap();
        assert_relative_eq!(u[(0, 0)].norm(), 1.0, epsilon = 1e-15);
        for n in 1..=8 {
            let u = gen_orthonormal_basis(n, seed(n as u64)).unwrap();
            assert!(u.unitary_defect() < 1e-12);
        }
    }

    #[test]
    fn pairs_double_commute() {
        for n in 1..=6 {
            let (t, a) = gen_double_commuting_pair(n, seed(n as u64));
            let scale = t.hs_norm() * a.hs_norm();
            assert!((&(&t * &a) - &(&a * &t)).hs_norm() <= 1e-10 * scale);
            let adj = a.adjoint();
            assert!((&(&t * &adj) - &(&adj * &t)).hs_norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn trace_budget_scalar_example() {
        let n = Matrix::real_diag(&[2.0]);
        let scaled = scale_to_trace_budget(&n, 0.5, 1.0, 0.5).unwrap();
        assert_relative_eq!(scaled[(0, 0)].re, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn trace_budget_zero_and_bounds() {
        let z = Matrix::zeros(3);
        assert_eq!(scale_to_trace_budget(&z, 0.3, 1.0, 0.5).unwrap(), z);
        for k in 0..10 {
            let n = gen_matrix(5, OperatorClass::Normal, seed(k)).scale(10.0);
            let alpha = 0.1 + 0.08 * k as f64;
            let m = scale_to_trace_budget(&n, alpha, 2.0, 0.8).unwrap();
            let sigma = crate::linalg::svd(&m).unwrap().real_values();
            let a: f64 = sigma.iter().map(|s| s.powf(2.0 * alpha)).sum();
            let b: f64 = sigma.iter().map(|s| s.powf(2.0 * (1.0 - alpha))).sum();
            assert!(a <= 1.6 + 1e-9 && b <= 1.6 + 1e-9);
            assert!(a.max(b) > 1.6 - 1e-6);
            assert!(check_normal(&m, 1e-10).is_ok());
        }
    }
}
