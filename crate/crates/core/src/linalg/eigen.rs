use alloc::vec::Vec;

use num_traits::Float;

use super::spectral::{normalize_column_phases, sort_order_desc, SpectralData, SpectralKind};
use super::{Matrix, C64, DECOMPOSITION_TOL};
use crate::error::{Error, Result};

/// Unitary plane rotation `V = D·G` acting on coordinates `(p, q)`, where `D`
/// removes the phase of the off-diagonal entry and `G` is a real Jacobi
/// rotation.
///
/// Columns transform as `p ← c·p − s·w·q`, `q ← s·p + c·w·q`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Rotation {
    pub c: f64,
    pub s: f64,
    pub w: C64,
}

impl Rotation {
    /// Rotation annihilating `apq` in the Hermitian block
    /// `[[app, apq], [conj(apq), aqq]]`.
    pub fn annihilating(app: f64, aqq: f64, apq: C64) -> Option<Self> {
        let h = apq.norm();
        if h == 0.0 || !h.is_finite() {
            return None;
        }
        let w = (apq / h).conj();
        let tau = (aqq - app) / (2.0 * h);
        let t = if tau >= 0.0 {
            1.0 / (tau + (1.0 + tau * tau).sqrt())
        } else {
            -1.0 / (-tau + (1.0 + tau * tau).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        Some(Self { c, s: t * c, w })
    }

    #[inline]
    pub fn apply_pair(&self, xp: C64, xq: C64) -> (C64, C64) {
        (xp * self.c - xq * (self.w * self.s), xp * self.s + xq * (self.w * self.c))
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// Eigenvalues come back sorted descending (ties keep their first
/// occurrence); each eigenvector has its largest-magnitude component made
/// real positive.
pub fn hermitian_eig(a: &Matrix) -> Result<SpectralData> {
    let scale = a.hs_norm();
    let asymmetry = a.hermitian_defect();
    if asymmetry > DECOMPOSITION_TOL * scale {
        return Err(Error::NotHermitian { asymmetry });
    }
    let n = a.dim();
    let mut work = a.hermitian_part();
    let mut vecs = Matrix::identity(n);
    let budget = 100 * n * n;
    let mut rotations = 0usize;

    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = work[(p, q)];
                let h = apq.norm();
                let app = work[(p, p)].re;
                let aqq = work[(q, q)].re;
                let negligible = h <= f64::EPSILON * 0.5 * (app.abs().sqrt() * aqq.abs().sqrt())
                    || h <= f64::MIN_POSITIVE.max(1e-18 * scale);
                if negligible {
                    work[(p, q)] = C64::new(0.0, 0.0);
                    work[(q, p)] = C64::new(0.0, 0.0);
                    continue;
                }
                let Some(rot) = Rotation::annihilating(app, aqq, apq) else { continue };
                rotations += 1;
                if rotations > budget {
                    return Err(Error::NoConvergence { what: "Hermitian eigensolver", budget });
                }
                rotated = true;
                // A ← A V
                for k in 0..n {
                    let (xp, xq) = rot.apply_pair(work[(k, p)], work[(k, q)]);
                    work[(k, p)] = xp;
                    work[(k, q)] = xq;
                }
                // A ← V* A
                let conj_rot = Rotation { w: rot.w.conj(), ..rot };
                for k in 0..n {
                    let (xp, xq) = conj_rot.apply_pair(work[(p, k)], work[(q, k)]);
                    work[(p, k)] = xp;
                    work[(q, k)] = xq;
                }
                work[(p, q)] = C64::new(0.0, 0.0);
                work[(q, p)] = C64::new(0.0, 0.0);
                work[(p, p)] = C64::new(work[(p, p)].re, 0.0);
                work[(q, q)] = C64::new(work[(q, q)].re, 0.0);
                for k in 0..n {
                    let (xp, xq) = rot.apply_pair(vecs[(k, p)], vecs[(k, q)]);
                    vecs[(k, p)] = xp;
                    vecs[(k, q)] = xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let raw: Vec<f64> = (0..n).map(|i| work[(i, i)].re).collect();
    let order = sort_order_desc(&raw);
    let basis = Matrix::from_fn(n, |i, j| vecs[(i, order[j])]);
    let basis = normalize_column_phases(&basis);
    let values = order.iter().map(|&k| C64::new(raw[k], 0.0)).collect();
    Ok(SpectralData { kind: SpectralKind::HermitianEigen, basis, values, right: None })
}
