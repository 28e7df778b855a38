use alloc::vec::Vec;

use super::spectral::{normalize_column_phases, sort_order_desc, SpectralData, SpectralKind};
use super::{hermitian_eig, Matrix, C64, DECOMPOSITION_TOL};
use crate::error::{Error, Result};

// Mixing weight for the Hermitian and skew parts; any irrational works.
const MIX: f64 = 0.618_033_988_749_894_9;

/// Fails with `NotNormal` unless `‖NN* − N*N‖₂ ≤ tol·‖N‖₂²`.
pub fn check_normal(n: &Matrix, tol: f64) -> Result<()> {
    let adj = n.adjoint();
    let commutator = (&(n * &adj) - &(&adj * n)).hs_norm();
    let scale = n.hs_norm();
    if commutator > tol * scale * scale {
        return Err(Error::NotNormal { commutator });
    }
    Ok(())
}

/// Unitary diagonalisation `N = U·diag(λ)·U*` of a normal matrix.
///
/// The Hermitian and skew-Hermitian parts commute, so a generic real
/// combination of them shares N's eigenvectors; clusters of that combination
/// are split by diagonalising the compressed skew part. Eigenvalues are
/// ordered by decreasing modulus.
pub fn normal_eig(n: &Matrix) -> Result<SpectralData> {
    check_normal(n, DECOMPOSITION_TOL)?;
    let dim = n.dim();
    let adj = n.adjoint();
    let herm = (n + &adj).scale(0.5);
    let skew = (n - &adj).scale_complex(C64::new(0.0, -0.5));
    let mixed = &herm + &skew.scale(MIX);
    let eig = hermitian_eig(&mixed.hermitian_part())?;
    let mut basis = eig.basis;
    let mixed_values = eig.values;

    let scale = n.hs_norm().max(f64::MIN_POSITIVE);
    let cluster_tol = 1e-9 * scale;
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && (mixed_values[end - 1].re - mixed_values[end].re).abs() <= cluster_tol {
            end += 1;
        }
        if end - start > 1 {
            refine_cluster(&mut basis, &skew, start, end)?;
        }
        start = end;
    }

    let rotated = &(&basis.adjoint() * n) * &basis;
    let raw: Vec<C64> = rotated.diagonal();
    let moduli: Vec<f64> = raw.iter().map(|z| z.norm()).collect();
    let order = sort_order_desc(&moduli);
    let basis = Matrix::from_fn(dim, |i, j| basis[(i, order[j])]);
    let basis = normalize_column_phases(&basis);
    let values = order.iter().map(|&k| raw[k]).collect();
    Ok(SpectralData { kind: SpectralKind::NormalEigen, basis, values, right: None })
}

fn refine_cluster(basis: &mut Matrix, skew: &Matrix, start: usize, end: usize) -> Result<()> {
    let dim = basis.dim();
    let m = end - start;
    let block = Matrix::from_fn(m, |a, b| {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                acc += basis[(i, start + a)].conj() * skew[(i, j)] * basis[(j, start + b)];
            }
        }
        acc
    });
    let inner = hermitian_eig(&block.hermitian_part())?;
    let old: Vec<C64> = (0..dim).flat_map(|i| (start..end).map(move |j| (i, j))).map(|(i, j)| basis[(i, j)]).collect();
    for i in 0..dim {
        for b in 0..m {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..m {
                acc += old[i * m + a] * inner.basis[(a, b)];
            }
            basis[(i, start + b)] = acc;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_complex_spectrum() {
        let c = C64::new;
        let n = Matrix::diag(&[c(0.0, 1.0), c(-2.0, 0.0), c(0.5, 0.5)]);
        let eig = normal_eig(&n).unwrap();
        assert!(eig.residual(&n) < 1e-14);
        let moduli: Vec<f64> = eig.values.iter().map(|z| z.norm()).collect();
        assert!(moduli.windows(2).all(|w| w[0] >= w[1]));
        assert!((eig.values[0] - c(-2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn colliding_mixed_values_are_separated() {
        // Two eigenvalues sharing Re λ + MIX·Im λ.
        let c = C64::new;
        let a = c(1.0, 0.0);
        let b = c(1.0 - MIX, 1.0);
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let u = Matrix::from_rows(&[[c(r, 0.0), c(0.0, r)], [c(0.0, r), c(r, 0.0)]]).unwrap();
        let n = &(&u * &Matrix::diag(&[a, b])) * &u.adjoint();
        let eig = normal_eig(&n).unwrap();
        assert!(eig.residual(&n) < 1e-13, "residual {}", eig.residual(&n));
    }

    #[test]
    fn rejects_non_normal() {
        let a = Matrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(normal_eig(&a), Err(Error::NotNormal { .. })));
    }
}
