use alloc::vec::Vec;

use num_traits::Float;

use super::eigen::Rotation;
use super::spectral::{sort_order_desc, SpectralData, SpectralKind};
use super::{Matrix, Vector, C64};
use crate::error::{Error, Result};

/// Singular value decomposition `A = U·diag(σ)·V*` by one-sided (Hestenes)
/// Jacobi orthogonalisation of the columns of `A`.
///
/// The returned [`SpectralData`] holds `U` in `basis`, `V` in `right` and the
/// singular values, nonnegative and descending, in `values`.
pub fn svd(a: &Matrix) -> Result<SpectralData> {
    let n = a.dim();
    // Column-major working copies.
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| a[(i, j)]).collect()).collect();
    let mut v: Vec<Vec<C64>> =
        (0..n).map(|j| (0..n).map(|i| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect()).collect();
    let budget = 100 * n * n;
    let mut rotations = 0usize;

    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma: C64 = w[p].iter().zip(&w[q]).map(|(x, y)| x.conj() * y).sum();
                if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                let Some(rot) = Rotation::annihilating(alpha, beta, gamma) else { continue };
                rotations += 1;
                if rotations > budget {
                    return Err(Error::NoConvergence { what: "singular value decomposition", budget });
                }
                rotated = true;
                let (wp, wq) = split_pair(&mut w, p, q);
                for (xp, xq) in wp.iter_mut().zip(wq.iter_mut()) {
                    (*xp, *xq) = rot.apply_pair(*xp, *xq);
                }
                let (vp, vq) = split_pair(&mut v, p, q);
                for (xp, xq) in vp.iter_mut().zip(vq.iter_mut()) {
                    (*xp, *xq) = rot.apply_pair(*xp, *xq);
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = w.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let order = sort_order_desc(&sigma);

    // Left vectors: normalised columns, re-orthonormalised in order of
    // decreasing σ and completed with standard basis vectors where σ = 0.
    let mut left: Vec<Vector> = Vec::with_capacity(n);
    let mut next_candidate = 0usize;
    for &k in &order {
        let s = sigma[k];
        let mut accepted = None;
        if s > 0.0 {
            let cand = Vector::from_fn(n, |i| w[k][i] / s);
            accepted = orthonormalize_against(&cand, &left);
        }
        while accepted.is_none() {
            if next_candidate >= n {
                return Err(Error::NoConvergence { what: "singular vector completion", budget: n });
            }
            accepted = orthonormalize_against(&Vector::basis(n, next_candidate), &left);
            next_candidate += 1;
        }
        left.push(accepted.unwrap());
    }

    let mut u = Matrix::from_columns(&left)?;
    let mut right = Matrix::from_fn(n, |i, j| v[order[j]][i]);
    for j in 0..n {
        // Fix the common phase so the largest component of each right vector
        // is real positive.
        let mut best = 0usize;
        let mut best_abs = -1.0;
        for i in 0..n {
            let m = right[(i, j)].norm();
            if m > best_abs {
                best_abs = m;
                best = i;
            }
        }
        let z = right[(best, j)];
        if z.norm() > 0.0 {
            let phase = z.conj() / z.norm();
            for i in 0..n {
                right[(i, j)] *= phase;
                u[(i, j)] *= phase;
            }
        }
    }
    let values = order.iter().map(|&k| C64::new(sigma[k], 0.0)).collect();
    Ok(SpectralData { kind: SpectralKind::Singular, basis: u, values, right: Some(right) })
}

fn split_pair<T>(cols: &mut [T], p: usize, q: usize) -> (&mut T, &mut T) {
    debug_assert!(p < q);
    let (head, tail) = cols.split_at_mut(q);
    (&mut head[p], &mut tail[0])
}

/// Two-pass Gram–Schmidt of `cand` against orthonormal `basis`; `None` when
/// the candidate is (numerically) in their span.
fn orthonormalize_against(cand: &Vector, basis: &[Vector]) -> Option<Vector> {
    let start = cand.norm();
    if start == 0.0 {
        return None;
    }
    let mut x = cand.clone();
    for _ in 0..2 {
        for b in basis {
            let proj = x.inner(b);
            for i in 0..x.dim() {
                x[i] -= b[i] * proj;
            }
        }
    }
    let norm = x.norm();
    if norm <= 0.1 * start {
        return None;
    }
    Some(x.scale(C64::new(1.0 / norm, 0.0)))
}
