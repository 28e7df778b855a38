use num_traits::Float;

use super::{svd, Matrix, C64};
use crate::error::{Error, Result};

/// Operator, Hilbert–Schmidt and trace norms of one matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchattenNorms {
    pub op_norm: f64,
    pub hs_norm: f64,
    pub tr_norm: f64,
}

pub fn trace(a: &Matrix) -> C64 {
    a.trace()
}

/// `Σᵢ ⟨A bᵢ, bᵢ⟩` over the columns of `basis`.
///
/// Independent of the orthonormal basis, so this serves as an oracle for
/// [`trace`].
pub fn trace_via_basis(a: &Matrix, basis: &Matrix) -> Result<C64> {
    a.check_same_dim(basis)?;
    let deviation = basis.unitary_defect();
    if deviation > 1e-10 {
        return Err(Error::NotUnitary { deviation });
    }
    Ok((0..a.dim())
        .map(|i| {
            let b = basis.column(i);
            a.apply(&b).inner(&b)
        })
        .sum())
}

/// Schatten norms from the singular values.
pub fn schatten(a: &Matrix) -> Result<SchattenNorms> {
    let sigma = svd(a)?.real_values();
    Ok(SchattenNorms {
        op_norm: sigma.first().copied().unwrap_or(0.0),
        hs_norm: sigma.iter().map(|s| s * s).sum::<f64>().sqrt(),
        tr_norm: sigma.iter().sum(),
    })
}

/// Hilbert–Schmidt inner product `⟨A, B⟩₂ = Σᵢ ⟨A eᵢ, B eᵢ⟩ = tr(B*A)`.
pub fn hs_inner(a: &Matrix, b: &Matrix) -> Result<C64> {
    a.check_same_dim(b)?;
    Ok(a.as_slice().iter().zip(b.as_slice()).map(|(&x, &y)| x * y.conj()).sum())
}
