//! Dense complex linear algebra: the substrate for every checker.

mod eigen;
mod matrix;
mod norms;
mod normal;
mod spectral;
mod svd;
mod vector;

pub use eigen::hermitian_eig;
pub use matrix::Matrix;
pub use norms::{hs_inner, schatten, trace, trace_via_basis, SchattenNorms};
pub use normal::{check_normal, normal_eig};
pub use spectral::{
    frac_power, modulus, pow0, ModulusPowers, PowerSum, PsdPowers, SpectralData, SpectralKind,
};
pub use svd::svd;
pub use vector::Vector;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Relative decomposition residual and class-predicate tolerance.
pub const DECOMPOSITION_TOL: f64 = 1e-10;

