//! Numerical laboratory for Kato-type trace inequalities on finite-dimensional
//! Hilbert spaces.
//!
//! Every bounded operator on `ℂⁿ` is a dense complex matrix here, so trace
//! class and Hilbert–Schmidt membership reduce to norm computations. The
//! crate provides:
//!
//! * [`linalg`]: matrices, adjoints, Hermitian/normal eigendecompositions,
//!   singular values, operator modulus, fractional powers, Schatten norms and
//!   traces;
//! * [`generators`]: seeded structured random operators;
//! * [`pointwise`], [`trace_suite`], [`functional`], [`series`]: inequality
//!   checkers producing [`InequalityCheck`] records;
//! * [`registry`]: the campaign catalogue that drives all checkers over random
//!   trials, plus the sharpness search.
//!
//! The crate is `no_std` and only needs `alloc`; transcendental functions
//! come from `libm`.

#![no_std]
// Recent toolchains give `f64` inherent math methods in `core` too, shadowing
// `num_traits::Float`; the imports stay for older ones.
#![allow(unused_imports)]
// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod check;
pub mod error;
pub mod functional;
pub mod generators;
pub mod linalg;
pub mod pointwise;
pub mod registry;
pub mod series;
pub mod tolerance;
pub mod trace_suite;

pub use check::{Context, InequalityCheck};
pub use error::{Error, Result};
pub use linalg::{Matrix, Vector, C64};
pub use tolerance::ToleranceProfile;
