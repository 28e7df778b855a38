//! Vector-level inequalities: the Schwarz inequality for positive operators,
//! Kato's mixed Schwarz inequality and its norm form, and McCarthy's
//! inequality.
//!
//! Each checker has a prepared counterpart that performs the decomposition
//! once and can then be evaluated for many exponents.

use num_traits::Float;

use crate::check::{Context, InequalityCheck};
use crate::error::{Error, Result};
use crate::linalg::{pow0, Matrix, ModulusPowers, PowerSum, PsdPowers, Vector};

pub(crate) fn check_dims(m: &Matrix, v: &Vector) -> Result<()> {
    if m.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), found: v.dim() });
    }
    Ok(())
}

pub(crate) fn check_unit_interval(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter("exponent must lie in [0, 1]"));
    }
    Ok(())
}

pub(crate) fn check_open_interval(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter("exponent must lie in (0, 1)"));
    }
    Ok(())
}

/// `|⟨Px, y⟩|² ≤ ⟨Px, x⟩·⟨Py, y⟩` for positive semidefinite `P`.
pub fn check_schwarz_positive(p: &Matrix, x: &Vector, y: &Vector) -> Result<InequalityCheck> {
    check_dims(p, x)?;
    check_dims(p, y)?;
    PsdPowers::new(p)?;
    let px = p.apply(x);
    let py = p.apply(y);
    let lhs = px.inner(y).norm_sqr();
    let rhs = px.inner(x).re * py.inner(y).re;
    Ok(InequalityCheck::new("schwarz-positive", lhs, rhs).with_context(Context::new(p.dim())))
}

/// `‖Px‖² ≤ ‖P‖·⟨Px, x⟩` for positive semidefinite `P`.
pub fn check_positive_norm(p: &Matrix, x: &Vector) -> Result<InequalityCheck> {
    check_dims(p, x)?;
    let powers = PsdPowers::new(p)?;
    let px = p.apply(x);
    let lhs = px.norm_sqr();
    let rhs = powers.norm() * px.inner(x).re;
    Ok(InequalityCheck::new("positive-norm", lhs, rhs).with_context(Context::new(p.dim())))
}

/// Kato's inequality `|⟨Tx, y⟩|² ≤ ⟨|T|^{2α}x, x⟩·⟨|T*|^{2(1−α)}y, y⟩`
/// prepared for a sweep over `α ∈ [0, 1]`.
#[derive(Debug, Clone)]
pub struct KatoForms {
    n: usize,
    lhs: f64,
    abs: PowerSum,
    adj: PowerSum,
}

impl KatoForms {
    pub fn new(t: &Matrix, x: &Vector, y: &Vector) -> Result<Self> {
        check_dims(t, x)?;
        check_dims(t, y)?;
        let modulus = ModulusPowers::new(t)?;
        Ok(Self {
            n: t.dim(),
            lhs: t.apply(x).inner(y).norm_sqr(),
            abs: modulus.abs_form_sum(x),
            adj: modulus.adj_abs_form_sum(y),
        })
    }

    pub fn at(&self, alpha: f64) -> Result<InequalityCheck> {
        check_unit_interval(alpha)?;
        let rhs = self.abs.eval(2.0 * alpha) * self.adj.eval(2.0 * (1.0 - alpha));
        Ok(InequalityCheck::new("kato", self.lhs, rhs).with_context(Context::new(self.n).with_alpha(alpha)))
    }
}

pub fn check_kato(t: &Matrix, x: &Vector, y: &Vector, alpha: f64) -> Result<InequalityCheck> {
    KatoForms::new(t, x, y)?.at(alpha)
}

/// `‖Tx‖² ≤ ‖T‖^{2(1−α)}·⟨|T|^{2α}x, x⟩`, prepared for a sweep over `α`.
#[derive(Debug, Clone)]
pub struct KatoNormForms {
    n: usize,
    lhs: f64,
    norm: f64,
    abs: PowerSum,
}

impl KatoNormForms {
    pub fn new(t: &Matrix, x: &Vector) -> Result<Self> {
        check_dims(t, x)?;
        let modulus = ModulusPowers::new(t)?;
        Ok(Self { n: t.dim(), lhs: t.apply(x).norm_sqr(), norm: modulus.op_norm(), abs: modulus.abs_form_sum(x) })
    }

    pub fn at(&self, alpha: f64) -> Result<InequalityCheck> {
        check_unit_interval(alpha)?;
        let rhs = pow0(self.norm, 2.0 * (1.0 - alpha)) * self.abs.eval(2.0 * alpha);
        Ok(InequalityCheck::new("kato-norm", self.lhs, rhs)
            .with_context(Context::new(self.n).with_alpha(alpha)))
    }
}

pub fn check_kato_norm(t: &Matrix, x: &Vector, alpha: f64) -> Result<InequalityCheck> {
    KatoNormForms::new(t, x)?.at(alpha)
}

/// McCarthy's inequality `⟨P^β y, y⟩ ≤ ‖y‖^{2(1−β)}·⟨Py, y⟩^β` for
/// `β ∈ (0, 1)`, prepared for a sweep over `β`.
#[derive(Debug, Clone)]
pub struct McCarthyForms {
    n: usize,
    norm_sqr: f64,
    form: PowerSum,
}

impl McCarthyForms {
    pub fn new(p: &Matrix, y: &Vector) -> Result<Self> {
        check_dims(p, y)?;
        let powers = PsdPowers::new(p)?;
        if y.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { n: p.dim(), norm_sqr: y.norm_sqr(), form: powers.form_sum(y) })
    }

    pub fn at(&self, beta: f64) -> Result<InequalityCheck> {
        check_open_interval(beta)?;
        let lhs = self.form.eval(beta);
        let rhs = self.norm_sqr.powf(1.0 - beta) * self.form.eval(1.0).powf(beta);
        Ok(InequalityCheck::new("mccarthy", lhs, rhs).with_context(Context::new(self.n).with_alpha(beta)))
    }
}

pub fn check_mccarthy(p: &Matrix, y: &Vector, beta: f64) -> Result<InequalityCheck> {
    McCarthyForms::new(p, y)?.at(beta)
}
