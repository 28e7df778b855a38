//! Inequality records.

use alloc::borrow::Cow;

use num_traits::Float;

use crate::tolerance::{ToleranceProfile, SLACK_FLOOR, VIOLATION_REL};

/// Where a check came from: dimension, exponent, seed and a free note.
#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Context {
    pub n: usize,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub alpha: Option<f64>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub seed: Option<u64>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub stream: Option<u64>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub note: Option<Cow<'static, str>>,
}

impl Context {
    pub fn new(n: usize) -> Self {
        Self { n, ..Self::default() }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_seed(mut self, seed: u64, stream: u64) -> Self {
        self.seed = Some(seed);
        self.stream = Some(stream);
        self
    }

    pub fn with_note(mut self, note: impl Into<Cow<'static, str>>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// One evaluated inequality `lhs ≤ rhs`.
///
/// `rel_slack = (rhs − lhs) / max(|rhs|, scale, 1e−300)`. The `scale` is the
/// magnitude of the quantities that were subtracted to form `lhs` and `rhs`
/// (zero when neither side involves a cancellation), so that rounding in
/// differences is judged against the size of what was differenced.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InequalityCheck {
    pub name: Cow<'static, str>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub rel_slack: f64,
    pub scale: f64,
    pub passed: bool,
    pub context: Context,
}

impl InequalityCheck {
    pub fn new(name: impl Into<Cow<'static, str>>, lhs: f64, rhs: f64) -> Self {
        Self::with_scale(name, lhs, rhs, 0.0)
    }

    pub fn with_scale(name: impl Into<Cow<'static, str>>, lhs: f64, rhs: f64, scale: f64) -> Self {
        let slack = rhs - lhs;
        let rel_slack = slack / rhs.abs().max(scale.abs()).max(SLACK_FLOOR);
        let rel_slack = if rel_slack.is_nan() { f64::NEG_INFINITY } else { rel_slack };
        let passed = rel_slack >= -ToleranceProfile::default().slack_rel;
        Self { name: name.into(), lhs, rhs, slack, rel_slack, scale, passed, context: Context::default() }
    }

    /// `rhs ≥ lhs` read as `lower ≤ upper`; named for two-sided bounds.
    pub fn at_least(name: impl Into<Cow<'static, str>>, upper: f64, lower: f64, scale: f64) -> Self {
        Self::with_scale(name, lower, upper, scale)
    }

    pub fn with_context(mut self, context: Context) -> Self {
        self.context = context;
        self
    }

    /// Re-judges `passed` under another tolerance profile.
    pub fn judged(mut self, tol: &ToleranceProfile) -> Self {
        self.passed = self.passes(tol);
        self
    }

    pub fn passes(&self, tol: &ToleranceProfile) -> bool {
        self.rel_slack >= -tol.slack_rel
    }

    /// Failure beyond rounding: `rel_slack < −1e−6`.
    pub fn is_violation(&self) -> bool {
        !(self.rel_slack >= -VIOLATION_REL)
    }

    /// `|rel_slack| ≤ tol`, used to certify equality cases.
    pub fn is_equality(&self, tol: f64) -> bool {
        self.rel_slack.abs() <= tol
    }

    /// Sharpness ratio `lhs / rhs`; `None` when the right side vanishes
    /// relative to the check's scale.
    pub fn ratio(&self) -> Option<f64> {
        let floor = 1e-12 * self.scale.max(SLACK_FLOOR);
        if !(self.rhs > floor) || !self.lhs.is_finite() {
            return None;
        }
        Some(self.lhs / self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_le_zero_passes() {
        let c = InequalityCheck::new("t", 0.0, 0.0);
        assert!(c.passed);
        assert_eq!(c.rel_slack, 0.0);
        assert_eq!(c.ratio(), None);
    }

    #[test]
    fn verdicts() {
        let c = InequalityCheck::new("t", 1.0 + 1e-12, 1.0);
        assert!(c.passed && !c.is_violation());
        let c = InequalityCheck::new("t", 1.0 + 1e-7, 1.0);
        assert!(!c.passed && !c.is_violation());
        let c = InequalityCheck::new("t", 1.1, 1.0);
        assert!(c.is_violation());
        let strict = ToleranceProfile { slack_rel: 0.0, ..Default::default() };
        assert!(!InequalityCheck::new("t", 1.0 + 1e-15, 1.0).passes(&strict));
    }

    #[test]
    fn scale_tempers_cancellation() {
        let c = InequalityCheck::with_scale("t", 1e-12, 0.0, 100.0);
        assert!(c.passed);
        assert_eq!(c.ratio(), None);
    }

    #[test]
    fn nan_fails() {
        assert!(!InequalityCheck::new("t", f64::NAN, 1.0).passed);
    }
}
