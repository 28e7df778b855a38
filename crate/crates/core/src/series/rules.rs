use alloc::vec::Vec;

use num_traits::{Float, Zero};

use crate::linalg::C64;

/// Coefficient law of a power series `Σ cₙ zⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub enum Rule {
    Zero,
    /// `z`.
    Identity,
    /// `exp z`.
    Exp,
    /// `exp z − 1`.
    ExpMinusOne,
    Cos,
    Sin,
    Cosh,
    Sinh,
    /// `1/(1 − z)`.
    Geom,
    /// `1/(1 + z)`.
    GeomAlt,
    /// `z/(1 − z)`.
    GeomMinusOne,
    /// `−z/(1 + z)`.
    GeomAltMinusOne,
    /// `ln(1/(1 + z)) = Σ (−1)ⁿ zⁿ/n`.
    LogOnePlusInv,
    /// `ln(1/(1 − z)) = Σ zⁿ/n`.
    LogOneMinusInv,
    /// `½ ln((1 + z)/(1 − z))`.
    HalfLogRatio,
    /// `tanh⁻¹ z`, the same series as [`Rule::HalfLogRatio`].
    Artanh,
    /// `sin⁻¹ z`.
    Arcsin,
    /// `₂F₁(a, b; c; z)` for `a, b, c > 0`, via the ratio recurrence.
    Gauss2F1 { a: f64, b: f64, c: f64 },
    /// Polynomial with the given coefficients.
    Custom(Vec<C64>),
}

impl Rule {
    /// Radius of convergence; infinite for entire functions and polynomials.
    pub fn radius(&self) -> f64 {
        match self {
            Rule::Zero
            | Rule::Identity
            | Rule::Exp
            | Rule::ExpMinusOne
            | Rule::Cos
            | Rule::Sin
            | Rule::Cosh
            | Rule::Sinh
            | Rule::Custom(_) => f64::INFINITY,
            _ => 1.0,
        }
    }

    /// Number of possibly nonzero coefficients, for polynomials.
    pub(crate) fn support(&self) -> Option<usize> {
        match self {
            Rule::Zero => Some(0),
            Rule::Identity => Some(2),
            Rule::Custom(c) => Some(c.len()),
            _ => None,
        }
    }

    /// The rule with coefficients `|cₙ|`.
    pub fn absolute(&self) -> Rule {
        match self {
            Rule::Cos => Rule::Cosh,
            Rule::Sin => Rule::Sinh,
            Rule::GeomAlt => Rule::Geom,
            Rule::GeomAltMinusOne => Rule::GeomMinusOne,
            Rule::LogOnePlusInv => Rule::LogOneMinusInv,
            Rule::Custom(c) => Rule::Custom(c.iter().map(|z| C64::new(z.norm(), 0.0)).collect()),
            other => other.clone(),
        }
    }

    /// Closed-form value, when one is known.
    pub fn closed_form(&self, z: C64) -> Option<C64> {
        let one = C64::new(1.0, 0.0);
        Some(match self {
            Rule::Zero => C64::zero(),
            Rule::Identity => z,
            Rule::Exp => z.exp(),
            Rule::ExpMinusOne => exp_minus_one(z),
            Rule::Cos => z.cos(),
            Rule::Sin => z.sin(),
            Rule::Cosh => z.cosh(),
            Rule::Sinh => z.sinh(),
            Rule::Geom => one / (one - z),
            Rule::GeomAlt => one / (one + z),
            Rule::GeomMinusOne => z / (one - z),
            Rule::GeomAltMinusOne => -z / (one + z),
            Rule::LogOnePlusInv => -log1p(z),
            Rule::LogOneMinusInv => -log1p(-z),
            Rule::HalfLogRatio | Rule::Artanh => (log1p(z) - log1p(-z)).scale(0.5),
            Rule::Arcsin => arcsin(z),
            Rule::Gauss2F1 { a, b, c } if *a == 1.0 && *b == 1.0 && *c == 2.0 => {
                if z.is_zero() {
                    one
                } else {
                    -log1p(-z) / z
                }
            }
            Rule::Gauss2F1 { .. } => return None,
            Rule::Custom(c) => c.iter().rev().fold(C64::zero(), |acc, &k| acc * z + k),
        })
    }
}

// ln(1 + w) without cancellation for small w.
fn log1p(w: C64) -> C64 {
    let u = C64::new(1.0, 0.0) + w;
    let d = u - C64::new(1.0, 0.0);
    if d.is_zero() {
        w
    } else {
        u.ln() * (w / d)
    }
}

fn exp_minus_one(z: C64) -> C64 {
    let h = z.scale(0.5);
    (h.exp() * h.sinh()).scale(2.0)
}

fn arcsin(z: C64) -> C64 {
    if z.im == 0.0 && z.re.abs() <= 1.0 {
        return C64::new(z.re.asin(), 0.0);
    }
    if z.norm() < 1e-4 {
        let z2 = z * z;
        return z * (C64::new(1.0, 0.0) + z2 * (C64::new(1.0 / 6.0, 0.0) + z2.scale(3.0 / 40.0)));
    }
    z.asin()
}

/// Coefficients `c₀, c₁, …` of a rule, generated by recurrences.
#[derive(Debug, Clone)]
pub struct CoefficientStream<'a> {
    rule: &'a Rule,
    n: usize,
    // 1/n! for the exponential families, g_k for arcsin, cₙ for ₂F₁.
    aux: f64,
}

impl<'a> CoefficientStream<'a> {
    pub fn new(rule: &'a Rule) -> Self {
        Self { rule, n: 0, aux: 1.0 }
    }
}

impl Iterator for CoefficientStream<'_> {
    type Item = C64;

    fn next(&mut self) -> Option<C64> {
        let n = self.n;
        let nf = n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let value = match self.rule {
            Rule::Zero => 0.0,
            Rule::Identity => (n == 1) as u8 as f64,
            Rule::Exp | Rule::ExpMinusOne | Rule::Cos | Rule::Sin | Rule::Cosh | Rule::Sinh => {
                if n > 0 {
                    self.aux /= nf;
                }
                let f = self.aux;
                match self.rule {
                    Rule::Exp => f,
                    Rule::ExpMinusOne => if n == 0 { 0.0 } else { f },
                    Rule::Cosh => if n % 2 == 0 { f } else { 0.0 },
                    Rule::Sinh => if n % 2 == 1 { f } else { 0.0 },
                    Rule::Cos => if n % 2 == 0 { if n % 4 == 0 { f } else { -f } } else { 0.0 },
                    _ => if n % 2 == 1 { if n % 4 == 1 { f } else { -f } } else { 0.0 },
                }
            }
            Rule::Geom => 1.0,
            Rule::GeomAlt => sign,
            Rule::GeomMinusOne => if n == 0 { 0.0 } else { 1.0 },
            Rule::GeomAltMinusOne => if n == 0 { 0.0 } else { sign },
            Rule::LogOnePlusInv => if n == 0 { 0.0 } else { sign / nf },
            Rule::LogOneMinusInv => if n == 0 { 0.0 } else { 1.0 / nf },
            Rule::HalfLogRatio | Rule::Artanh => if n % 2 == 1 { 1.0 / nf } else { 0.0 },
            Rule::Arcsin => {
                if n % 2 == 1 {
                    let k = (n - 1) / 2;
                    let g = self.aux;
                    self.aux = g * (k as f64 + 0.5) / (k as f64 + 1.0);
                    g / nf
                } else {
                    0.0
                }
            }
            Rule::Gauss2F1 { a, b, c } => {
                let value = self.aux;
                self.aux = value * (nf + a) * (nf + b) / ((nf + 1.0) * (nf + c));
                value
            }
            Rule::Custom(c) => {
                let z = c.get(n).copied().unwrap_or_else(C64::zero);
                self.n += 1;
                return Some(z);
            }
        };
        self.n += 1;
        Some(C64::new(value, 0.0))
    }
}
