use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_traits::{Float, Zero};

use super::C64;
use crate::error::{Error, Result};

/// Column vector in `ℂⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<C64>);

impl Vector {
    pub fn new(entries: Vec<C64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(entries))
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> C64) -> Self {
        Self((0..dim).map(f).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_| C64::zero())
    }

    /// `i`-th standard basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        Self::from_fn(dim, |k| if k == i { C64::new(1.0, 0.0) } else { C64::zero() })
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    /// `⟨self, other⟩ = Σ selfᵢ · conj(otherᵢ)`, linear in the first slot.
    pub fn inner(&self, other: &Vector) -> C64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in inner product");
        self.0.iter().zip(&other.0).map(|(&a, &b)| a * b.conj()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.is_zero())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self(self.0.iter().map(|&z| z * c).collect())
    }
}

impl Index<usize> for Vector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}
