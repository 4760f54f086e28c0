//! Dense real vectors with the standard inner product.

use std::fmt;
use std::ops::Index;

use ndarray::Array1;

use crate::error::{Error, Result};

/// A point of the ambient space. Coordinates are always finite when built
/// through [`Vector::new`].
#[derive(Clone, PartialEq)]
pub struct Vector(Array1<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("vector must have positive dimension".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteInput("Vector::new"));
        }
        Ok(Self(Array1::from(coords)))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(Array1::zeros(dim))
    }

    /// `scale * e_index`.
    pub fn unit(dim: usize, index: usize, scale: f64) -> Self {
        let mut v = Array1::zeros(dim);
        v[index] = scale;
        Self(v)
    }

    pub(crate) fn from_array(a: Array1<f64>) -> Self {
        Self(a)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_array(&self) -> &Array1<f64> {
        &self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice().expect("vectors are contiguous")
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.0.to_vec()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch { expected, found: self.dim() });
        }
        Ok(())
    }

    /// `self - other`.
    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(&self.0 - &other.0)
    }

    /// `self + other`.
    pub fn add(&self, other: &Vector) -> Vector {
        Vector(&self.0 + &other.0)
    }

    /// `self + step * dir`.
    pub fn add_scaled(&self, step: f64, dir: &Vector) -> Vector {
        let mut out = self.0.clone();
        out.scaled_add(step, &dir.0);
        Vector(out)
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.dot(&self.0)
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn norm_l1(&self) -> f64 {
        self.0.iter().map(|c| c.abs()).sum()
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Standard dot product.
pub fn inner(a: &Vector, b: &Vector) -> Result<f64> {
    b.check_dim(a.dim())?;
    Ok(a.0.dot(&b.0))
}

/// Euclidean norm induced by [`inner`].
pub fn norm(a: &Vector) -> f64 {
    a.norm_sq().sqrt()
}
