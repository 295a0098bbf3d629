use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::numeric::KahanSum;

/// A finitely supported sequence `g: ℤ → ℂ`, stored on `offset..offset + len`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSignal {
    offset: i64,
    values: Vec<Complex64>,
}

impl LatticeSignal {
    pub fn new(offset: i64, values: Vec<Complex64>) -> Self {
        Self { offset, values }
    }

    pub fn from_real(offset: i64, values: &[f64]) -> Self {
        Self::new(offset, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// The unit mass at `at`.
    pub fn delta(at: i64) -> Self {
        Self::new(at, vec![Complex64::new(1.0, 0.0)])
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new())
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One past the last stored index.
    pub fn end(&self) -> i64 {
        self.offset + self.values.len() as i64
    }

    /// `g(k)`, zero outside the stored window.
    pub fn get(&self, k: i64) -> Complex64 {
        let i = k - self.offset;
        if i < 0 || i >= self.values.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[i as usize]
        }
    }

    /// `ℓ^p` norm for `p ∈ [1, ∞]` (`f64::INFINITY` for the sup norm).
    pub fn norm(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) {
            return param("p must be in [1, ∞]");
        }
        Ok(lp_norm(self.values.iter().map(|v| v.norm()), p))
    }

    /// `‖g‖_p^p` (for finite `p`).
    pub fn norm_pow(&self, p: f64) -> f64 {
        self.values
            .iter()
            .map(|v| v.norm().powf(p))
            .collect::<KahanSum>()
            .value()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0 && v.re >= 0.0)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.offset, self.values.iter().map(|v| v * c).collect())
    }

    /// Pointwise `self + c·other` on the union of the windows.
    pub fn add_scaled(&self, other: &Self, c: Complex64) -> Self {
        if self.is_empty() {
            return other.scale(c);
        }
        if other.is_empty() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = self.end().max(other.end());
        Self::new(lo, (lo..hi).map(|k| self.get(k) + other.get(k) * c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, Complex64::new(-1.0, 0.0))
    }

    /// Values on `lo..hi`, zero-padded.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<Complex64> {
        (lo..hi).map(|k| self.get(k)).collect()
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer(out, self)?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self> {
        Ok(serde_json::from_reader(input)?)
    }
}

pub(crate) fn lp_norm(abs: impl Iterator<Item = f64>, p: f64) -> f64 {
    if p.is_infinite() {
        abs.fold(0.0, f64::max)
    } else {
        abs.map(|a| a.powf(p)).collect::<KahanSum>().value().powf(1.0 / p)
    }
}
