use num_complex::Complex64;

use crate::arith::{ArithFn, ArithmeticTable};
use crate::error::{param, Error, Result};
use crate::expsum::divisor_expsum_hyperbola;
use crate::fourier::grid_values_real;
use crate::numeric::Frequency;

/// `K_n = (1/D_n) Σ_{k≤n} d(k) δ_k` and its transform `T_n(x) = D_n(x)/D_n`.
#[derive(Debug, Clone)]
pub struct DivisorKernel {
    n: u64,
    weights: Vec<f64>,
    total: f64,
}

impl DivisorKernel {
    pub fn new(d: &ArithmeticTable, n: u64) -> Result<Self> {
        if d.kind() != Some(ArithFn::Divisors) {
            return param("divisor kernel needs a divisor table");
        }
        if n == 0 {
            return param("n must be >= 1");
        }
        if n as usize > d.len() {
            return Err(Error::Resource(format!("n = {n} exceeds the sieve bound {}", d.len())));
        }
        let total = d.summatory(n as usize);
        let weights = (1..=n as usize).map(|k| d.get(k) / total).collect();
        Ok(Self { n, weights, total })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `D_n`.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// `d(k)/D_n` for `k = 1..=n`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `T_n(x)` in `O(√n)`.
    pub fn eval(&self, x: impl Into<Frequency>) -> Complex64 {
        divisor_expsum_hyperbola(self.n, x).expect("n >= 1").value / self.total
    }

    /// `T_n(j/G)` for `j < G`.
    pub fn eval_grid(&self, g: usize) -> Result<Vec<Complex64>> {
        grid_values_real(&self.weights, 1, g)
    }
}
