use num_complex::Complex64;

use super::LatticeSignal;
use crate::arcs::ArcParameters;
use crate::arith::{ArithFn, ArithmeticTable};
use crate::error::{param, Error, Result};
use crate::kernels::{inverse_transform_grid, ApproximantKernel, ModelForm};

/// A family of kernels `K_n` on `ℤ` indexed by `n ≥ 1`.
pub trait KernelFamily: Sync {
    fn name(&self) -> String;
    fn kernel(&self, n: u64) -> Result<LatticeSignal>;
}

/// `K_n = (1/W_n) Σ_{k=1}^n w_k δ_k` with `W_n = Σ_{k≤n} |w_k|`.
#[derive(Debug, Clone, Copy)]
pub struct WeightFamily<'a> {
    table: &'a ArithmeticTable,
}

impl<'a> WeightFamily<'a> {
    pub fn new(table: &'a ArithmeticTable) -> Self {
        Self { table }
    }

    /// The divisor kernels `d(k)/D_n`.
    pub fn divisor(table: &'a ArithmeticTable) -> Result<Self> {
        if table.kind() != Some(ArithFn::Divisors) {
            return param("divisor family needs a divisor table");
        }
        Ok(Self { table })
    }
}

impl KernelFamily for WeightFamily<'_> {
    fn name(&self) -> String {
        self.table.label().to_string()
    }

    fn kernel(&self, n: u64) -> Result<LatticeSignal> {
        if n == 0 {
            return param("n must be >= 1");
        }
        if n as usize > self.table.len() {
            return Err(Error::Resource(format!(
                "n = {n} exceeds the table bound {}",
                self.table.len()
            )));
        }
        let w = self.table.abs_summatory(n as usize);
        if w == 0.0 {
            return Err(Error::Degenerate(format!("W_{n} = 0")));
        }
        let values = (1..=n as usize)
            .map(|k| Complex64::new(self.table.get(k) / w, 0.0))
            .collect();
        Ok(LatticeSignal::new(1, values))
    }
}

/// Cesàro kernels `κ_n = (1/n) Σ_{k=1}^n δ_k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CesaroFamily;

impl KernelFamily for CesaroFamily {
    fn name(&self) -> String {
        "cesaro".into()
    }

    fn kernel(&self, n: u64) -> Result<LatticeSignal> {
        if n == 0 {
            return param("n must be >= 1");
        }
        Ok(LatticeSignal::new(
            1,
            vec![Complex64::new(1.0 / n as f64, 0.0); n as usize],
        ))
    }
}

/// The same kernel for every `n`.
#[derive(Debug, Clone)]
pub struct ConstantFamily(pub LatticeSignal);

impl KernelFamily for ConstantFamily {
    fn name(&self) -> String {
        "constant".into()
    }

    fn kernel(&self, _n: u64) -> Result<LatticeSignal> {
        Ok(self.0.clone())
    }
}

/// Kernels whose transforms are the approximants `φ_n`, recovered by sampling
/// `φ_n` on `G = grid_factor · n` points (rounded up to a power of two) and
/// keeping coefficients with `|k| ≤ support_factor · n`.
#[derive(Debug, Clone, Copy)]
pub struct ApproximantFamily {
    pub s: f64,
    pub tau: f64,
    pub m: u32,
    pub form: ModelForm,
    pub support_factor: usize,
    pub grid_factor: usize,
    pub tail_tolerance: f64,
}

impl ApproximantFamily {
    /// Desk-scale arcs, `|k| ≤ 2n`, `G ≥ 8n`, tail tolerance 1e-10.
    pub fn desk(s: f64, tau: f64, m: u32) -> Self {
        Self {
            s,
            tau,
            m,
            form: ModelForm::default(),
            support_factor: 2,
            grid_factor: 8,
            tail_tolerance: crate::kernels::DEFAULT_TAIL_TOLERANCE,
        }
    }

    pub fn approximant(&self, n: u64) -> Result<ApproximantKernel> {
        Ok(ApproximantKernel::new(
            ArcParameters::desk(n, self.s, self.tau, self.m)?,
            self.form,
        ))
    }
}

impl KernelFamily for ApproximantFamily {
    fn name(&self) -> String {
        "approximant".into()
    }

    fn kernel(&self, n: u64) -> Result<LatticeSignal> {
        let b = self.support_factor.max(1) * n as usize;
        let g = (self.grid_factor.max(4 * self.support_factor.max(1)) * n as usize).next_power_of_two();
        let samples = self.approximant(n)?.eval_grid(g)?;
        Ok(inverse_transform_grid(&samples, b, self.tail_tolerance)?.signal)
    }
}
