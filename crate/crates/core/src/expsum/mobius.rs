use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{ArithFn, ArithmeticTable};
use crate::error::{param, Error, Result};
use crate::expsum::divisor::weighted_expsum;
use crate::fourier::grid_values_real;
use crate::numeric::Frequency;

fn require_mobius(mu: &ArithmeticTable, n: u64) -> Result<()> {
    if mu.kind() != Some(ArithFn::Mobius) {
        return param(format!("expected a Möbius table, got '{}'", mu.label()));
    }
    if n == 0 {
        return param("n must be >= 1");
    }
    if n as usize > mu.len() {
        return Err(Error::Resource(format!("n = {n} exceeds the sieve bound {}", mu.len())));
    }
    Ok(())
}

/// `Σ_{k≤n} μ(k) e(kx)`.
pub fn mobius_expsum(mu: &ArithmeticTable, n: u64, x: impl Into<Frequency>) -> Result<Complex64> {
    require_mobius(mu, n)?;
    weighted_expsum(mu, n, x.into())
}

/// Grid supremum of `|Σ_{k≤n} μ(k) e(kj/G)|`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MobiusSup {
    pub n: u64,
    pub grid: usize,
    pub sup: f64,
    pub argmax: usize,
}

impl MobiusSup {
    /// `sup · (log n)^h / n`, bounded when the sum decays like `n/(log n)^h`.
    pub fn decay(&self, h: u32) -> f64 {
        self.sup * (self.n as f64).ln().powi(h as i32) / self.n as f64
    }

    /// `sup / n`.
    pub fn relative(&self) -> f64 {
        self.sup / self.n as f64
    }
}

pub fn mobius_sup(mu: &ArithmeticTable, n: u64, g: usize) -> Result<MobiusSup> {
    require_mobius(mu, n)?;
    let coeffs: Vec<f64> = (1..=n as usize).map(|k| mu.get(k)).collect();
    let values = grid_values_real(&coeffs, 1, g)?;
    let (argmax, sup) = values
        .iter()
        .map(|v| v.norm())
        .enumerate()
        .fold(
            (0, f64::NEG_INFINITY),
            |best, (j, v)| if v > best.1 { (j, v) } else { best },
        );
    Ok(MobiusSup {
        n,
        grid: g,
        sup,
        argmax,
    })
}
