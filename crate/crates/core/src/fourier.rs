//! Evaluation of trigonometric polynomials on the uniform grid `j/G`.

use num_complex::Complex64;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Largest grid accepted by the batch evaluators (2^26 points, 1 GiB of complex values).
pub const MAX_GRID: usize = 1 << 26;

pub(crate) fn check_grid(g: usize) -> Result<()> {
    if g == 0 {
        return Err(Error::Parameter("grid size must be >= 1".into()));
    }
    if g > MAX_GRID {
        return Err(Error::Resource(format!("grid of {g} points exceeds {MAX_GRID}")));
    }
    Ok(())
}

/// `Σ_k c(k) e(k j / G)` for `j = 0..G`, where `c` is supported on
/// `offset..offset + coeffs.len()`. Coefficients are folded modulo `G`
/// and a single inverse FFT is applied.
pub fn grid_values(coeffs: &[Complex64], offset: i64, g: usize) -> Result<Vec<Complex64>> {
    check_grid(g)?;
    let mut buf = vec![Complex64::new(0.0, 0.0); g];
    fold_into(&mut buf, coeffs.iter().copied(), offset);
    inverse_in_place(&mut buf);
    Ok(buf)
}

/// Real-coefficient variant of [`grid_values`].
pub fn grid_values_real(coeffs: &[f64], offset: i64, g: usize) -> Result<Vec<Complex64>> {
    check_grid(g)?;
    let mut buf = vec![Complex64::new(0.0, 0.0); g];
    fold_into(&mut buf, coeffs.iter().map(|&c| Complex64::new(c, 0.0)), offset);
    inverse_in_place(&mut buf);
    Ok(buf)
}

fn fold_into(buf: &mut [Complex64], coeffs: impl Iterator<Item = Complex64>, offset: i64) {
    let g = buf.len() as i64;
    let mut slot = offset.rem_euclid(g) as usize;
    for c in coeffs {
        buf[slot] += c;
        slot += 1;
        if slot == buf.len() {
            slot = 0;
        }
    }
}

/// Unnormalised inverse DFT: `x_j ← Σ_k x_k e(jk/G)`.
pub fn inverse_in_place(buf: &mut [Complex64]) {
    if buf.len() > 1 {
        FftPlanner::new().plan_fft_inverse(buf.len()).process(buf);
    }
}

/// A reusable inverse transform of length `g` (shareable across threads).
pub fn inverse_plan(g: usize) -> Arc<dyn Fft<f64>> {
    FftPlanner::new().plan_fft_inverse(g)
}

/// Unnormalised forward DFT: `x_k ← Σ_j x_j e(-jk/G)`.
pub fn forward_in_place(buf: &mut [Complex64]) {
    if buf.len() > 1 {
        FftPlanner::new().plan_fft_forward(buf.len()).process(buf);
    }
}
