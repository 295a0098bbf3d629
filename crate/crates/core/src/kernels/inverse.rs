use num_complex::Complex64;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::fourier::{forward_in_place, inverse_in_place};
use crate::numeric::KahanSum;
use crate::shiftmodel::LatticeSignal;

/// Fourier coefficients of a sampled 1-periodic function, truncated to `|k| ≤ B`.
#[derive(Debug, Clone, Serialize)]
pub struct InverseTransform {
    pub signal: LatticeSignal,
    /// Share of `Σ|ĝ(k)|²` carried by frequencies `|k| > B`.
    pub tail_mass: f64,
    /// `max_j |f(j/G) - Σ_{|k|≤B} ĝ(k) e(kj/G)|`.
    pub reconstruction_error: f64,
}

/// Default bound on [`InverseTransform::tail_mass`].
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-10;

/// `ĝ(k) = (1/G) Σ_j f(j/G) e(-kj/G)` (the trapezoid rule for `∫₀¹ f e(-kx)`),
/// kept for `|k| ≤ B`. Needs `G ≥ 4B`; a tail above `tol` means the grid
/// aliases and is reported as a resolution error.
pub fn inverse_transform_grid(samples: &[Complex64], b: usize, tol: f64) -> Result<InverseTransform> {
    let g = samples.len();
    if b < 1 {
        return param("support bound B must be >= 1");
    }
    if g < 4 * b {
        return param(format!("grid of {g} points is below 4B = {}", 4 * b));
    }
    let mut coeffs = samples.to_vec();
    forward_in_place(&mut coeffs);
    coeffs.iter_mut().for_each(|c| *c /= g as f64);
    let freq = |i: usize| if i <= g / 2 { i as i64 } else { i as i64 - g as i64 };
    let mut inside = KahanSum::new();
    let mut outside = KahanSum::new();
    for (i, c) in coeffs.iter().enumerate() {
        if freq(i).unsigned_abs() as usize <= b {
            inside.add(c.norm_sqr());
        } else {
            outside.add(c.norm_sqr());
        }
    }
    let total = inside.value() + outside.value();
    let tail_mass = if total > 0.0 { outside.value() / total } else { 0.0 };
    if tail_mass > tol {
        return Err(Error::Resolution(format!(
            "{tail_mass:.3e} of the energy lies beyond |k| = {b}; raise B or the grid"
        )));
    }
    let bi = b as i64;
    let values: Vec<Complex64> = (-bi..=bi).map(|k| coeffs[k.rem_euclid(g as i64) as usize]).collect();
    let mut rebuilt = vec![Complex64::new(0.0, 0.0); g];
    for k in -bi..=bi {
        rebuilt[k.rem_euclid(g as i64) as usize] = coeffs[k.rem_euclid(g as i64) as usize];
    }
    inverse_in_place(&mut rebuilt);
    let reconstruction_error = rebuilt
        .iter()
        .zip(samples)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(InverseTransform {
        signal: LatticeSignal::new(-bi, values),
        tail_mass,
        reconstruction_error,
    })
}

/// Samples `f` on `j/G` and applies [`inverse_transform_grid`].
pub fn inverse_transform(f: impl Fn(f64) -> Complex64, b: usize, g: usize, tol: f64) -> Result<InverseTransform> {
    crate::fourier::check_grid(g)?;
    let samples: Vec<Complex64> = (0..g).map(|j| f(j as f64 / g as f64)).collect();
    inverse_transform_grid(&samples, b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{ModelForm, ModelKernel};

    #[test]
    fn constant_gives_delta() {
        let inv = inverse_transform(|_| Complex64::new(1.0, 0.0), 8, 64, DEFAULT_TAIL_TOLERANCE).unwrap();
        for k in -8..=8 {
            let expected = if k == 0 { 1.0 } else { 0.0 };
            assert!((inv.signal.get(k) - Complex64::new(expected, 0.0)).norm() < 1e-14);
        }
        assert!(inv.reconstruction_error < 1e-14);
    }

    #[test]
    fn recovers_model_weights() {
        let n = 300u64;
        let model = ModelKernel::new(n, 1, ModelForm::LogScaled).unwrap();
        let g = 2048;
        let grid = crate::fourier::grid_values_real(&model.weights(), 1, g).unwrap();
        let inv = inverse_transform_grid(&grid, 400, DEFAULT_TAIL_TOLERANCE).unwrap();
        for k in 1..=n {
            assert!((inv.signal.get(k as i64).re - model.weight(k)).abs() < 1e-6);
        }
        assert!(inv.signal.get(0).norm() < 1e-12 && inv.signal.get(-3).norm() < 1e-12);
    }

    #[test]
    fn parseval() {
        let f = |x: f64| {
            let c = crate::numeric::centered_turn(x);
            Complex64::new((-(c * c) * 200.0).exp(), 0.0) * crate::numeric::e(3.0 * x)
        };
        let g = 4096;
        let inv = inverse_transform(f, 256, g, 1e-12).unwrap();
        let energy: f64 = inv.signal.values().iter().map(|c| c.norm_sqr()).sum();
        let integral: f64 = (0..g).map(|j| f(j as f64 / g as f64).norm_sqr()).sum::<f64>() / g as f64;
        assert!((energy - integral).abs() < 1e-5 * integral);
    }

    #[test]
    fn aliasing_and_size_errors() {
        let spiky = |x: f64| Complex64::new(if x < 0.01 { 1.0 } else { 0.0 }, 0.0);
        assert!(matches!(
            inverse_transform(spiky, 4, 64, 1e-10),
            Err(Error::Resolution(_))
        ));
        assert!(matches!(
            inverse_transform(spiky, 20, 64, 1e-10),
            Err(Error::Parameter(_))
        ));
    }
}
