use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DynamicalSystem, Observable};
use crate::arith::ArithmeticTable;
use crate::error::{param, Error, Result};
use crate::expsum::divisor_expsum_hyperbola;
use crate::numeric::{fmt_f64, Frequency};

/// Orbit points are generated in blocks of this many steps.
const ORBIT_CHUNK: usize = 1 << 16;

/// Weighted averages `A_n f(x₀) = (1/W_n) Σ_{k=1}^n w_k f(τ^k x₀)` on a grid of `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageSeries {
    pub system: String,
    pub weights: String,
    pub n_grid: Vec<u64>,
    pub values: Vec<Complex64>,
    /// `W_n = Σ_{k≤n} |w_k|` for each grid point.
    pub normalizers: Vec<f64>,
}

impl AverageSeries {
    /// [`convergence_diagnostic`] of the values.
    pub fn convergence_defect(&self, tail_fraction: f64) -> Result<f64> {
        convergence_diagnostic(&self.values, tail_fraction)
    }
}

fn check_grid(n_grid: &[u64]) -> Result<u64> {
    if n_grid.is_empty() || n_grid[0] == 0 {
        return param("the n grid must be non-empty and start at n >= 1");
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return param("the n grid must be strictly increasing");
    }
    Ok(*n_grid.last().unwrap())
}

/// Streams `(k, f(τ^k x₀))` for `k = 1..=n_max` and reports the running sum
/// `Σ c(k) f(τ^k x₀)` at every grid point.
fn running_sums(
    system: &DynamicalSystem,
    f: &Observable,
    x0: f64,
    n_grid: &[u64],
    coeff: impl Fn(usize) -> f64,
) -> Vec<Complex64> {
    let n_max = *n_grid.last().unwrap();
    let mut out = Vec::with_capacity(n_grid.len());
    let mut next = 0;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut k = 1u64;
    while k <= n_max {
        let len = ORBIT_CHUNK.min((n_max - k + 1) as usize);
        for (i, x) in system.orbit(x0, k, len).into_iter().enumerate() {
            let kk = k + i as u64;
            let c = coeff(kk as usize);
            if c != 0.0 {
                acc += f.eval(x) * c;
            }
            if kk == n_grid[next] {
                out.push(acc);
                next += 1;
            }
        }
        k += len as u64;
    }
    out
}

/// `A_n f(x₀)` for every `n` in `n_grid` (strictly increasing) in one orbit pass.
pub fn weighted_average(
    system: &DynamicalSystem,
    weights: &ArithmeticTable,
    f: &Observable,
    x0: f64,
    n_grid: &[u64],
) -> Result<AverageSeries> {
    let n_max = check_grid(n_grid)?;
    if n_max as usize > weights.len() {
        return Err(Error::Resource(format!(
            "weight table '{}' covers N = {} but the grid needs {}",
            weights.label(),
            weights.len(),
            n_max
        )));
    }
    let sums = running_sums(system, f, x0, n_grid, |k| weights.get(k));
    let mut normalizers = Vec::with_capacity(n_grid.len());
    let mut values = Vec::with_capacity(n_grid.len());
    // W_n accumulated in the same order as the numerator, so f ≡ 1 with
    // non-negative weights gives exactly 1
    let mut w = 0.0;
    let mut k = 1usize;
    for (&n, s) in n_grid.iter().zip(sums) {
        while k as u64 <= n {
            let c = weights.get(k);
            if c != 0.0 {
                w += c.abs();
            }
            k += 1;
        }
        if w == 0.0 {
            return Err(Error::Degenerate(format!("W_{n} = 0")));
        }
        normalizers.push(w);
        values.push(s / w);
    }
    Ok(AverageSeries {
        system: system.name().into(),
        weights: weights.label().into(),
        n_grid: n_grid.to_vec(),
        values,
        normalizers,
    })
}

/// `|D_n(α)| / D_n` for every `n` in the grid, with `D_n(α) = Σ_{k≤n} d(k) e(kα)`.
pub fn rotation_character_limit(alpha: f64, n_grid: &[u64]) -> Result<Vec<f64>> {
    check_grid(n_grid)?;
    if !(0.0..1.0).contains(&alpha) {
        return param("alpha must lie in [0, 1)");
    }
    n_grid
        .iter()
        .map(|&n| {
            let top = divisor_expsum_hyperbola(n, Frequency::Real(alpha))?.value.norm();
            let dn = divisor_expsum_hyperbola(n, Frequency::ratio(0, 1))?.value.re;
            Ok(top / dn)
        })
        .collect()
}

/// Möbius-weighted averages `M_{n,h} = (log n)^h / n · Σ_{k≤n} μ(k) f(τ^k x₀)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MobiusSeries {
    pub h: f64,
    pub n_grid: Vec<u64>,
    pub values: Vec<Complex64>,
    /// `sup_{m ≥ n} |M_{m,h}|` over the grid points at or after `n`.
    pub tail_sup: Vec<f64>,
}

pub fn mobius_weighted(
    system: &DynamicalSystem,
    mu: &ArithmeticTable,
    h: f64,
    f: &Observable,
    x0: f64,
    n_grid: &[u64],
) -> Result<MobiusSeries> {
    let n_max = check_grid(n_grid)?;
    if !(h >= 0.0) {
        return param("h must be non-negative");
    }
    if n_max as usize > mu.len() {
        return Err(Error::Resource(format!(
            "Möbius table covers N = {} but the grid needs {}",
            mu.len(),
            n_max
        )));
    }
    let sums = running_sums(system, f, x0, n_grid, |k| mu.get(k));
    let values: Vec<Complex64> = n_grid
        .iter()
        .zip(sums)
        .map(|(&n, s)| s * ((n as f64).ln().powf(h) / n as f64))
        .collect();
    let mut tail_sup = vec![0.0; values.len()];
    let mut running = 0.0f64;
    for i in (0..values.len()).rev() {
        running = running.max(values[i].norm());
        tail_sup[i] = running;
    }
    Ok(MobiusSeries {
        h,
        n_grid: n_grid.to_vec(),
        values,
        tail_sup,
    })
}

/// Largest pairwise distance among the last `⌈len · tail_fraction⌉` entries.
pub fn convergence_diagnostic(series: &[Complex64], tail_fraction: f64) -> Result<f64> {
    if series.len() < 4 {
        return param("the series needs at least 4 entries");
    }
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return param("tail_fraction must lie in (0, 1]");
    }
    let count = ((series.len() as f64 * tail_fraction).ceil() as usize).clamp(1, series.len());
    let tail = &series[series.len() - count..];
    let mut worst = 0.0f64;
    for (i, a) in tail.iter().enumerate() {
        for b in &tail[i + 1..] {
            worst = worst.max((a - b).norm());
        }
    }
    Ok(worst)
}

/// CSV with header `system,weights,n,re_avg,im_avg`.
pub fn write_average_csv<W: Write>(series: &[AverageSeries], mut out: W) -> Result<()> {
    writeln!(out, "system,weights,n,re_avg,im_avg")?;
    for s in series {
        for (n, v) in s.n_grid.iter().zip(&s.values) {
            writeln!(
                out,
                "{},{},{},{},{}",
                s.system,
                s.weights,
                n,
                fmt_f64(v.re),
                fmt_f64(v.im)
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{sieve, ArithFn};
    use crate::expsum::divisor_expsum_direct;
    use crate::numeric::e;

    fn golden() -> f64 {
        (5f64.sqrt() - 1.0) / 2.0
    }

    #[test]
    fn constant_observable_averages_to_one() {
        let d = sieve(ArithFn::Divisors, 5000).unwrap();
        for sys in [
            DynamicalSystem::Rotation { alpha: golden() },
            DynamicalSystem::Doubling { seed: Some(1) },
            DynamicalSystem::Bernoulli { seed: 2 },
        ] {
            let s = weighted_average(&sys, &d, &Observable::constant(1.0), 0.3, &[1, 10, 999, 5000]).unwrap();
            assert!(s.values.iter().all(|v| *v == Complex64::new(1.0, 0.0)));
        }
        let sq = sieve(ArithFn::Power(-0.5), 3000).unwrap();
        let s = weighted_average(
            &DynamicalSystem::Bernoulli { seed: 5 },
            &sq,
            &Observable::constant(1.0),
            0.0,
            &[7, 3000],
        )
        .unwrap();
        assert!(s.values.iter().all(|v| *v == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn rotation_identity_matches_expsum() {
        let d = sieve(ArithFn::Divisors, 20_000).unwrap();
        let f = Observable::Character { m: 1 };
        for &(alpha, x0) in &[(golden(), 0.1), (0.3, 0.77), (2f64.sqrt() - 1.0, 0.0)] {
            let grid = [17, 1000, 20_000];
            let s = weighted_average(&DynamicalSystem::Rotation { alpha }, &d, &f, x0, &grid).unwrap();
            for (i, &n) in grid.iter().enumerate() {
                let ds = divisor_expsum_direct(&d, n, alpha).unwrap().value;
                let want = e(x0) * ds / d.summatory(n as usize);
                assert!((s.values[i] - want).norm() < 1e-9, "alpha={alpha} n={n}");
            }
        }
    }

    #[test]
    fn unit_weights_reproduce_birkhoff_averages() {
        let one = sieve(ArithFn::One, 4096).unwrap();
        let sys = DynamicalSystem::Doubling { seed: Some(11) };
        let f = Observable::Interval { a: 0.1, b: 0.35 };
        let s = weighted_average(&sys, &one, &f, 0.0, &[100, 4096]).unwrap();
        let orbit = sys.orbit(0.0, 1, 4096);
        for (i, &n) in [100usize, 4096].iter().enumerate() {
            let direct: Complex64 = orbit[..n].iter().map(|&x| f.eval(x)).sum::<Complex64>() / n as f64;
            assert!((s.values[i] - direct).norm() < 1e-14);
        }
    }

    #[test]
    fn averages_are_linear() {
        let d = sieve(ArithFn::Divisors, 3000).unwrap();
        let sys = DynamicalSystem::Rotation { alpha: golden() };
        let f = Observable::HaarStep;
        let g = Observable::Character { m: 3 };
        let c = Complex64::new(0.5, -2.0);
        let sum = Observable::Sum {
            terms: vec![(Complex64::new(1.0, 0.0), f.clone()), (c, g.clone())],
        };
        let grid = [10, 3000];
        let a = weighted_average(&sys, &d, &f, 0.2, &grid).unwrap();
        let b = weighted_average(&sys, &d, &g, 0.2, &grid).unwrap();
        let s = weighted_average(&sys, &d, &sum, 0.2, &grid).unwrap();
        for i in 0..2 {
            assert!((s.values[i] - (a.values[i] + c * b.values[i])).norm() < 1e-12);
        }
    }

    #[test]
    fn short_table_is_a_resource_error() {
        let d = sieve(ArithFn::Divisors, 100).unwrap();
        let r = weighted_average(
            &DynamicalSystem::Bernoulli { seed: 0 },
            &d,
            &Observable::HaarStep,
            0.0,
            &[50, 101],
        );
        assert!(matches!(r, Err(Error::Resource(_))));
    }

    #[test]
    fn rotation_character_limit_cases() {
        let grid = [1u64 << 10, 1 << 14, 1 << 18];
        assert!(rotation_character_limit(0.0, &grid).unwrap().iter().all(|&v| v == 1.0));
        let g = rotation_character_limit(golden(), &grid).unwrap();
        assert!(g[2] < 0.5 * g[0], "{g:?}");
        let third = rotation_character_limit(1.0 / 3.0, &[1 << 20]).unwrap()[0];
        let l = (1u64 << 20) as f64;
        let gamma = crate::numeric::euler_gamma();
        let want = (l.ln() - 2.0 * 3f64.ln() + 2.0 * gamma - 1.0) / (3.0 * (l.ln() + 2.0 * gamma - 1.0));
        assert!((third - want).abs() < 1e-3, "{third} vs {want}");
    }

    #[test]
    fn mobius_weighted_cases() {
        let mu = sieve(ArithFn::Mobius, 1 << 16).unwrap();
        let one = Observable::constant(1.0);
        let sys = DynamicalSystem::Rotation { alpha: golden() };
        let m = mobius_weighted(&sys, &mu, 1.0, &one, 0.0, &[1, 2]).unwrap();
        assert_eq!(m.values[0], Complex64::new(0.0, 0.0));
        let m0 = mobius_weighted(&sys, &mu, 0.0, &one, 0.0, &[10, 100, 1 << 16]).unwrap();
        assert_eq!(m0.values[0].re, mu.summatory(10) / 10.0);
        assert!(m0.values[2].norm() < 0.01);
        let grid: Vec<u64> = (10..=16).map(|k| 1u64 << k).collect();
        let c = mobius_weighted(&sys, &mu, 1.0, &Observable::Character { m: 1 }, 0.0, &grid).unwrap();
        assert!(c.tail_sup.windows(2).all(|w| w[0] >= w[1]));
        assert!(c.values[6].norm() < c.values[0].norm());
    }

    #[test]
    fn convergence_diagnostic_examples() {
        let series: Vec<Complex64> = (1..=10)
            .map(|k| Complex64::new(1.0 / (1u64 << k) as f64, 0.0))
            .collect();
        let v = convergence_diagnostic(&series, 0.25).unwrap();
        assert_eq!(v, 1.0 / 256.0 - 1.0 / 1024.0);
        assert_eq!(
            convergence_diagnostic(&[Complex64::new(2.0, 1.0); 6], 0.5).unwrap(),
            0.0
        );
        assert!(convergence_diagnostic(&series[..3], 0.5).is_err());
    }

    #[test]
    fn csv_layout() {
        let d = sieve(ArithFn::Divisors, 10).unwrap();
        let s = weighted_average(
            &DynamicalSystem::Rotation { alpha: 0.5 },
            &d,
            &Observable::constant(1.0),
            0.0,
            &[10],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_average_csv(&[s], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("system,weights,n,re_avg,im_avg\nrotation,"));
    }
}
