use num_complex::Complex64;
use serde::Serialize;

use super::{convolve, LatticeSignal};
use crate::arith::ArithmeticTable;
use crate::dynsys::{DynamicalSystem, Observable};
use crate::error::{param, Error, Result};

/// Both sides of `A_n f(τ^j x) = (K̃_n ∗ φ)(j)` with `φ(i) = f(τ^i x)` and
/// `K̃_n(-k) = w_k / W_n`, for `0 ≤ j < J - N` and `1 ≤ n ≤ N`.
#[derive(Debug, Clone, Serialize)]
pub struct TransferenceReport {
    pub j_max: u64,
    pub n_max: u64,
    /// Row-major in `(j, n)`: entry `j·N + (n - 1)`.
    pub lhs: Vec<Complex64>,
    pub rhs: Vec<Complex64>,
    pub max_deviation: f64,
}

impl TransferenceReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.max_deviation <= tol
    }
}

pub fn transference_check(
    system: &DynamicalSystem,
    weights: &ArithmeticTable,
    f: &Observable,
    x0: f64,
    j_len: u64,
    n_max: u64,
) -> Result<TransferenceReport> {
    transference_with_shift(system, weights, f, x0, j_len, n_max, 0)
}

/// The shift-model side read at `j + shift`; a non-zero shift breaks the
/// identity and exists to test that the check notices.
pub(crate) fn transference_with_shift(
    system: &DynamicalSystem,
    weights: &ArithmeticTable,
    f: &Observable,
    x0: f64,
    j_len: u64,
    n_max: u64,
    shift: i64,
) -> Result<TransferenceReport> {
    if n_max == 0 {
        return param("N must be >= 1");
    }
    if j_len < 4 * n_max {
        return param(format!("J = {j_len} must be at least 4N = {}", 4 * n_max));
    }
    if n_max as usize > weights.len() {
        return Err(Error::Resource(format!(
            "weight table covers {} < N = {n_max}",
            weights.len()
        )));
    }
    let orbit = system.orbit(x0, 0, j_len as usize + 1);
    let phi = LatticeSignal::new(0, orbit.iter().map(|&x| f.eval(x)).collect());
    let j_max = j_len - n_max;
    let mut lhs = Vec::with_capacity((j_max * n_max) as usize);
    let mut rhs = Vec::with_capacity((j_max * n_max) as usize);
    let mut rhs_by_n = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max as usize {
        let w = weights.abs_summatory(n);
        if w == 0.0 {
            return Err(Error::Degenerate(format!("W_{n} = 0")));
        }
        // K̃_n on -n..=-1, stored from index -n upward
        let reflected: Vec<Complex64> = (1..=n).rev().map(|k| Complex64::new(weights.get(k) / w, 0.0)).collect();
        rhs_by_n.push(convolve(&LatticeSignal::new(-(n as i64), reflected), &phi)?);
    }
    for j in 0..j_max {
        let path = orbit_from(system, &orbit, x0, j, n_max as usize);
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..=n_max as usize {
            acc += f.eval(path[n - 1]) * weights.get(n);
            lhs.push(acc / weights.abs_summatory(n));
            rhs.push(rhs_by_n[n - 1].get(j as i64 + shift));
        }
    }
    let max_deviation = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    Ok(TransferenceReport {
        j_max,
        n_max,
        lhs,
        rhs,
        max_deviation,
    })
}

/// `τ^{j+1} x, …, τ^{j+len} x`, iterating the map from `τ^j x` where the map
/// is deterministic and reading the shifted sequence otherwise.
fn orbit_from(system: &DynamicalSystem, orbit: &[f64], x0: f64, j: u64, len: usize) -> Vec<f64> {
    let start = orbit[j as usize];
    match system {
        DynamicalSystem::Rotation { .. } => {
            let mut y = start;
            (0..len)
                .map(|_| {
                    y = system.step(y).expect("deterministic map");
                    y
                })
                .collect()
        }
        _ => system.orbit(x0, j + 1, len),
    }
}
