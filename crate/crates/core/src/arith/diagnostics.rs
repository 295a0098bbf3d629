//! Empirical constants attached to the classical mean-value estimates.

use std::ops::{Add, Sub};

use serde::Serialize;

use crate::arith::sieve::SpfSieve;
use crate::arith::table::ArithmeticTable;
use crate::error::{param, Error, Result};
use crate::numeric::{gcd, loglog, mobius_of, KahanSum};

/// `Σ_{k≤n} a_k^m / (n Ã_n^m)` with `Ã_n = A_n / n`.
pub fn moment_ratio(table: &ArithmeticTable, m: f64, n: usize) -> Result<f64> {
    if !(m >= 1.0) {
        return param("moment order must be >= 1");
    }
    if n == 0 || n > table.len() {
        return param(format!("n = {n} outside 1..={}", table.len()));
    }
    if !table.is_nonnegative() {
        return param("moment ratio needs a non-negative sequence");
    }
    let mean = table.summatory(n) / n as f64;
    if mean == 0.0 {
        return Err(Error::Degenerate("mean Ã_n is zero".into()));
    }
    let moment: KahanSum = (1..=n).map(|k| (table.get(k) / mean).powf(m)).collect();
    Ok(moment.value() / n as f64)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TuranKubilius {
    /// `(1/n) Σ_{k≤n} |g(k) - E(n)|²`.
    pub lhs: f64,
    /// `Σ_{p^α≤n} g(p^α)² / p^α`.
    pub rhs: f64,
    pub ratio: f64,
    /// The centring term `E(n) = Σ_{p^α≤n} g(p^α) / (p^α (1 - 1/p))`.
    pub centre: f64,
}

/// Variance of an additive function around its prime-power mean, relative to
/// the Turán–Kubilius right-hand side.
pub fn turan_kubilius_defect(g: &ArithmeticTable, n: usize) -> Result<TuranKubilius> {
    if n < 2 || n > g.len() {
        return param(format!("n = {n} outside 2..={}", g.len()));
    }
    let sv = SpfSieve::new(n);
    let mut centre = KahanSum::new();
    let mut rhs = KahanSum::new();
    for (p, _, pa) in sv.prime_powers() {
        let v = g.get(pa as usize);
        let pa = pa as f64;
        centre.add(v / (pa * (1.0 - 1.0 / p as f64)));
        rhs.add(v * v / pa);
    }
    let (centre, rhs) = (centre.value(), rhs.value());
    let lhs = (1..=n)
        .map(|k| (g.get(k) - centre).powi(2))
        .collect::<KahanSum>()
        .value()
        / n as f64;
    if rhs == 0.0 {
        return Err(Error::Degenerate("g vanishes on every prime power".into()));
    }
    Ok(TuranKubilius {
        lhs,
        rhs,
        ratio: lhs / rhs,
        centre,
    })
}

/// `Σ_{n≤x} g(n)^m / (x (log log x)^m)` with `log log x = log(log(2 + x))`.
pub fn delange_ratio(g: &ArithmeticTable, m: u32, x: usize) -> Result<f64> {
    if m == 0 {
        return param("m must be >= 1");
    }
    if x == 0 || x > g.len() {
        return param(format!("x = {x} outside 1..={}", g.len()));
    }
    if !g.is_integer() {
        return param("delange_ratio expects an integer-valued additive function");
    }
    let total: KahanSum = (1..=x).map(|k| g.get(k).powi(m as i32)).collect();
    Ok(total.value() / (x as f64 * loglog(x as f64).powi(m as i32)))
}

/// Both sides of `Σ_{(a,q)=1} F(a/q) = Σ_{d|q} μ(q/d) Σ_{m≤d} F(m/d)`.
///
/// `f(m, d)` is the value of `F` at `m/d`; it is called with unreduced pairs
/// on the right-hand side.
pub fn coprime_sum_inversion<T, F>(f: F, q: u64) -> (T, T)
where
    T: Copy + Default + Add<Output = T> + Sub<Output = T>,
    F: Fn(u64, u64) -> T,
{
    assert!(q >= 1, "q must be >= 1");
    let lhs = (1..=q)
        .filter(|&a| gcd(a, q) == 1)
        .fold(T::default(), |acc, a| acc + f(a, q));
    let mut rhs = T::default();
    for d in (1..=q).filter(|d| q % d == 0) {
        let inner = (1..=d).fold(T::default(), |acc, m| acc + f(m, d));
        match mobius_of(q / d) {
            1 => rhs = rhs + inner,
            -1 => rhs = rhs - inner,
            _ => {}
        }
    }
    (lhs, rhs)
}
