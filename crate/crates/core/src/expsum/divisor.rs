use std::fmt;
use std::io::{BufWriter, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{ArithFn, ArithmeticTable};
use crate::error::{param, Error, Result};
use crate::expsum::geometric::geometric_at;
use crate::fourier::{check_grid, grid_values_real};
use crate::numeric::{e, fmt_f64, ComplexKahan, Frequency};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    Hyperbola,
    FftBatch,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Hyperbola => "hyperbola",
            Method::FftBatch => "fft-batch",
        })
    }
}

/// `D_n(x) = Σ_{k≤n} d(k) e(kx)` together with how it was computed.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExpSumResult {
    pub n: u64,
    pub x: Frequency,
    pub value: Complex64,
    pub method: Method,
}

fn require_divisor_table(d: &ArithmeticTable, n: u64) -> Result<()> {
    if d.kind() != Some(ArithFn::Divisors) {
        return param(format!("expected a divisor table, got '{}'", d.label()));
    }
    if n as usize > d.len() {
        return Err(Error::Resource(format!("n = {n} exceeds the sieve bound {}", d.len())));
    }
    Ok(())
}

/// `Σ_{k≤n} a(k) e(kx)` for any table, compensated, one character per term.
pub fn weighted_expsum(table: &ArithmeticTable, n: u64, x: Frequency) -> Result<Complex64> {
    if n as usize > table.len() {
        return Err(Error::Resource(format!(
            "n = {n} exceeds the sieve bound {}",
            table.len()
        )));
    }
    let mut acc = ComplexKahan::new();
    for k in 1..=n {
        let w = table.get(k as usize);
        if w != 0.0 {
            acc.add(e(x.phase(k)) * w);
        }
    }
    Ok(acc.value())
}

/// Term-by-term evaluation against a divisor table, `O(n)`.
pub fn divisor_expsum_direct(d: &ArithmeticTable, n: u64, x: impl Into<Frequency>) -> Result<ExpSumResult> {
    let x = x.into();
    if n == 0 {
        return param("n must be >= 1");
    }
    require_divisor_table(d, n)?;
    Ok(ExpSumResult {
        n,
        x,
        value: weighted_expsum(d, n, x)?,
        method: Method::Direct,
    })
}

/// Dirichlet's hyperbola split: with `r = ⌊√n⌋`,
/// `D_n(x) = Σ_{k≤r} (2 G_{⌊n/k⌋}(kx) - G_r(kx))`, `O(√n)` closed-form terms.
pub fn divisor_expsum_hyperbola(n: u64, x: impl Into<Frequency>) -> Result<ExpSumResult> {
    let x = x.into();
    if n == 0 {
        return param("n must be >= 1");
    }
    let r = n.isqrt();
    let mut acc = ComplexKahan::new();
    for k in 1..=r {
        acc.add(geometric_at(n / k, x, k) * 2.0);
        acc.add(-geometric_at(r, x, k));
    }
    Ok(ExpSumResult {
        n,
        x,
        value: acc.value(),
        method: Method::Hyperbola,
    })
}

/// `D_n(j/G)` for all `j < G` from one length-`G` FFT of `d` folded mod `G`.
pub fn divisor_expsum_batch(d: &ArithmeticTable, n: u64, g: usize) -> Result<Vec<ExpSumResult>> {
    if n == 0 {
        return param("n must be >= 1");
    }
    require_divisor_table(d, n)?;
    check_grid(g)?;
    let coeffs: Vec<f64> = (1..=n as usize).map(|k| d.get(k)).collect();
    let values = grid_values_real(&coeffs, 1, g)?;
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(j, value)| ExpSumResult {
            n,
            x: Frequency::ratio(j as u64, g as u64),
            value: if j == 0 { Complex64::new(value.re, 0.0) } else { value },
            method: Method::FftBatch,
        })
        .collect())
}

/// Writes `n,x_num,x_den_or_grid_index,re,im,method` rows. Fractions (and grid
/// points `j/G`) print as numerator and denominator; real points print as
/// `x,1`.
pub fn write_expsum_csv<W: Write>(rows: &[ExpSumResult], out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "n,x_num,x_den_or_grid_index,re,im,method")?;
    for r in rows {
        let (num, den) = match r.x {
            Frequency::Real(x) => (fmt_f64(x), "1".to_string()),
            Frequency::Ratio { a, q } => (a.to_string(), q.to_string()),
        };
        writeln!(
            out,
            "{},{num},{den},{},{},{}",
            r.n,
            fmt_f64(r.value.re),
            fmt_f64(r.value.im),
            r.method
        )?;
    }
    out.flush()?;
    Ok(())
}
