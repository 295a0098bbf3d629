use std::io::{BufWriter, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arcs::{best_rational, Rational};
use crate::error::{param, Error, Result};
use crate::expsum::divisor::divisor_expsum_hyperbola;
use crate::numeric::{euler_gamma, fmt_f64, gcd};

/// `D_n(a/q)` against its main term `(n/q)(log n - 2 log q + 2γ - 1)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RationalMainTerm {
    pub n: u64,
    pub frac: Rational,
    pub value: Complex64,
    pub main: f64,
    pub defect: f64,
    /// `defect / ((√n + q) log(q + 1))`.
    pub normalized: f64,
}

/// `(n/q)(log n - 2 log q + 2γ - 1)`; for `q = 1` this is the summatory main term.
pub fn rational_main_term(n: u64, q: u64) -> f64 {
    let (nf, qf) = (n as f64, q as f64);
    nf / qf * (nf.ln() - 2.0 * qf.ln() + 2.0 * euler_gamma() - 1.0)
}

/// Evaluates `D_n(a/q)` exactly in phase (hyperbola method with integer
/// reductions) and compares it with the main term.
pub fn rational_diagnostic(n: u64, a: u64, q: u64) -> Result<RationalMainTerm> {
    if n == 0 {
        return param("n must be >= 1");
    }
    let frac = if (a, q) == (0, 1) {
        Rational::ZERO
    } else {
        if q == 0 || a == 0 || a > q || gcd(a, q) != 1 {
            return param(format!("{a}/{q} must satisfy 1 <= a <= q, gcd(a, q) = 1"));
        }
        Rational::new(a, q)?
    };
    let value = divisor_expsum_hyperbola(n, frac)?.value;
    let main = rational_main_term(n, q);
    let defect = (value - Complex64::new(main, 0.0)).norm();
    let qf = q as f64;
    let normalized = defect / (((n as f64).sqrt() + qf) * (qf + 1.0).ln());
    Ok(RationalMainTerm {
        n,
        frac,
        value,
        main,
        defect,
        normalized,
    })
}

/// All `(n, a/q)` with `n` from `ns`, `1 ≤ q ≤ qmax`, `a` coprime to `q`
/// (`q = 1` contributes `0/1`). Rows come back in a deterministic order.
pub fn rational_scan(ns: &[u64], qmax: u64) -> Result<Vec<RationalMainTerm>> {
    let mut jobs = Vec::new();
    for &n in ns {
        jobs.push((n, 0, 1));
        for q in 2..=qmax {
            jobs.extend((1..q).filter(|&a| gcd(a, q) == 1).map(|a| (n, a, q)));
        }
    }
    jobs.par_iter().map(|&(n, a, q)| rational_diagnostic(n, a, q)).collect()
}

/// Writes `n,q,a,main,defect,normalized` rows.
pub fn write_rational_csv<W: Write>(rows: &[RationalMainTerm], out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "n,q,a,main,defect,normalized")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            r.frac.q(),
            r.frac.a(),
            fmt_f64(r.main),
            fmt_f64(r.defect),
            fmt_f64(r.normalized)
        )?;
    }
    out.flush()?;
    Ok(())
}

/// `n log n / P + √n log n + Q log n + n² log n / (P Q)`.
pub fn minor_arc_bound(n: f64, p: f64, q: f64) -> f64 {
    let l = n.ln();
    n * l / p + n.sqrt() * l + q * l + n * n * l / (p * q)
}

/// `|D_n(x)|` divided by [`minor_arc_bound`]; `x` must lie off every arc
/// `|x - a/q| ≤ 1/Q` with `q ≤ P`.
pub fn minor_arc_diagnostic(n: u64, x: f64, p: u64, q: u64) -> Result<f64> {
    if n < 2 || p == 0 || q == 0 {
        return param("need n >= 2 and P, Q >= 1");
    }
    if !(0.0..1.0).contains(&x) {
        return param("x must lie in [0, 1)");
    }
    let near = best_rational(x, p);
    if near.distance(x) <= 1.0 / q as f64 {
        return Err(Error::Precondition(format!(
            "x = {x} lies on the major arc around {near} (q <= {p}, distance <= 1/{q})"
        )));
    }
    let value = divisor_expsum_hyperbola(n, x)?.value;
    Ok(value.norm() / minor_arc_bound(n as f64, p as f64, q as f64))
}
