use std::io::{BufWriter, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::arcs::classify;
use crate::arith::ArithmeticTable;
use crate::error::Result;
use crate::kernels::approximant::ApproximantKernel;
use crate::kernels::divisor::DivisorKernel;
use crate::numeric::fmt_f64;

/// Grid suprema of `|T_n - φ_n|`, split by arc type.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ApproxErrorReport {
    pub n: u64,
    #[serde(rename = "S")]
    pub s: f64,
    pub tau: f64,
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "P")]
    pub p: u64,
    #[serde(rename = "Q")]
    pub q: u64,
    pub grid: usize,
    pub top_band: u32,
    pub sup_major: f64,
    pub sup_minor: f64,
    pub sup_total: f64,
    /// `sup_total · (log n)^S`.
    pub normalized: f64,
    /// Grid point attaining `sup_total`.
    pub argmax: f64,
}

/// One grid point of the comparison.
#[derive(Debug, Clone, Copy)]
pub struct ApproxErrorRow {
    pub x: f64,
    pub t: Complex64,
    pub phi: Complex64,
    pub is_major: bool,
}

impl ApproxErrorRow {
    pub fn abs_err(&self) -> f64 {
        (self.t - self.phi).norm()
    }
}

/// Compares `T_n = D_n(x)/D_n` with `φ_n` on the grid `j/G`.
pub fn approx_error(d: &ArithmeticTable, kernel: &ApproximantKernel, g: usize) -> Result<ApproxErrorReport> {
    approx_error_rows(d, kernel, g).map(|(r, _)| r)
}

/// [`approx_error`] together with the per-point values.
pub fn approx_error_rows(
    d: &ArithmeticTable,
    kernel: &ApproximantKernel,
    g: usize,
) -> Result<(ApproxErrorReport, Vec<ApproxErrorRow>)> {
    let prm = *kernel.params();
    let t = DivisorKernel::new(d, prm.n())?.eval_grid(g)?;
    let phi = kernel.eval_grid(g)?;
    let rows: Vec<ApproxErrorRow> = (0..g)
        .map(|j| {
            let x = j as f64 / g as f64;
            ApproxErrorRow {
                x,
                t: t[j],
                phi: phi[j],
                is_major: classify(x, &prm).is_major,
            }
        })
        .collect();
    let (mut sup_major, mut sup_minor, mut sup_total, mut argmax) = (0.0f64, 0.0f64, 0.0f64, 0.0);
    for r in &rows {
        let err = r.abs_err();
        if r.is_major {
            sup_major = sup_major.max(err);
        } else {
            sup_minor = sup_minor.max(err);
        }
        if err > sup_total {
            sup_total = err;
            argmax = r.x;
        }
    }
    let report = ApproxErrorReport {
        n: prm.n(),
        s: prm.s(),
        tau: prm.tau(),
        m: prm.m(),
        p: prm.p(),
        q: prm.q(),
        grid: g,
        top_band: kernel.top_band(),
        sup_major,
        sup_minor,
        sup_total,
        normalized: sup_total * (prm.n() as f64).ln().powf(prm.s()),
        argmax,
    };
    Ok((report, rows))
}

/// Writes `n,x,re_T,im_T,re_phi,im_phi,arc_class,abs_err` rows.
pub fn write_approx_csv<W: Write>(n: u64, rows: &[ApproxErrorRow], out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "n,x,re_T,im_T,re_phi,im_phi,arc_class,abs_err")?;
    for r in rows {
        writeln!(
            out,
            "{n},{},{},{},{},{},{},{}",
            fmt_f64(r.x),
            fmt_f64(r.t.re),
            fmt_f64(r.t.im),
            fmt_f64(r.phi.re),
            fmt_f64(r.phi.im),
            if r.is_major { "major" } else { "minor" },
            fmt_f64(r.abs_err())
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Least-squares slope of `log sup` against `log log n`: the measured decay
/// exponent `γ` in `sup ≍ (log n)^{-γ}`.
pub fn decay_exponent(reports: &[ApproxErrorReport]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = reports
        .iter()
        .filter(|r| r.sup_total > 0.0)
        .map(|r| ((r.n as f64).ln().ln(), r.sup_total.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let (mx, my) = (
        pts.iter().map(|p| p.0).sum::<f64>() / k,
        pts.iter().map(|p| p.1).sum::<f64>() / k,
    );
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| -sxy / sxx)
}
