//! `ℓ^p(ℤ)` signals and the shift-model operators: convolution with kernel
//! families, maximal functions, oscillation sums and the transference from
//! orbits.

mod convolve;
mod corpus;
mod family;
mod maximal;
mod oscillation;
mod signal;
mod transference;

use std::io::Write;

use serde::Serialize;

pub use convolve::{convolve, convolve_with, ConvolutionMethod, MAX_CONVOLUTION_LEN};
pub use corpus::{random_nonnegative_signal, random_sign_signal, CORPUS_SEED};
pub use family::{ApproximantFamily, CesaroFamily, ConstantFamily, KernelFamily, WeightFamily};
pub use maximal::{
    cesaro_maximal_constant, dyadic_maximal, dyadic_maximal_range, hardy_littlewood_bound, MaximalReport,
};
pub use oscillation::{
    divisor_oscillation_certified, divisor_square_sum_upper, divisor_summatory_lower, oscillation_sum, rho_lattice,
    transform_sup_upper, OscillationReport, OscillationTerm,
};
pub use signal::LatticeSignal;
pub use transference::{transference_check, TransferenceReport};

use crate::error::Result;
use crate::numeric::fmt_f64;

/// One row of a shift-model experiment table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftRow {
    pub experiment: String,
    pub p: f64,
    pub n_or_k: u64,
    pub ratio: f64,
}

/// CSV with header `experiment,p,n_or_k,ratio`.
pub fn write_shift_csv<W: Write>(rows: &[ShiftRow], mut out: W) -> Result<()> {
    writeln!(out, "experiment,p,n_or_k,ratio")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.experiment,
            fmt_f64(r.p),
            r.n_or_k,
            fmt_f64(r.ratio)
        )?;
    }
    Ok(())
}
