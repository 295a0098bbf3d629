//! The smooth bump, the model kernels `w_{n,q}`, the approximant `φ_n` and
//! its comparison with the normalised divisor kernel.

mod approximant;
mod bump;
mod divisor;
mod error;
mod inverse;
mod model;

pub use approximant::{ActiveTerm, ApproximantKernel};
pub use bump::{bump_eval, bump_scaled, BumpFunction};
pub use divisor::DivisorKernel;
pub use error::{approx_error, approx_error_rows, decay_exponent, write_approx_csv, ApproxErrorReport, ApproxErrorRow};
pub use inverse::{inverse_transform, inverse_transform_grid, InverseTransform, DEFAULT_TAIL_TOLERANCE};
pub use model::{ModelForm, ModelKernel};

use crate::arcs::ArcParameters;
use crate::error::{param, Result};

/// `φ_n` at one point.
pub fn phi_eval(params: &ArcParameters, form: ModelForm, x: f64) -> num_complex::Complex64 {
    ApproximantKernel::new(*params, form).eval(x)
}

/// `ψ_{n,q}` weights and transform.
pub fn model_weights(n: u64, q: u64, form: ModelForm) -> Result<ModelKernel> {
    ModelKernel::new(n, q, form)
}

/// `R_N`: the approximant with bands `s ≤ t` only.
pub fn truncated_kernel(kernel: &ApproximantKernel, t: u32) -> Result<ApproximantKernel> {
    if t < 1 {
        return param("truncation t must be >= 1");
    }
    Ok(kernel.with_truncation(t))
}
