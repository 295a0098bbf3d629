//! Divisor-weighted exponential sums, major/minor arc approximants and
//! weighted ergodic averages.

pub mod arcs;
pub mod arith;
pub mod cli;
pub mod dynsys;
pub mod error;
pub mod expsum;
pub mod fourier;
pub mod kernels;
pub mod numeric;
pub mod shiftmodel;
pub mod verify;

pub use error::{Error, Result};
