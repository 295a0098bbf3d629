//! Divisor and Möbius exponential sums, with the rational-point and
//! minor-arc diagnostics.

mod divisor;
mod geometric;
mod mobius;
mod rational;

pub use crate::numeric::harmonic_gamma;
pub use divisor::{
    divisor_expsum_batch, divisor_expsum_direct, divisor_expsum_hyperbola, weighted_expsum, write_expsum_csv,
    ExpSumResult, Method,
};
pub use geometric::{geometric, geometric_at, geometric_ratio};
pub use mobius::{mobius_expsum, mobius_sup, MobiusSup};
pub use rational::{
    minor_arc_bound, minor_arc_diagnostic, rational_diagnostic, rational_main_term, rational_scan, write_rational_csv,
    RationalMainTerm,
};
