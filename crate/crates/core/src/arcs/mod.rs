//! Rational approximation and the major/minor arc partition of the circle.

mod classify;
mod params;
mod rational;

pub use classify::{
    classify, disjointness_audit, farey_band, write_classification_csv, DisjointnessAudit, MajorArcLocation, MAX_BAND,
};
pub use params::{minimal_asymptotic_n, ArcParameters};
pub use rational::{best_rational, dirichlet_rational, Rational, MAX_DENOMINATOR};

/// The asymptotic schedule; see [`ArcParameters::asymptotic`].
pub fn default_parameters(n: u64, s: f64, tau: f64, m: u32) -> crate::Result<ArcParameters> {
    ArcParameters::asymptotic(n, s, tau, m)
}
