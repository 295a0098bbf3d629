//! Measure-preserving systems on `[0, 1)` and weighted ergodic averages along
//! their orbits.

mod average;
mod system;

pub use average::{
    convergence_diagnostic, mobius_weighted, rotation_character_limit, weighted_average, write_average_csv,
    AverageSeries, MobiusSeries,
};
pub use system::{DynamicalSystem, Observable};
