//! Arithmetic weight functions on `1..=N` and the Dirichlet-convolution
//! algebra over them.

mod convolution;
mod diagnostics;
mod io;
mod sieve;
mod table;

pub use convolution::{convolution_limit, dirichlet_convolve, ConvolutionLimitReport};
pub use diagnostics::{coprime_sum_inversion, delange_ratio, moment_ratio, turan_kubilius_defect, TuranKubilius};
pub use io::{cache_path, cached_sieve, sieve_with_cache, CACHE_ENV};
pub use sieve::{sieve, SpfSieve};
pub use table::{ArithFn, ArithmeticTable, Values};
