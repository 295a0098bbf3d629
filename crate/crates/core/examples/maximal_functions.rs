//! Dyadic maximal functions of averaging kernels on ℤ: the Cesàro operator
//! against its Hardy–Littlewood constant, and the divisor kernel on random
//! signals.

use ergw::arith::{sieve, ArithFn};
use ergw::shiftmodel::{
    cesaro_maximal_constant, dyadic_maximal, hardy_littlewood_bound, random_nonnegative_signal, CesaroFamily,
    LatticeSignal, WeightFamily, CORPUS_SEED,
};

fn main() -> ergw::Result<()> {
    let delta = LatticeSignal::delta(0);
    for p in [1.5, 2.0, 3.0] {
        let c = cesaro_maximal_constant(&delta, p)?;
        println!(
            "point mass, p = {p}: ‖Mδ‖_p^p = {c:.6}, bound (p/(p−1))^p = {:.6}",
            hardy_littlewood_bound(p)
        );
    }

    let kmax = 12;
    let d = sieve(ArithFn::Divisors, 1 << kmax)?;
    let divisor = WeightFamily::divisor(&d)?;
    for i in 0..4 {
        let g = random_nonnegative_signal(CORPUS_SEED, i, 2048);
        let ces = dyadic_maximal(&CesaroFamily, &g, kmax, 2.0)?;
        let div = dyadic_maximal(&divisor, &g, kmax, 2.0)?;
        println!(
            "signal {i}: Cesàro ratio {:.4}, divisor ratio {:.4}",
            ces.ratio, div.ratio
        );
    }
    Ok(())
}
