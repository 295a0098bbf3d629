//! Sup-norm distance between the normalised divisor kernel and the major-arc
//! approximant over n = 2^10..2^18, split into major and minor arcs.

use ergw::arcs::ArcParameters;
use ergw::arith::{sieve, ArithFn};
use ergw::kernels::{approx_error, decay_exponent, ApproximantKernel, ModelForm};

fn main() -> ergw::Result<()> {
    let grid = 1 << 16;
    let d = sieve(ArithFn::Divisors, 1 << 18)?;
    let mut reports = Vec::new();
    println!(
        "{:>8} {:>4} {:>7} {:>5} {:>12} {:>12} {:>12}",
        "n", "P", "Q", "bands", "sup_major", "sup_minor", "sup_total"
    );
    for k in 10..=18 {
        let params = ArcParameters::desk(1 << k, 2.0, 0.9, 4)?;
        let kernel = ApproximantKernel::new(params, ModelForm::DivisorMatched);
        let r = approx_error(&d, &kernel, grid)?;
        println!(
            "{:>8} {:>4} {:>7} {:>5} {:>12.6} {:>12.6} {:>12.6}",
            r.n, r.p, r.q, r.top_band, r.sup_major, r.sup_minor, r.sup_total
        );
        reports.push(r);
    }
    if let Some(g) = decay_exponent(&reports) {
        println!("fitted decay exponent: {g:.3}");
    }
    Ok(())
}
