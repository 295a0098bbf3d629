//! Divisor exponential sums by three routes, the rational main term at `a/q`
//! and the sup-norm of Möbius sums over a frequency grid.

use ergw::arith::{sieve, ArithFn};
use ergw::expsum::{
    divisor_expsum_batch, divisor_expsum_direct, divisor_expsum_hyperbola, mobius_sup, rational_diagnostic,
};
use ergw::numeric::Frequency;

fn main() -> ergw::Result<()> {
    let n = 1 << 16;
    let d = sieve(ArithFn::Divisors, n)?;
    let grid = 1024;
    let batch = divisor_expsum_batch(&d, n as u64, grid)?;
    for j in [0usize, 1, 256, 341, 512] {
        let x = Frequency::ratio(j as u64, grid as u64);
        let direct = divisor_expsum_direct(&d, n as u64, x)?.value;
        let hyper = divisor_expsum_hyperbola(n as u64, x)?.value;
        println!(
            "x = {j}/{grid}: direct {:.4}, hyperbola {:.4}, batch {:.4}",
            direct, hyper, batch[j].value
        );
    }

    println!(
        "{:>4} {:>4} {:>14} {:>14} {:>10}",
        "a", "q", "|D_n(a/q)|", "main term", "normalized"
    );
    for (a, q) in [(1, 2), (1, 3), (2, 5), (3, 7), (5, 12)] {
        let r = rational_diagnostic(n as u64, a, q)?;
        println!(
            "{a:>4} {q:>4} {:>14.2} {:>14.2} {:>10.4}",
            r.value.norm(),
            r.main,
            r.normalized
        );
    }

    let mu = sieve(ArithFn::Mobius, n)?;
    for k in [10u32, 12, 14, 16] {
        let s = mobius_sup(&mu, 1 << k, 4096)?;
        println!(
            "Möbius n = 2^{k}: sup/n {:.5}, sup·(log n)²/n {:.4}",
            s.relative(),
            s.decay(2)
        );
    }
    Ok(())
}
