//! Oscillation sums along a ρ-lattice of block lengths: exact for short
//! blocks, certified upper bounds once the blocks leave the divisor table.

use ergw::arith::{sieve, ArithFn};
use ergw::shiftmodel::{divisor_oscillation_certified, random_sign_signal, rho_lattice, CORPUS_SEED};

fn main() -> ergw::Result<()> {
    let d = sieve(ArithFn::Divisors, 1 << 16)?;
    // blocks 4^j, with the ρ = 2 lattice placing one extra length inside each
    let blocks = rho_lattice(4.0, 4, 1 << 24)?;
    let g = random_sign_signal(CORPUS_SEED, 0, 1024);
    let r = divisor_oscillation_certified(&d, &g, &blocks, 2.0, 1 << 14)?;
    println!("{:>3} {:>10} {:>10} {:>12} {:>6}", "j", "N_j", "N_j+1", "term", "exact");
    for t in &r.terms {
        println!(
            "{:>3} {:>10} {:>10} {:>12.4e} {:>6}",
            t.j, t.n_lo, t.n_hi, t.value, t.exact
        );
    }
    for (j, v) in r.normalized.iter().enumerate() {
        println!("J = {}: (1/J) Σ ≤ {v:.4e}", j + 1);
    }
    Ok(())
}
