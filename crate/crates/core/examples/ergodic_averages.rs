//! Divisor-weighted ergodic averages along rotation and doubling orbits,
//! a Möbius-weighted average, and the transference identity linking them
//! to convolutions on ℤ.

use ergw::arith::{sieve, ArithFn};
use ergw::dynsys::{mobius_weighted, rotation_character_limit, weighted_average, DynamicalSystem, Observable};
use ergw::shiftmodel::transference_check;

fn main() -> ergw::Result<()> {
    let n_max = 1u64 << 18;
    let d = sieve(ArithFn::Divisors, n_max as usize)?;
    let grid: Vec<u64> = (10..=18).map(|k| 1u64 << k).collect();
    let golden = (5f64.sqrt() - 1.0) / 2.0;

    let rotation = DynamicalSystem::Rotation { alpha: golden };
    let f = Observable::Character { m: 1 };
    let avg = weighted_average(&rotation, &d, &f, 0.0, &grid)?;
    let limit = rotation_character_limit(golden, &grid)?;
    for ((n, v), l) in grid.iter().zip(&avg.values).zip(&limit) {
        println!("rotation n = {n:>6}: |A_n e(x)| = {:.5} (hyperbola {:.5})", v.norm(), l);
    }

    let doubling = DynamicalSystem::Doubling { seed: Some(7) };
    let f = Observable::Interval { a: 0.0, b: 0.5 };
    let avg = weighted_average(&doubling, &d, &f, 0.0, &grid)?;
    println!(
        "doubling, 1_[0,1/2): A_n at 2^18 = {:.5}, mean {:.5}",
        avg.values.last().unwrap().re,
        f.mean()
    );
    println!(
        "convergence defect over the last half: {:.2e}",
        avg.convergence_defect(0.5)?
    );

    let mu = sieve(ArithFn::Mobius, n_max as usize)?;
    let f = Observable::Character { m: 1 };
    let m = mobius_weighted(&rotation, &mu, 2.0, &f, 0.0, &grid)?;
    println!(
        "Möbius-weighted rotation at 2^18: (log n)²/n · |Σ μ(k) e(kα)| = {:.3}",
        m.values.last().unwrap().norm()
    );

    let t = transference_check(&rotation, &d, &f, 0.1, 1 << 12, 1 << 10)?;
    println!(
        "transference J = {}, N = {}: max deviation {:.2e}",
        t.j_max, t.n_max, t.max_deviation
    );
    Ok(())
}
