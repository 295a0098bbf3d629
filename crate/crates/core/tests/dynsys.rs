use ergw::arith::{sieve, ArithFn};
use ergw::dynsys::{weighted_average, DynamicalSystem, Observable};

#[test]
fn doubling_averages_of_a_mean_zero_step_are_small() {
    let n = 1u64 << 18;
    let d = sieve(ArithFn::Divisors, n as usize).unwrap();
    let small = (0..50u64)
        .filter(|&seed| {
            let sys = DynamicalSystem::Doubling { seed: Some(seed) };
            let s = weighted_average(&sys, &d, &Observable::HaarStep, 0.0, &[n]).unwrap();
            s.values[0].norm() < 0.05
        })
        .count();
    assert!(small >= 45, "{small} of 50 below 0.05");
}

#[test]
fn doubling_defect_shrinks_with_the_grid() {
    let d = sieve(ArithFn::Divisors, 1 << 18).unwrap();
    let sys = DynamicalSystem::Doubling { seed: Some(3) };
    let grid: Vec<u64> = (4..=18).map(|k| 1u64 << k).collect();
    let s = weighted_average(&sys, &d, &Observable::HaarStep, 0.0, &grid).unwrap();
    let early = ergw::dynsys::convergence_diagnostic(&s.values[..7], 0.5).unwrap();
    let late = s.convergence_defect(0.25).unwrap();
    assert!(late < early, "{late} vs {early}");
}
