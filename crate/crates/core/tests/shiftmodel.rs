use ergw::arith::{sieve, ArithFn};
use ergw::kernels::approx_error;
use ergw::shiftmodel::{
    dyadic_maximal, dyadic_maximal_range, random_sign_signal, ApproximantFamily, KernelFamily, WeightFamily,
    CORPUS_SEED,
};

#[test]
fn divisor_maximal_ratio_is_bounded_and_stable() {
    let d = sieve(ArithFn::Divisors, 1 << 16).unwrap();
    let fam = WeightFamily::divisor(&d).unwrap();
    let mut worst8 = 0.0f64;
    let mut worst16 = 0.0f64;
    for i in 0..50 {
        let g = random_sign_signal(CORPUS_SEED, 100 + i, 256);
        worst8 = worst8.max(dyadic_maximal(&fam, &g, 8, 2.0).unwrap().ratio);
        if i < 10 {
            worst16 = worst16.max(dyadic_maximal(&fam, &g, 16, 2.0).unwrap().ratio);
        }
    }
    assert!(worst8 < 3.0, "{worst8}");
    assert!(worst16 < 1.25 * worst8, "{worst8} -> {worst16}");
}

#[test]
fn square_function_obeys_the_parseval_bound() {
    let d = sieve(ArithFn::Divisors, 1 << 12).unwrap();
    let divisor = WeightFamily::divisor(&d).unwrap();
    let approx = ApproximantFamily::desk(2.0, 0.9, 4);
    let g = random_sign_signal(CORPUS_SEED, 7, 512);
    let r = dyadic_maximal_range(&divisor, Some(&approx as &dyn KernelFamily), &g, 10, 12, 2.0).unwrap();
    let sq = r.square_function.unwrap();
    let sup_sq: f64 = (10..=12)
        .map(|k| {
            let kernel = approx.approximant(1 << k).unwrap();
            approx_error(&d, &kernel, 1 << 16).unwrap().sup_total.powi(2)
        })
        .sum();
    let energy = g.norm_pow(2.0);
    assert!(sq > 0.0);
    // grid sups stand in for the true sups; the inequality has a wide margin
    assert!(sq <= energy * sup_sq, "{sq} > {}", energy * sup_sq);
}
