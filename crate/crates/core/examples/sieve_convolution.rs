//! Sieved arithmetic functions, Dirichlet convolution and the weighted limit
//! `(1/A(n)) Σ (a∗b)(k) → Σ b(m)/m^α`, including a case where the limit
//! fails because `b` is not absolutely summable against `m^α`.

use ergw::arith::{convolution_limit, dirichlet_convolve, sieve, turan_kubilius_defect, ArithFn};

fn main() -> ergw::Result<()> {
    let n = 1 << 20;
    let d = sieve(ArithFn::Divisors, n)?;
    let one = sieve(ArithFn::One, n)?;
    let dd = dirichlet_convolve(&one, &one)?;
    println!("1∗1 = d on 1..={n}: {}", dd.agrees_with(&d, 0.0));

    let mu = sieve(ArithFn::Mobius, n)?;
    let unit = dirichlet_convolve(&one, &mu)?;
    println!("1∗μ = δ: {}", unit.agrees_with(&sieve(ArithFn::Unit, n)?, 0.0));

    // a = 1 (α = 1), b = μ(√·): the series Σ μ(r)/r² converges to 6/π²
    let b = sieve(ArithFn::MobiusAtSquares, n)?;
    let r = convolution_limit(&one, &b, 1.0)?;
    println!(
        "a = 1, b = μ at squares: average {:.6}, target {:.6}, tail {:.2e}, converged {}",
        r.last(),
        r.target,
        r.tail_bound,
        r.converged
    );

    // b = μ is only conditionally summable against 1/m; the report says so
    match convolution_limit(&one, &mu, 1.0) {
        Ok(r) => println!("a = 1, b = μ: average {:.6}, target {:.6}", r.last(), r.target),
        Err(e) => println!("a = 1, b = μ: rejected ({e})"),
    }

    let omega = sieve(ArithFn::DistinctPrimes, n)?;
    let tk = turan_kubilius_defect(&omega, n)?;
    println!(
        "Turán–Kubilius for ω at n = {n}: lhs {:.4}, rhs {:.4}, ratio {:.4}",
        tk.lhs, tk.rhs, tk.ratio
    );
    Ok(())
}
