use serde::Serialize;

use crate::arith::table::{ArithmeticTable, Values};
use crate::error::{param, Error, Result};
use crate::numeric::KahanSum;

/// `(a∗b)(n) = Σ_{d|n} a(d) b(n/d)` on `1..=N`, by the divisor-lattice double loop.
pub fn dirichlet_convolve(a: &ArithmeticTable, b: &ArithmeticTable) -> Result<ArithmeticTable> {
    let n = a.len();
    if b.len() != n {
        return param(format!("table bounds differ: {} vs {}", a.len(), b.len()));
    }
    let values = match (a.storage(), b.storage()) {
        (Values::Int(x), Values::Int(y)) => {
            let mut c = vec![0i64; n + 1];
            for d in 1..=n {
                let ad = x[d];
                if ad == 0 {
                    continue;
                }
                for (m, idx) in (d..=n).step_by(d).enumerate() {
                    c[idx] += ad * y[m + 1];
                }
            }
            Values::Int(c)
        }
        _ => {
            let mut c = vec![0f64; n + 1];
            for d in 1..=n {
                let ad = a.get(d);
                if ad == 0.0 {
                    continue;
                }
                for (m, idx) in (d..=n).step_by(d).enumerate() {
                    c[idx] += ad * b.get(m + 1);
                }
            }
            Values::Real(c)
        }
    };
    Ok(ArithmeticTable::from_values("", None, values)?.relabel(format!("{}*{}", a.label(), b.label())))
}

/// Partial sums of `(a∗b)` normalised by `A(n)` next to their predicted limit
/// `Σ_m b(m)/m^α`.
#[derive(Debug, Clone, Serialize)]
pub struct ConvolutionLimitReport {
    pub alpha: f64,
    /// `(n, Σ_{k≤n} (a∗b)(k) / A(n))` on a dyadic grid ending at `N`.
    pub partial_sums: Vec<(usize, f64)>,
    /// `Σ_{m≤M} b(m)/m^α`.
    pub target: f64,
    /// Truncation point `M`.
    pub truncation: usize,
    /// Estimate of `Σ_{m>M} |b(m)|/m^α`.
    pub tail_bound: f64,
    /// Whether the tail estimate fell below `1e-6`.
    pub converged: bool,
}

impl ConvolutionLimitReport {
    pub fn last(&self) -> f64 {
        self.partial_sums.last().map(|p| p.1).unwrap_or(f64::NAN)
    }
}

const TAIL_TARGET: f64 = 1e-6;

/// Compares `(1/A(n)) Σ_{k≤n} (a∗b)(k)` with `Σ_m b(m)/m^α`.
///
/// The tail of the target series is the observed tail inside the table plus a
/// geometric extrapolation from its last two dyadic blocks.
pub fn convolution_limit(a: &ArithmeticTable, b: &ArithmeticTable, alpha: f64) -> Result<ConvolutionLimitReport> {
    if !a.is_nonnegative() {
        return param("the normalising function a must be non-negative");
    }
    if !(alpha > 0.0) {
        return param("alpha must be positive");
    }
    let n = a.len();
    let c = dirichlet_convolve(a, b)?;

    let mut grid: Vec<usize> = std::iter::successors(Some(1usize), |&k| k.checked_mul(2))
        .take_while(|&k| k < n)
        .collect();
    grid.push(n);
    let mut partial_sums = Vec::with_capacity(grid.len());
    for &k in &grid {
        let big_a = a.summatory(k);
        if big_a == 0.0 {
            if k == n {
                return Err(Error::Degenerate(format!("A({k}) = 0")));
            }
            continue;
        }
        partial_sums.push((k, c.summatory(k) / big_a));
    }

    let terms: Vec<f64> = (1..=n).map(|m| b.get(m) / (m as f64).powf(alpha)).collect();
    let beyond = extrapolated_tail(&terms)?;
    // suffix[m] = Σ_{m < j ≤ N} |b(j)|/j^α
    let mut suffix = vec![0.0; n + 1];
    for m in (0..n).rev() {
        suffix[m] = suffix[m + 1] + terms[m].abs();
    }
    let mut truncation = n;
    let mut tail_bound = beyond;
    let mut m = 1usize;
    while m <= n {
        let t = suffix[m] + beyond;
        if t < TAIL_TARGET {
            truncation = m;
            tail_bound = t;
            break;
        }
        m *= 2;
    }
    let target = terms[..truncation].iter().copied().collect::<KahanSum>().value();
    Ok(ConvolutionLimitReport {
        alpha,
        partial_sums,
        target,
        truncation,
        tail_bound,
        converged: tail_bound < TAIL_TARGET,
    })
}

/// Mass of `Σ_{m>N} |t_m|` predicted from the ratio of the last two dyadic blocks.
fn extrapolated_tail(terms: &[f64]) -> Result<f64> {
    let n = terms.len();
    let top = usize::BITS - 1 - n.leading_zeros();
    if top < 2 {
        return Ok(0.0);
    }
    let block = |j: u32| -> f64 {
        let lo = 1usize << j;
        let hi = (1usize << (j + 1)).min(n + 1);
        terms[lo - 1..hi - 1].iter().map(|t| t.abs()).sum()
    };
    let (last, prev) = (block(top - 1), block(top - 2));
    if last == 0.0 {
        return Ok(0.0);
    }
    if prev == 0.0 {
        return Ok(last);
    }
    let r = last / prev;
    if r >= 1.0 {
        return Err(Error::Degenerate(format!(
            "Σ|b(m)|/m^α does not look convergent (block ratio {r:.3})"
        )));
    }
    Ok(last * r / (1.0 - r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{sieve, ArithFn};
    use crate::numeric::zeta;

    fn t(f: ArithFn, n: usize) -> ArithmeticTable {
        sieve(f, n).unwrap()
    }

    #[test]
    fn textbook_identities() {
        let n = 2000;
        let one = t(ArithFn::One, n);
        assert!(dirichlet_convolve(&one, &one)
            .unwrap()
            .agrees_with(&t(ArithFn::Divisors, n), 0.0));
        let delta = dirichlet_convolve(&one, &t(ArithFn::Mobius, n)).unwrap();
        assert!(delta.agrees_with(&t(ArithFn::Unit, n), 0.0));
        let theta = dirichlet_convolve(&t(ArithFn::Divisors, n), &t(ArithFn::MobiusAtSquares, n)).unwrap();
        assert!(theta.agrees_with(&t(ArithFn::SquarefreeDivisors, n), 0.0));
        assert_eq!(theta.label(), "d*mu_tilde");
        let squarefree = dirichlet_convolve(&one, &t(ArithFn::MobiusAtSquares, n)).unwrap();
        assert!(squarefree.agrees_with(&t(ArithFn::Squarefree, n), 0.0));
    }

    #[test]
    fn mismatched_bounds() {
        assert!(dirichlet_convolve(&t(ArithFn::One, 10), &t(ArithFn::One, 11)).is_err());
    }

    #[test]
    fn unit_limit_is_one() {
        let r = convolution_limit(&t(ArithFn::One, 1000), &t(ArithFn::Unit, 1000), 1.0).unwrap();
        assert!(r.partial_sums.iter().all(|&(_, v)| v == 1.0));
        assert_eq!(r.target, 1.0);
        assert!(r.converged);
    }

    #[test]
    fn zeta3_limit() {
        let n = 1 << 16;
        let r = convolution_limit(&t(ArithFn::One, n), &t(ArithFn::Power(-2.0), n), 1.0).unwrap();
        // Σ_{m≤M} m^{-3} by direct summation
        let direct: f64 = (1..=r.truncation).map(|m| (m as f64).powi(-3)).sum();
        assert!((r.target - direct).abs() < 1e-12);
        assert!(r.converged);
        assert!((r.target - zeta(3.0)).abs() < 2e-6);
        assert!((r.last() - zeta(3.0)).abs() < 1e-3);
    }

    #[test]
    fn theta_over_divisors() {
        let n = 1 << 16;
        let r = convolution_limit(&t(ArithFn::Divisors, n), &t(ArithFn::MobiusAtSquares, n), 1.0).unwrap();
        assert!((r.target - 0.607_93).abs() < 2e-3);
        assert!(!r.converged);
        // the ratio drifts towards the target from above
        let v: Vec<f64> = r.partial_sums.iter().skip(6).map(|p| p.1).collect();
        assert!(v.windows(2).all(|w| w[1] < w[0] + 1e-3));
        assert!(v.iter().all(|&x| x > r.target));
    }

    #[test]
    fn degenerate_normaliser() {
        let zero = ArithmeticTable::from_values("zero", None, Values::Int(vec![0; 11])).unwrap();
        assert!(matches!(
            convolution_limit(&zero, &t(ArithFn::Unit, 10), 1.0),
            Err(Error::Degenerate(_))
        ));
    }
}
