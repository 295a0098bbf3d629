//! Small numerical kernels shared across modules: compensated summation,
//! unit-circle characters, Euler's constant and zeta tails.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = KahanSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Compensated accumulator for complex values (componentwise).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexKahan {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexKahan {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Reduces `t` modulo 1 into `[-1/2, 1/2)`.
#[inline]
pub fn centered_turn(t: f64) -> f64 {
    let r = t - t.round();
    if r >= 0.5 {
        r - 1.0
    } else {
        r
    }
}

/// `e(t) = exp(2πit)`, with `t` reduced first so large arguments keep their accuracy.
#[inline]
pub fn e(t: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * centered_turn(t)).sin_cos();
    Complex64::new(c, s)
}

/// A point on the circle `ℝ/ℤ`, either a float or an exact fraction `a/q`.
///
/// Multiples `k·x` of a fraction are reduced with integer arithmetic, so
/// `e(kx)` is exact up to the final `sin_cos` even for large `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Frequency {
    Real(f64),
    Ratio { a: u64, q: u64 },
}

impl Frequency {
    pub fn ratio(a: u64, q: u64) -> Self {
        assert!(q >= 1, "denominator must be positive");
        Frequency::Ratio { a, q }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Frequency::Real(x) => x,
            Frequency::Ratio { a, q } => a as f64 / q as f64,
        }
    }

    /// `k·x mod 1` in `[0, 1)`.
    #[inline]
    pub fn phase(&self, k: u64) -> f64 {
        match *self {
            Frequency::Real(x) => {
                let t = k as f64 * x;
                let f = t - t.floor();
                if f >= 1.0 {
                    0.0
                } else {
                    f
                }
            }
            Frequency::Ratio { a, q } => ((k as u128 * a as u128) % q as u128) as f64 / q as f64,
        }
    }

    /// True when `k·x` is an integer (exactly, for fractions).
    #[inline]
    pub fn is_integral_multiple(&self, k: u64) -> bool {
        match *self {
            Frequency::Real(x) => (k as f64 * x).fract() == 0.0,
            Frequency::Ratio { a, q } => (k as u128 * a as u128) % q as u128 == 0,
        }
    }
}

impl From<f64> for Frequency {
    fn from(x: f64) -> Self {
        Frequency::Real(x)
    }
}

/// `Σ_{m≤n} 1/m`, compensated.
pub fn harmonic(n: u64) -> f64 {
    // Summing small terms first.
    (1..=n).rev().map(|m| 1.0 / m as f64).collect::<KahanSum>().value()
}

/// `H_n - log n`, which decreases to Euler's constant with an `O(1/n)` defect.
pub fn harmonic_gamma(n: u64) -> f64 {
    assert!(n >= 1, "harmonic_gamma needs n >= 1");
    harmonic(n) - (n as f64).ln()
}

/// Euler's constant, extrapolated from `H_n - log n` on `n = 2^4..2^14`.
///
/// The defect expands in powers of `1/n`, so repeated Richardson steps with
/// ratio 2 remove one power at a time.
pub fn euler_gamma() -> f64 {
    static GAMMA: OnceLock<f64> = OnceLock::new();
    *GAMMA.get_or_init(|| {
        let mut row: Vec<f64> = (4..=14).map(|k| harmonic_gamma(1u64 << k)).collect();
        let mut factor = 2.0;
        while row.len() > 1 {
            row = row
                .windows(2)
                .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
                .collect();
            factor *= 2.0;
        }
        row[0]
    })
}

/// Hurwitz tail `Σ_{k≥m} k^{-s}` for `s > 1`, `m ≥ 1`.
///
/// Sums explicitly up to a cutoff and closes with Euler-Maclaurin.
pub fn zeta_tail(s: f64, m: u64) -> f64 {
    assert!(s > 1.0 && m >= 1);
    let cutoff = m.max(64);
    let mut acc: KahanSum = (m..cutoff).rev().map(|k| (k as f64).powf(-s)).collect();
    let a = cutoff as f64;
    // ∫_a^∞ x^{-s} + a^{-s}/2 + B2/2! f'(a)·(-1) ... with f(x) = x^{-s}
    acc.add(a.powf(1.0 - s) / (s - 1.0));
    acc.add(0.5 * a.powf(-s));
    acc.add(s * a.powf(-s - 1.0) / 12.0);
    acc.add(-s * (s + 1.0) * (s + 2.0) * a.powf(-s - 3.0) / 720.0);
    acc.add(s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * a.powf(-s - 5.0) / 30240.0);
    acc.value()
}

/// Riemann zeta for real `s > 1`.
pub fn zeta(s: f64) -> f64 {
    zeta_tail(s, 1)
}

/// `1/ζ(2)` from the partial sums of `Σ 1/m²` up to `m_max`, with the
/// Euler-Maclaurin remainder added so the result is good to well below `1e-10`.
pub fn inverse_zeta2(m_max: u64) -> f64 {
    let partial: KahanSum = (1..=m_max).rev().map(|m| 1.0 / (m as f64 * m as f64)).collect();
    1.0 / (partial.value() + zeta_tail(2.0, m_max + 1))
}

/// `log n!`: exact summation below 64, Stirling's series (through `n^-7`) above.
pub fn log_factorial(n: u64) -> f64 {
    if n < 64 {
        return (2..=n).map(|k| (k as f64).ln()).collect::<KahanSum>().value();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x
        + 0.5 * (2.0 * PI * x).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// `log(log(2 + x))`, the iterated-logarithm convention used with additive weights.
pub fn loglog(x: f64) -> f64 {
    (2.0 + x).ln().ln()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Möbius function by trial division; meant for small arguments.
pub fn mobius_of(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Formats a float with 17 significant digits, independent of locale.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAMMA_REF: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn gamma_extrapolation() {
        assert!((euler_gamma() - 0.577_215_664_9).abs() < 1e-9);
        assert!((euler_gamma() - GAMMA_REF).abs() < 1e-12);
    }

    #[test]
    fn harmonic_gamma_values() {
        assert_eq!(harmonic_gamma(1), 1.0);
        assert!((harmonic_gamma(1_000_000) - 0.577_215_66).abs() < 1e-5);
        let mut prev = f64::INFINITY;
        for n in 1..2000 {
            let v = harmonic_gamma(n);
            assert!(v < prev);
            assert!(v - GAMMA_REF <= 1.0 / n as f64);
            prev = v;
        }
    }

    #[test]
    fn log_factorial_matches_sum() {
        for n in [0u64, 1, 2, 10, 63, 64, 65, 1000, 100_000] {
            let direct: KahanSum = (2..=n).map(|k| (k as f64).ln()).collect();
            let d = direct.value();
            assert!((log_factorial(n) - d).abs() <= 1e-12 * d.max(1.0), "n={n}");
        }
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2.0) - PI * PI / 6.0).abs() < 1e-13);
        assert!((zeta(3.0) - 1.202_056_903_159_594_2).abs() < 1e-13);
        assert!((inverse_zeta2(100_000) - 6.0 / (PI * PI)).abs() < 1e-12);
        // direct partial sums as an independent oracle for the tail
        let direct: f64 = (1..=200_000u64).rev().map(|k| 1.0 / (k as f64).powi(3)).sum();
        assert!((zeta(3.0) - direct).abs() < 2e-11);
        assert!(zeta(3.0) > direct);
    }

    #[test]
    fn character_reduction() {
        assert!((e(0.25) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((e(1e6 + 0.5) + Complex64::new(1.0, 0.0)).norm() < 1e-9);
        assert_eq!(centered_turn(0.5), -0.5);
        assert_eq!(centered_turn(-0.25), -0.25);
    }

    #[test]
    fn mobius_small() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expect.iter().enumerate() {
            assert_eq!(mobius_of(i as u64 + 1), m);
        }
    }

    #[test]
    fn compensated_beats_naive() {
        let mut k = KahanSum::new();
        k.add(1.0);
        for _ in 0..10_000 {
            k.add(1e-16);
        }
        assert!((k.value() - (1.0 + 1e-12)).abs() < 1e-15);
    }
}
