use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::numeric::{gcd, Frequency};

/// A reduced fraction `a/q` with `0 ≤ a ≤ q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rational {
    a: u64,
    q: u64,
}

impl Rational {
    /// Validates `q ≥ 1`, `a ≤ q` and `gcd(a, q) = 1`.
    pub fn new(a: u64, q: u64) -> Result<Self> {
        if q == 0 || a > q {
            return param(format!("{a}/{q} is not in [0, 1] with q >= 1"));
        }
        if gcd(a, q) != 1 {
            return param(format!("{a}/{q} is not reduced"));
        }
        Ok(Self { a, q })
    }

    /// Reduces `a/q` (with `a ≤ q`).
    pub fn reduced(a: u64, q: u64) -> Self {
        assert!(q >= 1 && a <= q);
        let g = gcd(a, q).max(1);
        Self { a: a / g, q: q / g }
    }

    pub const ZERO: Rational = Rational { a: 0, q: 1 };

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn value(&self) -> f64 {
        self.a as f64 / self.q as f64
    }

    /// `|x - a/q|` on the real line.
    pub fn distance(&self, x: f64) -> f64 {
        (x - self.value()).abs()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.q)
    }
}

impl From<Rational> for Frequency {
    fn from(r: Rational) -> Self {
        Frequency::Ratio { a: r.a, q: r.q }
    }
}

const SCALE_BITS: u32 = 62;
/// Denominators above this cap are not distinguished by the `2^-62` grid.
pub const MAX_DENOMINATOR: u64 = 1 << 31;

/// The reduced `a/q` with `q ≤ qbound` closest to `x ∈ [0, 1]`, ties going to
/// the smaller denominator.
///
/// `x` is rounded to the dyadic grid `2^-62` and expanded as an exact
/// continued fraction; the answer is either the last convergent within the
/// bound or the largest admissible intermediate fraction after it. Bounds above
/// `2^31` are clamped.
pub fn best_rational(x: f64, qbound: u64) -> Rational {
    assert!((0.0..=1.0).contains(&x), "best_rational expects x in [0, 1], got {x}");
    assert!(qbound >= 1, "qbound must be >= 1");
    let qbound = qbound.min(MAX_DENOMINATOR) as u128;
    let den: u128 = 1 << SCALE_BITS;
    let num: u128 = (x * den as f64).round() as u128;
    if num == 0 {
        return Rational::ZERO;
    }
    if num >= den {
        return Rational { a: 1, q: 1 };
    }
    // (p2/q2, p1/q1) are the two most recent convergents.
    let (mut p2, mut q2, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let (mut u, mut v) = (num, den);
    loop {
        let a = u / v;
        let (p, q) = (a * p1 + p2, a * q1 + q2);
        if q > qbound {
            let t = (qbound - q2) / q1;
            let conv = (p1, q1);
            if t == 0 {
                return Rational {
                    a: conv.0 as u64,
                    q: conv.1 as u64,
                };
            }
            let semi = (t * p1 + p2, t * q1 + q2);
            let better = closer(num, den, semi, conv);
            return Rational {
                a: better.0 as u64,
                q: better.1 as u64,
            };
        }
        (p2, q2, p1, q1) = (p1, q1, p, q);
        let r = u - a * v;
        if r == 0 {
            return Rational {
                a: p as u64,
                q: q as u64,
            };
        }
        (u, v) = (v, r);
    }
}

/// The last continued-fraction convergent of `x` with `q ≤ qbound`.
///
/// This is the fraction of Dirichlet's theorem: `|x - a/q| ≤ 1/(q (qbound + 1))`.
/// It can be farther from `x` than [`best_rational`], which also considers
/// intermediate fractions.
pub fn dirichlet_rational(x: f64, qbound: u64) -> Rational {
    assert!((0.0..=1.0).contains(&x) && qbound >= 1);
    let qbound = qbound.min(MAX_DENOMINATOR) as u128;
    let den: u128 = 1 << SCALE_BITS;
    let num: u128 = (x * den as f64).round() as u128;
    if num >= den {
        return Rational { a: 1, q: 1 };
    }
    let (mut p2, mut q2, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let (mut u, mut v) = (num, den);
    loop {
        if v == 0 {
            return Rational {
                a: p1 as u64,
                q: q1 as u64,
            };
        }
        let a = u / v;
        let (p, q) = (a * p1 + p2, a * q1 + q2);
        if q > qbound {
            return Rational {
                a: p1 as u64,
                q: q1 as u64,
            };
        }
        (p2, q2, p1, q1) = (p1, q1, p, q);
        (u, v) = (v, u - a * v);
    }
}

/// Picks the fraction closer to `num/den`; ties go to the smaller denominator.
fn closer(num: u128, den: u128, f: (u128, u128), g: (u128, u128)) -> (u128, u128) {
    let err = |(p, q): (u128, u128)| (num * q).abs_diff(p * den);
    // |x - p/q| = err / (q den); compare err_f * q_g against err_g * q_f.
    let lhs = err(f) * g.1;
    let rhs = err(g) * f.1;
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => f,
        std::cmp::Ordering::Greater => g,
        std::cmp::Ordering::Equal => {
            if f.1 <= g.1 {
                f
            } else {
                g
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(x: f64, qbound: u64) -> Rational {
        let mut best = Rational::ZERO;
        let mut best_d = x;
        for q in 1..=qbound {
            let a = (x * q as f64).round() as u64;
            for a in [a.saturating_sub(1), a, a + 1] {
                if a > q || gcd(a, q) != 1 {
                    continue;
                }
                let d = (x - a as f64 / q as f64).abs();
                if d < best_d - 1e-15 {
                    best = Rational { a, q };
                    best_d = d;
                }
            }
        }
        best
    }

    #[test]
    fn examples() {
        assert_eq!(best_rational(0.5, 10), Rational::new(1, 2).unwrap());
        assert_eq!(best_rational(0.3335, 100), Rational::new(1, 3).unwrap());
        assert_eq!(best_rational(0.0, 7), Rational::ZERO);
        assert_eq!(best_rational(1.0, 7), Rational::new(1, 1).unwrap());
        let x = std::f64::consts::PI - 3.0;
        let r = best_rational(x, 1_000_000);
        let d = dirichlet_rational(x, 1_000_000);
        assert!(d.distance(x) <= 1.0 / (d.q() as f64 * 1e6));
        assert!(r.distance(x) <= d.distance(x));
        // the closest fraction here is an intermediate one, which is closer
        // than the last convergent but has a larger denominator
        assert!(r.q() > d.q());
    }

    #[test]
    fn tie_goes_to_smaller_q() {
        // 0.25 is equidistant from 0/1 and 1/2 with q ≤ 2
        assert_eq!(best_rational(0.25, 2), Rational::ZERO);
        assert_eq!(best_rational(0.75, 2), Rational::new(1, 1).unwrap());
        assert_eq!(best_rational(0.75, 4), Rational::new(3, 4).unwrap());
    }

    #[test]
    fn exhaustive_agreement() {
        let mut rng = 0x9e37_79b9_7f4a_7c15u64;
        for i in 0..1000 {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            let x = (rng >> 11) as f64 / (1u64 << 53) as f64;
            let qb = 1 + (i % 500) as u64;
            let fast = best_rational(x, qb);
            let slow = brute(x, qb);
            assert!(
                fast == slow || (fast.distance(x) - slow.distance(x)).abs() < 1e-15,
                "x={x} qb={qb}: {fast} vs {slow}"
            );
        }
    }

    proptest! {
        #[test]
        fn dirichlet_guarantee(x in 0.0f64..1.0, qb in 1u64..100_000) {
            let r = best_rational(x, qb);
            prop_assert!(r.q() <= qb);
            prop_assert_eq!(gcd(r.a(), r.q()), 1);
            let d = dirichlet_rational(x, qb);
            prop_assert!(d.distance(x) <= 1.0 / (d.q() as f64 * (qb + 1) as f64) * (1.0 + 1e-9) + 1e-18);
            prop_assert!(r.distance(x) <= d.distance(x));
        }
    }
}
