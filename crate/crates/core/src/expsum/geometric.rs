//! Closed forms for `G_L(t) = Σ_{1≤ℓ≤L} e(ℓt)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::numeric::{centered_turn, e, Frequency};

/// Below this `|sin(πt)|` the quotient form is replaced by its Taylor expansion.
const TAYLOR_THRESHOLD: f64 = 1e-8;

/// `G_L(t)` for a phase `t` given as a float.
///
/// Uses `e(t(L+1)/2) sin(πLt)/sin(πt)` on the representative of `t` in
/// `[-1/2, 1/2)`; both factors are reduced modulo their periods before
/// the trigonometric calls.
pub fn geometric(l: u64, t: f64) -> Complex64 {
    if l == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let c = centered_turn(t);
    if c == 0.0 {
        return Complex64::new(l as f64, 0.0);
    }
    let lf = l as f64;
    let half = 0.5 * c * (lf + 1.0);
    let s = (PI * c).sin();
    let amplitude = if s.abs() < TAYLOR_THRESHOLD {
        let u = (PI * c) * (PI * c);
        let l2 = lf * lf;
        lf * (1.0 - u * (l2 - 1.0) / 6.0 + u * u * (3.0 * l2 * l2 - 10.0 * l2 + 7.0) / 360.0)
    } else {
        let y = lf * c;
        (PI * (y - 2.0 * (0.5 * y).round())).sin() / s
    };
    e(half) * amplitude
}

/// `G_L(r/q)` with the phase known exactly; all angle reductions are done in
/// integers.
pub fn geometric_ratio(l: u64, r: u64, q: u64) -> Complex64 {
    let r = r % q;
    if r == 0 || l == 0 {
        return Complex64::new(l as f64, 0.0);
    }
    let s = (PI * r as f64 / q as f64).sin();
    if s.abs() < TAYLOR_THRESHOLD {
        return geometric(l, r as f64 / q as f64);
    }
    let (l, r, q) = (l as u128, r as u128, q as u128);
    let lead = ((r * (l + 1)) % (2 * q)) as f64 / (2 * q) as f64;
    let num = ((r * l) % (2 * q)) as f64 / q as f64;
    e(lead) * ((PI * num).sin() / s)
}

/// `G_L(k x)` for a frequency `x`.
#[inline]
pub fn geometric_at(l: u64, x: Frequency, k: u64) -> Complex64 {
    match x {
        Frequency::Real(_) => geometric(l, x.phase(k)),
        Frequency::Ratio { a, q } => geometric_ratio(l, ((k as u128 * a as u128) % q as u128) as u64, q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(l: u64, t: f64) -> Complex64 {
        (1..=l).map(|j| e(j as f64 * t)).sum()
    }

    #[test]
    fn matches_direct_sum() {
        for &l in &[1u64, 2, 7, 100, 1001] {
            for &t in &[0.0, 1e-12, 3e-9, 1e-7, 0.1, 1.0 / 3.0, 0.5, 0.75, 0.999_999_999] {
                let diff = (geometric(l, t) - direct(l, t)).norm();
                assert!(diff < 1e-9 * l as f64, "l={l} t={t} diff={diff}");
            }
        }
    }

    #[test]
    fn ratio_form_matches() {
        for q in [2u64, 3, 7, 50, 997] {
            for r in 0..q.min(60) {
                for l in [1u64, 5, 64, 999] {
                    let a = geometric_ratio(l, r, q);
                    let b = direct(l, r as f64 / q as f64);
                    assert!((a - b).norm() < 1e-9 * l as f64, "l={l} r={r} q={q}");
                }
            }
        }
    }

    #[test]
    fn integer_multiple_branch() {
        assert_eq!(geometric(17, 0.0), Complex64::new(17.0, 0.0));
        assert_eq!(geometric_ratio(17, 3, 3), Complex64::new(17.0, 0.0));
        assert_eq!(geometric_at(9, Frequency::ratio(1, 4), 8), Complex64::new(9.0, 0.0));
    }
}
