use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::numeric::e;

/// A measure-preserving map of `[0, 1)` (or a shift space read through its
/// first coordinate).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DynamicalSystem {
    /// `x ↦ x + α mod 1`.
    Rotation { alpha: f64 },
    /// `x ↦ 2x mod 1`. Without a seed the orbit of the start point is tracked
    /// in 128-bit fixed point, exact for 128 steps (the float start point only
    /// carries 53 bits, so it reaches 0 after about 53 steps). With a seed the
    /// start point is a random binary expansion and `τ^k x` reads its digits
    /// from position `k` on, so orbits of any length stay generic.
    Doubling { seed: Option<u64> },
    /// I.i.d. uniform coordinates drawn from the seed; `τ` is the left shift.
    Bernoulli { seed: u64 },
}

const TWO_POW_64: f64 = 18_446_744_073_709_551_616.0;

impl DynamicalSystem {
    pub fn name(&self) -> &'static str {
        match self {
            DynamicalSystem::Rotation { .. } => "rotation",
            DynamicalSystem::Doubling { .. } => "doubling",
            DynamicalSystem::Bernoulli { .. } => "bernoulli",
        }
    }

    /// Parses `rotation`, `doubling` or `bernoulli` with the given parameters.
    pub fn from_name(name: &str, alpha: Option<f64>, seed: Option<u64>) -> Result<Self> {
        match name {
            "rotation" => match alpha {
                Some(a) if (0.0..1.0).contains(&a) => Ok(DynamicalSystem::Rotation { alpha: a }),
                _ => param("rotation needs --alpha in [0, 1)"),
            },
            "doubling" => Ok(DynamicalSystem::Doubling { seed }),
            "bernoulli" => Ok(DynamicalSystem::Bernoulli {
                seed: seed.unwrap_or(0),
            }),
            other => param(format!("unknown system '{other}'")),
        }
    }

    /// The points `τ^k x0` for `k = start..start + len`.
    ///
    /// `x0` is ignored by the seeded systems, whose start point is the seed.
    pub fn orbit(&self, x0: f64, start: u64, len: usize) -> Vec<f64> {
        match *self {
            DynamicalSystem::Rotation { alpha } => (start..start + len as u64)
                .map(|k| {
                    let t = x0 + (k as f64 * alpha).fract();
                    t - t.floor()
                })
                .collect(),
            DynamicalSystem::Doubling { seed: None } => {
                let mut state = to_fixed(x0);
                state = if start >= 128 { 0 } else { state << start };
                (0..len)
                    .map(|_| {
                        let x = from_fixed(state);
                        state <<= 1;
                        x
                    })
                    .collect()
            }
            DynamicalSystem::Doubling { seed: Some(seed) } => {
                // 64-bit windows of the digit stream starting at bit `start`
                let first_word = start / 64;
                let shift = (start % 64) as u32;
                let words_needed = (len as u64 + shift as u64) / 64 + 2;
                let words = digit_words(seed, first_word, words_needed as usize);
                (0..len)
                    .map(|i| {
                        let bit = shift as usize + i;
                        let (w, b) = (bit / 64, (bit % 64) as u32);
                        let hi = words[w] << b;
                        let lo = if b == 0 { 0 } else { words[w + 1] >> (64 - b) };
                        (hi | lo) as f64 / TWO_POW_64
                    })
                    .map(|x| if x >= 1.0 { 1.0 - f64::EPSILON / 2.0 } else { x })
                    .collect()
            }
            DynamicalSystem::Bernoulli { seed } => {
                let mut rng = ChaCha20Rng::seed_from_u64(seed);
                rng.set_word_pos(2 * start as u128);
                (0..len)
                    .map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64)
                    .collect()
            }
        }
    }

    /// `τ(x)` for the deterministic maps.
    pub fn step(&self, x: f64) -> Option<f64> {
        match *self {
            DynamicalSystem::Rotation { alpha } => {
                let t = x + alpha;
                Some(t - t.floor())
            }
            DynamicalSystem::Doubling { seed: None } => {
                let t = 2.0 * x;
                Some(t - t.floor())
            }
            _ => None,
        }
    }
}

fn to_fixed(x: f64) -> u128 {
    let x = x - x.floor();
    let hi = (x * TWO_POW_64).floor();
    let lo = ((x * TWO_POW_64 - hi) * TWO_POW_64).floor();
    ((hi as u128) << 64) | lo as u128
}

fn from_fixed(s: u128) -> f64 {
    (s >> 64) as u64 as f64 / TWO_POW_64 + (s as u64) as f64 / (TWO_POW_64 * TWO_POW_64)
}

/// Words `first..first + count` of the digit stream, most significant bit first.
fn digit_words(seed: u64, first: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x5eed_d161_75ee_d5ed);
    rng.set_word_pos(2 * first as u128);
    (0..count).map(|_| rng.next_u64()).collect()
}

/// Functions on `[0, 1)` available as observables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Observable {
    /// `e(m x)`.
    Character {
        m: i64,
    },
    /// `1_{[a, b)}`.
    Interval {
        a: f64,
        b: f64,
    },
    /// `1_{[0,1/2)} - 1_{[1/2,1)}`.
    HaarStep,
    Constant {
        re: f64,
        im: f64,
    },
    /// Piecewise constant on `len` equal cells.
    Tabulated {
        values: Vec<f64>,
    },
    /// `Σ c_i f_i`.
    Sum {
        terms: Vec<(Complex64, Observable)>,
    },
}

impl Observable {
    pub fn constant(c: f64) -> Self {
        Observable::Constant { re: c, im: 0.0 }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        match self {
            Observable::Character { m } => e(*m as f64 * x),
            Observable::Interval { a, b } => Complex64::new(if x >= *a && x < *b { 1.0 } else { 0.0 }, 0.0),
            Observable::HaarStep => Complex64::new(if x < 0.5 { 1.0 } else { -1.0 }, 0.0),
            Observable::Constant { re, im } => Complex64::new(*re, *im),
            Observable::Tabulated { values } => {
                if values.is_empty() {
                    return Complex64::new(0.0, 0.0);
                }
                let i = ((x * values.len() as f64) as usize).min(values.len() - 1);
                Complex64::new(values[i], 0.0)
            }
            Observable::Sum { terms } => terms.iter().map(|(c, f)| c * f.eval(x)).sum(),
        }
    }

    /// `∫₀¹ f`.
    pub fn mean(&self) -> Complex64 {
        match self {
            Observable::Character { m } => Complex64::new(if *m == 0 { 1.0 } else { 0.0 }, 0.0),
            Observable::Interval { a, b } => Complex64::new((b.min(1.0) - a.max(0.0)).max(0.0), 0.0),
            Observable::HaarStep => Complex64::new(0.0, 0.0),
            Observable::Constant { re, im } => Complex64::new(*re, *im),
            Observable::Tabulated { values } => {
                Complex64::new(values.iter().sum::<f64>() / values.len().max(1) as f64, 0.0)
            }
            Observable::Sum { terms } => terms.iter().map(|(c, f)| c * f.mean()).sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_orbit() {
        let r = DynamicalSystem::Rotation { alpha: 0.25 };
        assert_eq!(r.orbit(0.1, 0, 5), vec![0.1, 0.35, 0.6, 0.85, 0.1]);
        let tail = r.orbit(0.1, 3, 2);
        assert!((tail[0] - 0.85).abs() < 1e-15 && (tail[1] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn doubling_fixed_point_is_exact() {
        let d = DynamicalSystem::Doubling { seed: None };
        let x0 = 0.1;
        let orbit = d.orbit(x0, 0, 60);
        let mut x = x0;
        for (k, &y) in orbit.iter().enumerate().take(40) {
            // float doubling is exact too while bits remain
            assert_eq!(y, x, "k={k}");
            x = d.step(x).unwrap();
        }
        assert_eq!(d.orbit(x0, 130, 3), vec![0.0; 3]);
        assert_eq!(d.orbit(x0, 7, 5), orbit[7..12].to_vec());
    }

    #[test]
    fn seeded_doubling_shifts_digits() {
        let d = DynamicalSystem::Doubling { seed: Some(9) };
        let long = d.orbit(0.0, 0, 300);
        let mid = d.orbit(0.0, 101, 50);
        assert_eq!(&long[101..151], &mid[..]);
        for k in 0..299 {
            let t = 2.0 * long[k];
            let next = t - t.floor();
            // the next point agrees up to the newly revealed low bits
            assert!((next - long[k + 1]).abs() < 1e-15, "k={k}");
        }
        let halves = long.iter().filter(|&&x| x < 0.5).count();
        assert!((100..200).contains(&halves));
    }

    #[test]
    fn bernoulli_random_access() {
        let b = DynamicalSystem::Bernoulli { seed: 3 };
        let a = b.orbit(0.0, 0, 100);
        assert_eq!(&a[40..60], &b.orbit(0.0, 40, 20)[..]);
        let mean = a.iter().sum::<f64>() / 100.0;
        assert!((mean - 0.5).abs() < 0.15);
        assert!(a.iter().all(|&x| (0.0..1.0).contains(&x)));
    }

    #[test]
    fn observables() {
        assert_eq!(Observable::HaarStep.eval(0.2).re, 1.0);
        assert_eq!(Observable::HaarStep.eval(0.7).re, -1.0);
        assert_eq!(Observable::Interval { a: 0.2, b: 0.4 }.eval(0.3).re, 1.0);
        let tab = Observable::Tabulated {
            values: vec![1.0, 2.0, 3.0, 4.0],
        };
        assert_eq!(tab.eval(0.6).re, 3.0);
        assert_eq!(tab.mean().re, 2.5);
        let sum = Observable::Sum {
            terms: vec![
                (Complex64::new(2.0, 0.0), Observable::HaarStep),
                (Complex64::new(0.0, 1.0), tab.clone()),
            ],
        };
        assert_eq!(sum.eval(0.6), Complex64::new(-2.0, 3.0));
        let json = serde_json::to_string(&sum).unwrap();
        let back: Observable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sum);
    }
}
