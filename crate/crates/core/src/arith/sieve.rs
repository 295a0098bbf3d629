use crate::arith::table::{ArithFn, ArithmeticTable, Values};
use crate::error::{param, Result};

/// Smallest-prime-factor sieve with the prime-power split of every `n ≤ N`.
///
/// For `n ≥ 2` with smallest prime `p`, `n = p^exponent[n] · cofactor[n]` and
/// `p ∤ cofactor[n]`.
pub struct SpfSieve {
    spf: Vec<u32>,
    cofactor: Vec<u32>,
    exponent: Vec<u8>,
    primes: Vec<u32>,
}

impl SpfSieve {
    pub fn new(n: usize) -> Self {
        assert!(n < u32::MAX as usize, "sieve bound exceeds 32 bits");
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > n {
                    break;
                }
                spf[m] = p;
            }
        }
        let mut cofactor = vec![1u32; n + 1];
        let mut exponent = vec![0u8; n + 1];
        for i in 2..=n {
            let p = spf[i] as usize;
            let m = i / p;
            if m > 1 && spf[m] as usize == p {
                cofactor[i] = cofactor[m];
                exponent[i] = exponent[m] + 1;
            } else {
                cofactor[i] = m as u32;
                exponent[i] = 1;
            }
        }
        Self {
            spf,
            cofactor,
            exponent,
            primes,
        }
    }

    pub fn bound(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    /// `(p, a, m)` with `n = p^a m`, `p` the smallest prime factor; `n ≥ 2`.
    #[inline]
    pub fn split(&self, n: usize) -> (u64, u32, usize) {
        (self.spf[n] as u64, self.exponent[n] as u32, self.cofactor[n] as usize)
    }

    /// Builds `f` from its values on prime powers, `f(p^a m) = f(p^a) f(m)`.
    pub fn multiplicative_int(&self, at_prime_power: impl Fn(u64, u32) -> i64) -> Vec<i64> {
        let n = self.bound();
        let mut v = vec![0i64; n + 1];
        if n >= 1 {
            v[1] = 1;
        }
        for i in 2..=n {
            let (p, a, m) = self.split(i);
            v[i] = v[m] * at_prime_power(p, a);
        }
        v
    }

    pub fn multiplicative_real(&self, at_prime_power: impl Fn(u64, u32) -> f64) -> Vec<f64> {
        let n = self.bound();
        let mut v = vec![0f64; n + 1];
        if n >= 1 {
            v[1] = 1.0;
        }
        for i in 2..=n {
            let (p, a, m) = self.split(i);
            v[i] = v[m] * at_prime_power(p, a);
        }
        v
    }

    /// Builds `g` from its values on prime powers, `g(p^a m) = g(p^a) + g(m)`.
    pub fn additive_int(&self, at_prime_power: impl Fn(u64, u32) -> i64) -> Vec<i64> {
        let n = self.bound();
        let mut v = vec![0i64; n + 1];
        for i in 2..=n {
            let (p, a, m) = self.split(i);
            v[i] = v[m] + at_prime_power(p, a);
        }
        v
    }

    /// Prime powers `p^a ≤ N` as `(p, a, p^a)`.
    pub fn prime_powers(&self) -> impl Iterator<Item = (u64, u32, u64)> + '_ {
        let n = self.bound() as u64;
        self.primes.iter().flat_map(move |&p| {
            let p = p as u64;
            std::iter::successors(Some((1u32, p)), move |&(a, q)| {
                q.checked_mul(p).filter(|&r| r <= n).map(|r| (a + 1, r))
            })
            .map(move |(a, q)| (p, a, q))
        })
    }
}

/// `base^s`, exact for small non-negative integral `s` whenever the result is.
fn real_pow(base: f64, s: f64) -> f64 {
    if s.fract() == 0.0 && (0.0..=16.0).contains(&s) {
        base.powi(s as i32)
    } else {
        base.powf(s)
    }
}

/// Tabulates `f` on `1..=n`.
pub fn sieve(f: ArithFn, n: usize) -> Result<ArithmeticTable> {
    if n == 0 {
        return param("sieve bound N must be >= 1");
    }
    let values = match f {
        ArithFn::Unit => {
            let mut v = vec![0i64; n + 1];
            v[1] = 1;
            Values::Int(v)
        }
        ArithFn::One => Values::Int(vec![1i64; n + 1]),
        ArithFn::Power(s) => Values::Real((0..=n).map(|k| real_pow(k as f64, s)).collect()),
        ArithFn::MobiusAtSquares => {
            let mut root = 1usize;
            while (root + 1) * (root + 1) <= n {
                root += 1;
            }
            let mu = SpfSieve::new(root).multiplicative_int(|_, a| if a == 1 { -1 } else { 0 });
            let mut v = vec![0i64; n + 1];
            for r in 1..=root {
                v[r * r] = mu[r];
            }
            Values::Int(v)
        }
        _ => {
            let sv = SpfSieve::new(n);
            match f {
                ArithFn::Divisors => Values::Int(sv.multiplicative_int(|_, a| a as i64 + 1)),
                ArithFn::Mobius => Values::Int(sv.multiplicative_int(|_, a| if a == 1 { -1 } else { 0 })),
                ArithFn::Squarefree => Values::Int(sv.multiplicative_int(|_, a| (a == 1) as i64)),
                ArithFn::Liouville => Values::Int(sv.multiplicative_int(|_, a| if a % 2 == 1 { -1 } else { 1 })),
                ArithFn::SquarefreeDivisors => Values::Int(sv.multiplicative_int(|_, _| 2)),
                ArithFn::Totient => Values::Int(sv.multiplicative_int(|p, a| ((p - 1) * p.pow(a - 1)) as i64)),
                ArithFn::DistinctPrimes => Values::Int(sv.additive_int(|_, _| 1)),
                ArithFn::PrimeFactors => Values::Int(sv.additive_int(|_, a| a as i64)),
                ArithFn::DivisorPower(s) => Values::Real(sv.multiplicative_real(|p, a| {
                    let ps = real_pow(p as f64, s);
                    let (mut term, mut acc) = (1.0, 1.0);
                    for _ in 0..a {
                        term *= ps;
                        acc += term;
                    }
                    acc
                })),
                ArithFn::Jordan(s) => Values::Real(sv.multiplicative_real(|p, a| {
                    let ps = real_pow(p as f64, s);
                    let lower = (1..a).fold(1.0, |t, _| t * ps);
                    lower * ps - lower
                })),
                ArithFn::Unit | ArithFn::One | ArithFn::Power(_) | ArithFn::MobiusAtSquares => unreachable!(),
            }
        }
    };
    ArithmeticTable::from_values(f.to_string(), Some(f), values)
}
