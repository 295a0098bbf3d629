use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Parameters of the major/minor arc split at scale `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcParameters {
    n: u64,
    s: f64,
    tau: f64,
    m: u32,
    p: u64,
    q: u64,
}

impl ArcParameters {
    /// Validates `n ≥ 2`, `S > 1`, `0 < τ ≤ 1`, `M > 2`, `P ≥ 1`,
    /// `16 M P² ≤ Q ≤ n` and `Q ≥ 16 M P`.
    pub fn new(n: u64, s: f64, tau: f64, m: u32, p: u64, q: u64) -> Result<Self> {
        if n < 2 {
            return param("n must be >= 2");
        }
        if !(s > 1.0) {
            return param("S must be > 1");
        }
        if !(tau > 0.0 && tau <= 1.0) {
            return param("tau must lie in (0, 1]");
        }
        if m <= 2 {
            return param("M must be > 2");
        }
        if p < 1 {
            return param("P must be >= 1");
        }
        let spread = 16 * m as u128 * p as u128;
        if spread * p as u128 > q as u128 || q > n || (q as u128) < spread {
            return param(format!("need 16·M·P² <= Q <= n, got M={m}, P={p}, Q={q}, n={n}"));
        }
        Ok(Self { n, s, tau, m, p, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn s(&self) -> f64 {
        self.s
    }
    pub fn tau(&self) -> f64 {
        self.tau
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// Largest major-arc denominator `P_n`.
    pub fn p(&self) -> u64 {
        self.p
    }
    /// Inverse arc radius `Q_n`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Highest Farey band that can hold a major-arc centre: `⌈log₂ P⌉ + 1`.
    pub fn s_max(&self) -> u32 {
        ceil_log2(self.p) + 1
    }

    /// The asymptotic schedule `P = ⌊(log n)^{3S}⌋`, `Q = ⌊n/(log n)^{2S}⌋`.
    ///
    /// The constraints only hold for very large `n`; on failure the error
    /// names the smallest admissible `n` (or says none fits in 64 bits).
    pub fn asymptotic(n: u64, s: f64, tau: f64, m: u32) -> Result<Self> {
        if n < 3 {
            return param("n must be >= 3");
        }
        let (p, q) = asymptotic_pq(n, s);
        Self::new(n, s, tau, m, p, q).map_err(|err| {
            if !(s > 1.0) || m <= 2 || !(tau > 0.0 && tau <= 1.0) {
                return err;
            }
            let hint = match minimal_asymptotic_n(s, m) {
                Some(n0) => format!("smallest feasible n is {n0}"),
                None => "no n below 2^64 is feasible".into(),
            };
            Error::Parameter(format!(
                "P={p}, Q={q} violate 16·M·P² <= Q <= n at n={n} (S={s}, M={m}); {hint}"
            ))
        })
    }

    /// Schedule used for experiments at desk scale (`n ≤ 2^24` or so), where the
    /// asymptotic schedule is infeasible: `Q = ⌊n/(log n)^{S/2}⌋` and
    /// `P = max(1, ⌊√(Q/(16M))⌋)`, the largest `P` allowed by the constraints.
    pub fn desk(n: u64, s: f64, tau: f64, m: u32) -> Result<Self> {
        if n < 3 {
            return param("n must be >= 3");
        }
        let l = (n as f64).ln();
        let q = ((n as f64 / l.powf(s / 2.0)).floor() as u64).min(n);
        let mut p = ((q as f64 / (16.0 * m as f64)).sqrt().floor() as u64).max(1);
        while p > 1 && 16 * m as u64 * p * p > q {
            p -= 1;
        }
        Self::new(n, s, tau, m, p, q)
    }
}

fn ceil_log2(p: u64) -> u32 {
    if p <= 1 {
        0
    } else {
        64 - (p - 1).leading_zeros()
    }
}

fn asymptotic_pq(n: u64, s: f64) -> (u64, u64) {
    let l = (n as f64).ln();
    let p = l.powf(3.0 * s).floor();
    let q = (n as f64 / l.powf(2.0 * s)).floor();
    (p.min(u64::MAX as f64) as u64, q.min(u64::MAX as f64) as u64)
}

fn asymptotic_ok(n: u64, s: f64, m: u32) -> bool {
    let (p, q) = asymptotic_pq(n, s);
    p >= 1 && (16 * m as u128) * (p as u128) * (p as u128) <= q as u128 && q <= n
}

/// Smallest `n` for which [`ArcParameters::asymptotic`] satisfies the constraints.
///
/// With `L = log n` the constraint reads `n/L^{2S} ≥ 16M⌊L^{3S}⌋²`. Below
/// `L = 8S` the necessary relaxation `e^L ≥ 16M L^{2S}(L^{3S}-1)²` fails, and
/// past it `n ≥ 16M L^{8S}` is sufficient, so only the window between the two
/// relaxations is scanned, one segment of constant `P` at a time.
pub fn minimal_asymptotic_n(s: f64, m: u32) -> Option<u64> {
    let c = (16.0 * m as f64).ln();
    let necessary = |l: f64| l >= c + 2.0 * s * l.ln() + 2.0 * (l.powf(3.0 * s) - 1.0).max(1.0).ln();
    let sufficient = |l: f64| l >= c + 8.0 * s * l.ln();
    let l_max = (u64::MAX as f64).ln();
    let mut l_lo = (8.0 * s).max(1.0);
    if !necessary(l_max) && !sufficient(l_max) {
        return None;
    }
    while l_lo < l_max && !necessary(l_lo) {
        l_lo += 1e-3;
    }
    let mut n = ((l_lo - 1e-2).exp().floor() as u64).max(3);
    loop {
        if n as f64 >= l_max.exp() {
            return None;
        }
        let l = (n as f64).ln();
        let p = l.powf(3.0 * s).floor();
        // first n where P increases
        let next = ((p + 1.0).powf(1.0 / (3.0 * s)).exp().ceil() as u64).max(n + 1);
        let (mut lo, mut hi) = (n, next - 1);
        if asymptotic_ok(hi, s, m) {
            // n/L^{2S} is increasing here, so the feasible part of the segment is a suffix
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if asymptotic_ok(mid, s, m) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            return Some(lo);
        }
        n = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ArcParameters::new(1000, 2.0, 0.9, 4, 2, 256).is_ok());
        assert!(ArcParameters::new(1000, 2.0, 0.9, 4, 2, 255).is_err());
        assert!(ArcParameters::new(100, 2.0, 0.9, 4, 2, 256).is_err());
        assert!(ArcParameters::new(1000, 2.0, 0.9, 2, 1, 64).is_err());
        assert!(ArcParameters::new(1000, 1.0, 0.9, 4, 1, 64).is_err());
        assert!(ArcParameters::new(1000, 2.0, 0.0, 4, 1, 64).is_err());
        assert!(ArcParameters::new(1000, 2.0, 0.9, 4, 0, 64).is_err());
    }

    #[test]
    fn s_max_values() {
        let p = |p| ArcParameters::new(1 << 30, 2.0, 0.9, 4, p, 1 << 28).unwrap().s_max();
        assert_eq!([p(1), p(2), p(3), p(4), p(5), p(18)], [1, 2, 3, 3, 4, 6]);
    }

    #[test]
    fn asymptotic_small_n_fails() {
        let err = ArcParameters::asymptotic(10, 2.0, 0.9, 4).unwrap_err().to_string();
        assert!(err.contains("no n below 2^64"), "{err}");
    }

    #[test]
    fn asymptotic_minimal_n() {
        let n0 = minimal_asymptotic_n(1.1, 4).expect("feasible");
        // regression value
        assert_eq!(n0, 2_872_736_878_885_457);
        assert!(ArcParameters::asymptotic(n0, 1.1, 0.9, 4).is_ok());
        assert!(ArcParameters::asymptotic(n0 - 1, 1.1, 0.9, 4).is_err());
        let err = ArcParameters::asymptotic(1 << 40, 1.1, 0.9, 4).unwrap_err().to_string();
        assert!(err.contains(&n0.to_string()), "{err}");
        assert!(minimal_asymptotic_n(2.0, 4).is_none());
    }

    #[test]
    fn p_monotone_in_n() {
        let mut last = 0;
        for k in 2..64 {
            let (p, _) = asymptotic_pq(1u64 << k, 2.0);
            assert!(p >= last);
            last = p;
        }
    }

    #[test]
    fn desk_schedule_is_valid() {
        for k in 10..=24 {
            let prm = ArcParameters::desk(1 << k, 2.0, 0.9, 4).unwrap();
            assert!(prm.p() >= 1 && prm.q() <= prm.n());
        }
    }
}
