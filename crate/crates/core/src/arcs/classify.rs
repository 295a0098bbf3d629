use std::io::{BufWriter, Write};

use serde::Serialize;

use crate::arcs::params::ArcParameters;
use crate::arcs::rational::{best_rational, Rational};
use crate::error::{Error, Result};
use crate::numeric::{fmt_f64, gcd};

/// Where `x` sits relative to the major arcs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MajorArcLocation {
    pub x: f64,
    /// The covering centre if major, otherwise `best_rational(x, Q)`.
    pub center: Rational,
    pub distance: f64,
    pub is_major: bool,
}

/// Locates `x ∈ [0, 1]` relative to `{x : |x - a/q| ≤ 1/Q, q ≤ P}`.
///
/// When `x` is major the centre is unique because `16 M P² ≤ Q` keeps
/// distinct centres more than `2/Q` apart.
pub fn classify(x: f64, params: &ArcParameters) -> MajorArcLocation {
    let near = best_rational(x, params.p());
    let distance = near.distance(x);
    if distance <= 1.0 / params.q() as f64 {
        return MajorArcLocation {
            x,
            center: near,
            distance,
            is_major: true,
        };
    }
    let center = best_rational(x, params.q());
    MajorArcLocation {
        x,
        center,
        distance: center.distance(x),
        is_major: false,
    }
}

/// Largest band that [`farey_band`] will materialise.
pub const MAX_BAND: u32 = 24;

/// Reduced fractions `a/q`, `1 ≤ a ≤ q`, with `2^{s-1} ≤ q < 2^s`, ordered by `q` then `a`.
pub fn farey_band(s: u32) -> Result<Vec<Rational>> {
    if s == 0 {
        return Err(Error::Parameter("band index s must be >= 1".into()));
    }
    if s > MAX_BAND {
        return Err(Error::Resource(format!("band {s} exceeds the limit {MAX_BAND}")));
    }
    let (lo, hi) = (1u64 << (s - 1), 1u64 << s);
    let mut out = Vec::new();
    for q in lo..hi {
        out.extend(
            (1..=q)
                .filter(|&a| gcd(a, q) == 1)
                .map(|a| Rational::new(a, q).unwrap()),
        );
    }
    Ok(out)
}

/// Outcome of [`disjointness_audit`].
#[derive(Debug, Clone, Serialize)]
pub struct DisjointnessAudit {
    pub s: u32,
    pub m: f64,
    pub disjoint: bool,
    /// Smallest circular gap between two centres of the band (1 for a single centre).
    pub min_gap: f64,
    /// Twice the support half-width, `1/(4^s M)`.
    pub required: f64,
    /// The closest pair, reported when the supports overlap.
    pub witness: Option<(Rational, Rational)>,
}

/// Checks that the supports `|x - a/q| < 1/(2·4^s M)` of one band are
/// pairwise disjoint on the circle.
pub fn disjointness_audit(s: u32, m: f64) -> Result<DisjointnessAudit> {
    if !(m > 0.0) {
        return Err(Error::Parameter("M must be positive".into()));
    }
    let mut band = farey_band(s)?;
    band.sort_by(|x, y| (x.a() as u128 * y.q() as u128).cmp(&(y.a() as u128 * x.q() as u128)));
    let required = 1.0 / (4f64.powi(s as i32) * m);
    let mut min_gap = 1.0;
    let mut pair = None;
    for i in 0..band.len() {
        if band.len() < 2 {
            break;
        }
        let (x, y) = (band[i], band[(i + 1) % band.len()]);
        let mut gap = y.value() - x.value();
        if gap <= 0.0 {
            gap += 1.0;
        }
        if gap < min_gap {
            min_gap = gap;
            pair = Some((x, y));
        }
    }
    let disjoint = min_gap >= required;
    Ok(DisjointnessAudit {
        s,
        m,
        disjoint,
        min_gap,
        required,
        witness: if disjoint { None } else { pair },
    })
}

/// Writes classification rows `x,is_major,a,q,distance,P_n,Q_n`.
pub fn write_classification_csv<W: Write>(rows: &[MajorArcLocation], params: &ArcParameters, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "x,is_major,a,q,distance,P_n,Q_n")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(r.x),
            r.is_major,
            r.center.a(),
            r.center.q(),
            fmt_f64(r.distance),
            params.p(),
            params.q()
        )?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{sieve, ArithFn};
    use proptest::prelude::*;

    fn params() -> ArcParameters {
        ArcParameters::new(1 << 20, 2.0, 0.9, 4, 8, 4096).unwrap()
    }

    #[test]
    fn classify_examples() {
        let prm = params();
        let z = classify(0.0, &prm);
        assert!(z.is_major);
        assert_eq!(z.center, Rational::ZERO);
        let third = classify(1.0 / 3.0, &prm);
        assert!(third.is_major && third.center == Rational::new(1, 3).unwrap());
        let x = 1.0 / 3.0 + 2.0 / prm.q() as f64;
        let loc = classify(x, &prm);
        let any_close = (1..=prm.p())
            .flat_map(|q| (0..=q).map(move |a| (a, q)))
            .any(|(a, q)| (x - a as f64 / q as f64).abs() <= 1.0 / prm.q() as f64);
        assert_eq!(loc.is_major, any_close);
        assert!(!loc.is_major);
    }

    #[test]
    fn band_examples() {
        assert_eq!(farey_band(1).unwrap(), vec![Rational::new(1, 1).unwrap()]);
        let b2: Vec<_> = farey_band(2).unwrap().iter().map(|r| (r.a(), r.q())).collect();
        assert_eq!(b2, vec![(1, 2), (1, 3), (2, 3)]);
        let phi = sieve(ArithFn::Totient, 1024).unwrap();
        let expected: f64 = (512..1024).map(|q| phi.get(q)).sum();
        assert_eq!(farey_band(10).unwrap().len() as f64, expected);
        assert!(farey_band(0).is_err());
        assert!(matches!(farey_band(40), Err(Error::Resource(_))));
    }

    #[test]
    fn audit_examples() {
        assert!(disjointness_audit(1, 4.0).unwrap().disjoint);
        let a2 = disjointness_audit(2, 4.0).unwrap();
        assert!(a2.disjoint);
        assert!((a2.min_gap - 1.0 / 6.0).abs() < 1e-15);
        for s in 1..=10 {
            let a = disjointness_audit(s, 4.0).unwrap();
            assert!(a.disjoint, "band {s}: gap {} < {}", a.min_gap, a.required);
        }
        // neighbouring denominators q, q+1 in one band sit 1/(q(q+1)) apart,
        // which beats 1/4^s for every M ≥ 1; a small enough M does overlap
        assert!(disjointness_audit(3, 1.0).unwrap().disjoint);
        let tight = disjointness_audit(3, 0.25).unwrap();
        assert!(!tight.disjoint && tight.witness.is_some());
    }

    #[test]
    fn band_members_distinct() {
        for s in 1..=9 {
            let mut vals: Vec<_> = farey_band(s).unwrap().iter().map(|r| (r.a(), r.q())).collect();
            let n = vals.len();
            vals.sort();
            vals.dedup();
            assert_eq!(vals.len(), n);
        }
    }

    proptest! {
        #[test]
        fn unique_major_centre(x in 0.0f64..=1.0) {
            let prm = params();
            let loc = classify(x, &prm);
            let hits: Vec<(u64, u64)> = (1..=prm.p())
                .flat_map(|q| (0..=q).map(move |a| (a, q)))
                .filter(|&(a, q)| gcd(a, q) == 1 && (x - a as f64 / q as f64).abs() <= 1.0 / prm.q() as f64)
                .collect();
            prop_assert!(hits.len() <= 1);
            prop_assert_eq!(loc.is_major, hits.len() == 1);
            if loc.is_major {
                prop_assert_eq!((loc.center.a(), loc.center.q()), hits[0]);
                let again = best_rational(x, prm.q());
                if again.q() <= prm.p() {
                    prop_assert_eq!(again, loc.center);
                }
            }
        }
    }
}
