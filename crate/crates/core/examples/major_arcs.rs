//! Arc parameters, classification of frequencies into major and minor arcs,
//! best rational approximation and the Farey-band disjointness audit.

use ergw::arcs::{best_rational, classify, disjointness_audit, minimal_asymptotic_n, ArcParameters};

fn main() -> ergw::Result<()> {
    let params = ArcParameters::desk(1 << 16, 2.0, 0.9, 4)?;
    println!(
        "n = {}, P = {}, Q = {}, top band {}",
        params.n(),
        params.p(),
        params.q(),
        params.s_max()
    );
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    for x in [0.0, 0.25, 1.0 / 3.0 + 1e-6, 0.4, golden] {
        let loc = classify(x, &params);
        let kind = if loc.is_major { "major" } else { "minor" };
        println!(
            "x = {x:.6}: {kind}, centre {}/{}, distance {:.2e}",
            loc.center.a(),
            loc.center.q(),
            loc.distance
        );
    }

    let pi_frac = std::f64::consts::PI.fract();
    for qb in [10u64, 200, 40_000] {
        let r = best_rational(pi_frac, qb);
        println!("best rational for frac(π) with q ≤ {qb}: {}/{}", r.a(), r.q());
    }

    for s in 1..=6 {
        let a = disjointness_audit(s, 4.0)?;
        println!(
            "band {s}: disjoint {}, min gap {:.3e}, required {:.3e}",
            a.disjoint, a.min_gap, a.required
        );
    }
    if let Some(n0) = minimal_asymptotic_n(2.0, 4) {
        println!("smallest n with the asymptotic schedule admissible: {n0}");
    }
    Ok(())
}
