use rayon::prelude::*;
use serde::Serialize;

use super::signal::lp_norm;
use super::{convolve, KernelFamily, LatticeSignal};
use crate::error::{param, Result};
use crate::numeric::{zeta_tail, KahanSum};

/// The `ℓ^p` size of a maximal function relative to its input.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximalReport {
    pub p: f64,
    pub kmin: u32,
    pub kmax: u32,
    pub input_norm: f64,
    pub output_norm: f64,
    pub ratio: f64,
    /// Where the pointwise supremum is largest.
    pub witness_index: i64,
    /// `Σ_k ‖(K_{2^k} - L_{2^k}) ∗ g‖₂²` when a second family is supplied.
    pub square_function: Option<f64>,
}

/// `sup_{0≤k≤kmax} |K_{2^k} ∗ g|` and its `ℓ^p` norm relative to `‖g‖_p`.
pub fn dyadic_maximal(family: &dyn KernelFamily, g: &LatticeSignal, kmax: u32, p: f64) -> Result<MaximalReport> {
    dyadic_maximal_range(family, None, g, 0, kmax, p)
}

/// [`dyadic_maximal`] over `kmin ≤ k ≤ kmax`, with the square function
/// against `second` when given.
pub fn dyadic_maximal_range(
    family: &dyn KernelFamily,
    second: Option<&dyn KernelFamily>,
    g: &LatticeSignal,
    kmin: u32,
    kmax: u32,
    p: f64,
) -> Result<MaximalReport> {
    if !(p > 1.0) {
        return param("p must exceed 1");
    }
    if kmax < 1 || kmin > kmax || kmax > 62 {
        return param("need 1 <= kmax <= 62 and kmin <= kmax");
    }
    let ks: Vec<u32> = (kmin..=kmax).collect();
    let members: Vec<(LatticeSignal, Option<f64>)> = ks
        .par_iter()
        .map(|&k| {
            let n = 1u64 << k;
            let kn = family.kernel(n)?;
            let out = convolve(&kn, g)?;
            let sq = match second {
                Some(other) => Some(convolve(&kn.sub(&other.kernel(n)?), g)?.norm_pow(2.0)),
                None => None,
            };
            Ok((out, sq))
        })
        .collect::<Result<_>>()?;
    let lo = members
        .iter()
        .filter(|m| !m.0.is_empty())
        .map(|m| m.0.offset())
        .min()
        .unwrap_or(0);
    let hi = members
        .iter()
        .filter(|m| !m.0.is_empty())
        .map(|m| m.0.end())
        .max()
        .unwrap_or(0);
    let mut sup = vec![0.0f64; (hi - lo).max(0) as usize];
    for (out, _) in &members {
        for (i, v) in out.values().iter().enumerate() {
            let slot = &mut sup[(out.offset() - lo) as usize + i];
            *slot = slot.max(v.norm());
        }
    }
    let (witness, _) = sup.iter().enumerate().fold(
        (0usize, -1.0f64),
        |best, (i, &v)| if v > best.1 { (i, v) } else { best },
    );
    let input_norm = g.norm(p)?;
    let output_norm = lp_norm(sup.iter().copied(), p);
    let square_function = second.map(|_| members.iter().map(|m| m.1.unwrap_or(0.0)).collect::<KahanSum>().value());
    Ok(MaximalReport {
        p,
        kmin,
        kmax,
        input_norm,
        output_norm,
        ratio: if input_norm > 0.0 {
            output_norm / input_norm
        } else {
            0.0
        },
        witness_index: lo + witness as i64,
        square_function,
    })
}

/// `‖Mg‖_p^p / ‖g‖_p^p` for the one-sided maximal average
/// `Mg(i) = sup_{j≥i} (1/(j-i+1)) Σ_{l=i}^{j} g(l)` over all `i ∈ ℤ`.
///
/// Inside the support each `Mg(i)` is the slope from `(i, C_i)` to its
/// neighbour on the upper hull of the prefix sums to its right. Left of the
/// support `Mg(-t) = max_s C_s/(s + t)`; the maximiser walks right along the
/// hull as `t` grows, and each run of constant maximiser sums in closed form.
pub fn cesaro_maximal_constant(g: &LatticeSignal, p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return param("p must exceed 1");
    }
    if g.values().iter().any(|v| v.im != 0.0 || !(v.re >= 0.0)) {
        return param("the signal must be real and non-negative");
    }
    let a: Vec<f64> = g.values().iter().map(|v| v.re).collect();
    let input = a.iter().map(|x| x.powf(p)).collect::<KahanSum>().value();
    if input == 0.0 {
        return Ok(0.0);
    }
    let l = a.len();
    let mut c = vec![0.0f64; l + 1];
    for (s, x) in a.iter().enumerate() {
        c[s + 1] = c[s] + x;
    }
    let slope = |i: usize, j: usize| (c[j] - c[i]) / (j - i) as f64;

    let mut acc = KahanSum::new();
    let mut hull: Vec<usize> = vec![l];
    for i in (0..l).rev() {
        while hull.len() >= 2 && slope(i, hull[hull.len() - 1]) <= slope(i, hull[hull.len() - 2]) {
            hull.pop();
        }
        acc.add(slope(i, *hull.last().unwrap()).powf(p));
        hull.push(i);
    }
    // `hull` now holds the upper hull of (s, C_s), s = 0..=l, leftmost last
    hull.reverse();
    let value = |s: usize, t: f64| c[s] / (s as f64 + t);
    let mut v = 0;
    while v + 1 < hull.len() && value(hull[v + 1], 1.0) >= value(hull[v], 1.0) {
        v += 1;
    }
    let mut t_start = 1u64;
    loop {
        let (s_a, c_a) = (hull[v], c[hull[v]]);
        let switch = if v + 1 < hull.len() && c[hull[v + 1]] > c_a {
            let (s_b, c_b) = (hull[v + 1] as f64, c[hull[v + 1]]);
            Some(
                ((c_a * s_b - c_b * s_a as f64) / (c_b - c_a))
                    .ceil()
                    .max(t_start as f64) as u64,
            )
        } else {
            None
        };
        let from = s_a as u64 + t_start;
        match switch {
            None => {
                acc.add(c_a.powf(p) * zeta_tail(p, from));
                break;
            }
            Some(t_end) => {
                if t_end > t_start {
                    acc.add(c_a.powf(p) * hurwitz_segment(p, from, s_a as u64 + t_end));
                }
                t_start = t_end;
                v += 1;
            }
        }
    }
    Ok(acc.value() / input)
}

/// `Σ_{m=lo}^{hi-1} m^{-p}`.
fn hurwitz_segment(p: f64, lo: u64, hi: u64) -> f64 {
    if hi - lo <= 4096 {
        (lo..hi)
            .rev()
            .map(|m| (m as f64).powf(-p))
            .collect::<KahanSum>()
            .value()
    } else {
        zeta_tail(p, lo) - zeta_tail(p, hi)
    }
}

/// `(p/(p-1))^p`.
pub fn hardy_littlewood_bound(p: f64) -> f64 {
    (p / (p - 1.0)).powf(p)
}

/// Brute-force `‖Mg‖_p^p / ‖g‖_p^p` with the left tail cut after `tail` points.
#[cfg(test)]
fn cesaro_maximal_brute(g: &LatticeSignal, p: f64, tail: usize) -> f64 {
    let a: Vec<f64> = g.values().iter().map(|v| v.re).collect();
    let l = a.len() as i64;
    let get = |i: i64| if (0..l).contains(&i) { a[i as usize] } else { 0.0 };
    let mut total = 0.0;
    for i in -(tail as i64)..l {
        let mut best = 0.0f64;
        let mut sum = 0.0;
        // the zeros left of the support add nothing to the sums
        for j in i.max(0)..l {
            sum += get(j);
            best = best.max(sum / (j - i + 1) as f64);
        }
        total += best.powf(p);
    }
    total / a.iter().map(|x| x.powf(p)).sum::<f64>()
}
