use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arcs::{best_rational, farey_band, ArcParameters, Rational, MAX_BAND};
use crate::error::{param, Result};
use crate::fourier::{check_grid, grid_values_real, inverse_plan};
use crate::kernels::bump::{bump_eval, BumpFunction};
use crate::kernels::model::{ModelForm, ModelKernel};
use crate::numeric::{centered_turn, e};

/// `φ_n(x) = ψ_{n,0}(x) η_0(x) + Σ_{s≥2} Σ_{a/q in band s} ψ_{n,q}(x - a/q) η_s(x - a/q)`
/// on the circle.
///
/// `η_0` is applied to the distance from `x` to the nearest integer, so the
/// zero-frequency term is centred at both ends of `[0, 1)`. Band 1 consists of
/// the single centre `1/1`, the same point of the circle as `0/1`, and is
/// therefore carried by the `η_0` term. This keeps `φ_n(1 - x) = conj φ_n(x)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ApproximantKernel {
    params: ArcParameters,
    form: ModelForm,
    bump: BumpFunction,
    s_hi: u32,
    truncation: Option<u32>,
}

/// One non-zero band term of `φ_n` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActiveTerm {
    pub band: u32,
    pub center: Rational,
    /// `x - a/q`, measured on the circle.
    pub offset: f64,
    pub cutoff: f64,
}

impl ApproximantKernel {
    /// Bands up to `params.s_max()`.
    pub fn new(params: ArcParameters, form: ModelForm) -> Self {
        Self {
            params,
            form,
            bump: BumpFunction::new(params.m()),
            s_hi: params.s_max(),
            truncation: None,
        }
    }

    /// Keeps bands up to `s_hi` (beyond `s_max` for fidelity studies).
    pub fn with_s_hi(mut self, s_hi: u32) -> Result<Self> {
        if s_hi > MAX_BAND {
            return param(format!("s_hi = {s_hi} exceeds {MAX_BAND}"));
        }
        self.s_hi = s_hi;
        Ok(self)
    }

    pub fn params(&self) -> &ArcParameters {
        &self.params
    }

    pub fn n(&self) -> u64 {
        self.params.n()
    }

    pub fn form(&self) -> ModelForm {
        self.form
    }

    pub fn bump(&self) -> BumpFunction {
        self.bump
    }

    /// The last band actually summed.
    pub fn top_band(&self) -> u32 {
        match self.truncation {
            Some(t) => t.min(self.s_hi),
            None => self.s_hi,
        }
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub(crate) fn with_truncation(mut self, t: u32) -> Self {
        self.truncation = Some(t);
        self
    }

    pub fn model(&self, q: u64) -> ModelKernel {
        ModelKernel::new(self.n(), q, self.form).expect("n >= 2 by ArcParameters")
    }

    /// The terms of the sum that are non-zero at `x`; at most one per band.
    pub fn active_terms(&self, x: f64) -> Vec<ActiveTerm> {
        let xr = x - x.floor();
        let mut out = Vec::new();
        let c = centered_turn(xr);
        let cut0 = bump_eval(self.bump.m() * c);
        if cut0 > 0.0 {
            out.push(ActiveTerm {
                band: 0,
                center: Rational::ZERO,
                offset: c,
                cutoff: cut0,
            });
        }
        for s in 2..=self.top_band() {
            // A band-s centre within the support half-width is the unique closest
            // fraction with q < 2^s: other such fractions are > 1/4^s away from it.
            let r = best_rational(xr, (1u64 << s) - 1);
            if r.q() < 1 << (s - 1) {
                continue;
            }
            let offset = xr - r.value();
            let cut = self.bump.scaled(s, offset);
            if cut > 0.0 {
                out.push(ActiveTerm {
                    band: s,
                    center: r,
                    offset,
                    cutoff: cut,
                });
            }
        }
        out
    }

    /// `φ_n(x)`; each active term costs one `O(n)` pass.
    pub fn eval(&self, x: f64) -> Complex64 {
        self.active_terms(x)
            .iter()
            .map(|t| self.model(t.center.q()).eval_many(&[t.offset])[0] * t.cutoff)
            .sum()
    }

    /// `φ_n(j/G)` for `j < G`.
    ///
    /// The `η_0` term comes from one FFT of `w_{n,1}`. Each band centre `a/q`
    /// touches a window of grid points; wide windows use one FFT of
    /// `w_{n,q}(k) e(-ka/q)`, narrow ones a direct multi-point pass.
    pub fn eval_grid(&self, g: usize) -> Result<Vec<Complex64>> {
        check_grid(g)?;
        let n = self.n();
        let mut out = vec![Complex64::new(0.0, 0.0); g];
        let base = grid_values_real(&self.model(1).weights(), 1, g)?;
        for (j, slot) in out.iter_mut().enumerate() {
            let c = centered_turn(j as f64 / g as f64);
            let cut = bump_eval(self.bump.m() * c);
            if cut > 0.0 {
                *slot = base[j] * cut;
            }
        }
        let centers: Vec<(u32, Rational)> = (2..=self.top_band())
            .map(|s| farey_band(s).map(|band| band.into_iter().map(move |r| (s, r)).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let plan = inverse_plan(g);
        let fft_cost = n as f64 + 3.0 * g as f64 * (g as f64).log2();
        let pieces: Vec<Vec<(usize, Complex64)>> = centers
            .par_iter()
            .map(|&(s, r)| {
                let h = self.bump.half_width(s);
                let lo = ((r.value() - h) * g as f64).ceil() as i64;
                let hi = ((r.value() + h) * g as f64).floor() as i64;
                let pts: Vec<(usize, f64, f64)> = (lo..=hi)
                    .filter_map(|j| {
                        let offset = j as f64 / g as f64 - r.value();
                        let cut = self.bump.scaled(s, offset);
                        (cut > 0.0).then(|| (j.rem_euclid(g as i64) as usize, offset, cut))
                    })
                    .collect();
                if pts.is_empty() {
                    return Vec::new();
                }
                let model = self.model(r.q());
                let values: Vec<Complex64> = if pts.len() as f64 * n as f64 > fft_cost {
                    let mut buf = vec![Complex64::new(0.0, 0.0); g];
                    let (a, q) = (r.a() as u128, r.q() as u128);
                    let phases: Vec<Complex64> = (0..r.q()).map(|t| e(-(t as f64) / r.q() as f64)).collect();
                    let mut slot = 1 % g;
                    for k in 1..=n {
                        buf[slot] += phases[((k as u128 * a) % q) as usize] * model.weight(k);
                        slot += 1;
                        if slot == g {
                            slot = 0;
                        }
                    }
                    plan.process(&mut buf);
                    // buf[j] = Σ_k w(k) e(k(j/G - a/q)) = ψ(j/G - a/q)
                    pts.iter().map(|&(j, _, _)| buf[j]).collect()
                } else {
                    let offsets: Vec<f64> = pts.iter().map(|p| p.1).collect();
                    model.eval_many(&offsets)
                };
                pts.iter().zip(values).map(|(&(j, _, cut), v)| (j, v * cut)).collect()
            })
            .collect();
        for piece in pieces {
            for (j, v) in piece {
                out[j] += v;
            }
        }
        Ok(out)
    }
}
