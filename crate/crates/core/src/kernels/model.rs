use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::expsum::geometric;
use crate::numeric::{centered_turn, e, euler_gamma, log_factorial, ComplexKahan};

/// Normalisation of the model weights `w_{n,q}(k) = α log k + b`, `1 ≤ k ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ModelForm {
    /// `α = 1/(q n log n)`, `b = 2(γ - 1 - log q)/(n log n)`.
    LogScaled,
    /// `α = 1/(q n L)`, `b = (2γ - 2 log q)/(q n L)` with `L = log n + 2γ - 1`,
    /// so that `ψ_{n,q}(0)` reproduces `(n/q)(log n - 2 log q + 2γ - 1)/D_n`
    /// up to `O(log n / n)`.
    #[default]
    DivisorMatched,
}

impl std::str::FromStr for ModelForm {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log-scaled" => Ok(ModelForm::LogScaled),
            "divisor-matched" => Ok(ModelForm::DivisorMatched),
            other => param(format!("unknown model form '{other}'")),
        }
    }
}

/// The weights `w_{n,q}` and their transform `ψ_{n,q}(x) = Σ_k w_{n,q}(k) e(kx)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelKernel {
    n: u64,
    q: u64,
    form: ModelForm,
    alpha: f64,
    beta: f64,
}

/// Phasors are re-seeded from `e(kx)` at this stride to stop rounding drift.
const RESYNC: u64 = 1024;

impl ModelKernel {
    /// `q = 0` is treated as `q = 1`.
    pub fn new(n: u64, q: u64, form: ModelForm) -> Result<Self> {
        if n < 2 {
            return param("model kernel needs n >= 2");
        }
        let q = q.max(1);
        let (nf, lq) = (n as f64, (q as f64).ln());
        let g = euler_gamma();
        let (alpha, beta) = match form {
            ModelForm::LogScaled => {
                let denom = nf * nf.ln();
                (1.0 / (q as f64 * denom), 2.0 * (g - 1.0 - lq) / denom)
            }
            ModelForm::DivisorMatched => {
                let denom = q as f64 * nf * (nf.ln() + 2.0 * g - 1.0);
                (1.0 / denom, (2.0 * g - 2.0 * lq) / denom)
            }
        };
        Ok(Self {
            n,
            q,
            form,
            alpha,
            beta,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn form(&self) -> ModelForm {
        self.form
    }

    /// `(α, b)` with `w(k) = α log k + b`.
    pub fn coefficients(&self) -> (f64, f64) {
        (self.alpha, self.beta)
    }

    pub fn weight(&self, k: u64) -> f64 {
        if k == 0 || k > self.n {
            0.0
        } else {
            self.alpha * (k as f64).ln() + self.beta
        }
    }

    /// `w(1..=n)`.
    pub fn weights(&self) -> Vec<f64> {
        (1..=self.n).map(|k| self.weight(k)).collect()
    }

    /// `ψ(0) = Σ_k w(k) = α log n! + b n`.
    pub fn at_zero(&self) -> f64 {
        self.alpha * log_factorial(self.n) + self.beta * self.n as f64
    }

    /// `ψ(x)` summed term by term.
    pub fn eval_direct(&self, x: f64) -> Complex64 {
        let mut acc = ComplexKahan::new();
        for k in 1..=self.n {
            acc.add(e(k as f64 * x) * self.weight(k));
        }
        acc.value()
    }

    /// `ψ(x)` through geometric closed forms: `Σ_{k≤n} e(kx) = G_n(x)` and,
    /// by Abel summation, `Σ_{k≤n} log k e(kx) = log n G_n(x) - Σ_{k<n} G_k(x) log(1 + 1/k)`.
    pub fn eval_abel(&self, x: f64) -> Complex64 {
        let n = self.n;
        let mut acc = ComplexKahan::new();
        for k in 1..n {
            acc.add(geometric(k, x) * (-(1.0 / k as f64).ln_1p()));
        }
        let gn = geometric(n, x);
        acc.add(gn * (n as f64).ln());
        acc.value() * self.alpha + gn * self.beta
    }

    /// `ψ` at several points at once; the `log k` sum runs one pass over `k`
    /// with a rotating phasor per point, the constant part is closed form.
    pub fn eval_many(&self, xs: &[f64]) -> Vec<Complex64> {
        let steps: Vec<Complex64> = xs.iter().map(|&x| e(x)).collect();
        let mut z: Vec<Complex64> = steps.clone();
        let mut acc = vec![Complex64::new(0.0, 0.0); xs.len()];
        for k in 1..=self.n {
            if k % RESYNC == 0 {
                for (zi, &x) in z.iter_mut().zip(xs) {
                    *zi = e(centered_turn(x) * k as f64);
                }
            }
            let lk = (k as f64).ln();
            for i in 0..xs.len() {
                acc[i] += z[i] * lk;
                z[i] *= steps[i];
            }
        }
        xs.iter()
            .zip(acc)
            .map(|(&x, a)| a * self.alpha + geometric(self.n, x) * self.beta)
            .collect()
    }

    /// `|ψ(x)| (q+1)^τ / min(1, 1/(n|x|))`, the constant implied at `x` by the
    /// decay envelope.
    pub fn envelope_ratio(&self, x: f64, tau: f64, value: Complex64) -> f64 {
        let dist = centered_turn(x).abs();
        let envelope = (1.0f64).min(1.0 / (self.n as f64 * dist));
        value.norm() * ((self.q + 1) as f64).powf(tau) / envelope
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_term_example() {
        let k = ModelKernel::new(2, 1, ModelForm::LogScaled).unwrap();
        let g = euler_gamma();
        let l2 = 2f64.ln();
        let w1 = 2.0 * (g - 1.0) / (2.0 * l2);
        let w2 = l2 / (2.0 * l2) + w1;
        assert_eq!(k.weights().len(), 2);
        assert!((k.weight(1) - w1).abs() < 1e-15 && (k.weight(2) - w2).abs() < 1e-15);
        assert!((k.at_zero() - (w1 + w2)).abs() < 1e-14);
        assert!(ModelKernel::new(1, 1, ModelForm::LogScaled).is_err());
    }

    #[test]
    fn q_zero_aliases_one() {
        let a = ModelKernel::new(100, 0, ModelForm::DivisorMatched).unwrap();
        let b = ModelKernel::new(100, 1, ModelForm::DivisorMatched).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn value_at_zero_limits() {
        let g = euler_gamma();
        let n = 1u64 << 20;
        let l = (n as f64).ln();
        let lit = ModelKernel::new(n, 1, ModelForm::LogScaled).unwrap().at_zero();
        // Σ log k = n log n - n + O(log n) gives 1 + (2γ - 3)/log n
        assert!((lit - (1.0 + (2.0 * g - 3.0) / l)).abs() < 1e-4);
        let matched = ModelKernel::new(n, 1, ModelForm::DivisorMatched).unwrap().at_zero();
        assert!((matched - 1.0).abs() < 1e-4);
        let m3 = ModelKernel::new(n, 3, ModelForm::DivisorMatched).unwrap().at_zero();
        let target = (l - 2.0 * 3f64.ln() + 2.0 * g - 1.0) / (3.0 * (l + 2.0 * g - 1.0));
        assert!((m3 - target).abs() < 1e-4);
    }

    #[test]
    fn routes_agree_at_zero() {
        for form in [ModelForm::LogScaled, ModelForm::DivisorMatched] {
            let k = ModelKernel::new(5000, 7, form).unwrap();
            assert!((k.eval_direct(0.0).re - k.at_zero()).abs() < 1e-12);
            assert!((k.eval_abel(0.0).re - k.at_zero()).abs() < 1e-12);
            assert!((k.eval_many(&[0.0])[0].re - k.at_zero()).abs() < 1e-12);
        }
    }

    #[test]
    fn decay_envelope() {
        let tau = 0.9;
        let mut worst = 0.0f64;
        for n in [1u64 << 8, 1 << 12, 1 << 14] {
            for q in [1u64, 2, 5, 17, 60] {
                let k = ModelKernel::new(n, q, ModelForm::DivisorMatched).unwrap();
                let xs: Vec<f64> = (0..60).map(|i| 10f64.powf(-6.0 + 5.7 * i as f64 / 59.0)).collect();
                for (x, v) in xs.iter().zip(k.eval_many(&xs)) {
                    worst = worst.max(k.envelope_ratio(*x, tau, v));
                }
            }
        }
        assert!(worst < 4.0, "envelope constant {worst}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn closed_form_matches_direct(n in 2u64..600, q in 0u64..40, x in 0.0f64..1.0, matched in any::<bool>()) {
            let form = if matched { ModelForm::DivisorMatched } else { ModelForm::LogScaled };
            let k = ModelKernel::new(n, q, form).unwrap();
            let d = k.eval_direct(x);
            prop_assert!((k.eval_abel(x) - d).norm() < 1e-8);
            prop_assert!((k.eval_many(&[x])[0] - d).norm() < 1e-8);
            let c = k.eval_direct(1.0 - x);
            prop_assert!((c - d.conj()).norm() < 1e-9);
        }
    }
}
