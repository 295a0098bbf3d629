use num_complex::Complex64;
use rustfft::FftPlanner;

use super::LatticeSignal;
use crate::error::{Error, Result};

/// Longest output window accepted (2^28 samples, 4 GiB of complex values).
pub const MAX_CONVOLUTION_LEN: usize = 1 << 28;

/// Both inputs at least this long and a product above [`FFT_PRODUCT_THRESHOLD`]
/// switch to the FFT path.
const FFT_MIN_SIDE: usize = 64;
const FFT_PRODUCT_THRESHOLD: usize = 1 << 15;

/// How [`convolve_with`] computes the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvolutionMethod {
    Auto,
    Direct,
    Fft,
}

/// `(K ∗ g)(j) = Σ_i K(i) g(j - i)` on the window `[oK + og, eK + eg - 1)`.
pub fn convolve(kernel: &LatticeSignal, g: &LatticeSignal) -> Result<LatticeSignal> {
    convolve_with(kernel, g, ConvolutionMethod::Auto)
}

pub fn convolve_with(kernel: &LatticeSignal, g: &LatticeSignal, method: ConvolutionMethod) -> Result<LatticeSignal> {
    let offset = kernel
        .offset()
        .checked_add(g.offset())
        .ok_or_else(|| Error::Resource("convolution window offset overflows i64".into()))?;
    if kernel.is_empty() || g.is_empty() {
        return Ok(LatticeSignal::new(offset, Vec::new()));
    }
    let len = kernel.len() + g.len() - 1;
    if len > MAX_CONVOLUTION_LEN || offset.checked_add(len as i64).is_none() {
        return Err(Error::Resource(format!(
            "convolution window of {len} samples is too large"
        )));
    }
    let (a, b) = (kernel.values(), g.values());
    let use_fft = match method {
        ConvolutionMethod::Direct => false,
        ConvolutionMethod::Fft => true,
        ConvolutionMethod::Auto => a.len().min(b.len()) >= FFT_MIN_SIDE && a.len() * b.len() > FFT_PRODUCT_THRESHOLD,
    };
    let values = if use_fft {
        fft_product(a, b, len)
    } else {
        direct_product(a, b, len)
    };
    Ok(LatticeSignal::new(offset, values))
}

fn direct_product(a: &[Complex64], b: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (i, &x) in a.iter().enumerate() {
        if x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (slot, &y) in out[i..i + b.len()].iter_mut().zip(b) {
            *slot += x * y;
        }
    }
    out
}

fn fft_product(a: &[Complex64], b: &[Complex64], len: usize) -> Vec<Complex64> {
    let size = len.next_power_of_two();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let mut fa = vec![Complex64::new(0.0, 0.0); size];
    let mut fb = vec![Complex64::new(0.0, 0.0); size];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y / size as f64;
    }
    inv.process(&mut fa);
    fa.truncate(len);
    fa
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn signal(offset: i64, vals: &[(f64, f64)]) -> LatticeSignal {
        LatticeSignal::new(offset, vals.iter().map(|&(r, i)| Complex64::new(r, i)).collect())
    }

    #[test]
    fn delta_is_the_identity() {
        let g = LatticeSignal::from_real(-3, &[1.0, -2.0, 0.5, 4.0]);
        assert_eq!(convolve(&LatticeSignal::delta(0), &g).unwrap(), g);
        let shifted = convolve(&LatticeSignal::delta(5), &g).unwrap();
        assert_eq!(shifted.offset(), 2);
        assert_eq!(shifted.values(), g.values());
    }

    #[test]
    fn cesaro_two_against_delta() {
        let k = LatticeSignal::from_real(1, &[0.5, 0.5]);
        let out = convolve(&k, &LatticeSignal::delta(0)).unwrap();
        assert_eq!(out, LatticeSignal::from_real(1, &[0.5, 0.5]));
    }

    #[test]
    fn difference_kernel_gives_zero() {
        let k = LatticeSignal::from_real(1, &[0.3, 0.2, 0.5]);
        let g = LatticeSignal::from_real(0, &(0..200).map(|i| (i as f64).sin()).collect::<Vec<_>>());
        let out = convolve(&k.sub(&k), &g).unwrap();
        assert!(out.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn overflow_is_a_resource_error() {
        let a = LatticeSignal::delta(i64::MAX);
        let b = LatticeSignal::delta(1);
        assert!(matches!(convolve(&a, &b), Err(Error::Resource(_))));
    }

    #[test]
    fn empty_inputs() {
        let out = convolve(&LatticeSignal::zero(), &LatticeSignal::delta(4)).unwrap();
        assert!(out.is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn fft_matches_direct(
            a in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..300),
            b in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..300),
            oa in -50i64..50,
            ob in -50i64..50,
        ) {
            let (ka, kb) = (signal(oa, &a), signal(ob, &b));
            let d = convolve_with(&ka, &kb, ConvolutionMethod::Direct).unwrap();
            let f = convolve_with(&ka, &kb, ConvolutionMethod::Fft).unwrap();
            prop_assert_eq!(d.offset(), f.offset());
            prop_assert_eq!(d.len(), f.len());
            for (x, y) in d.values().iter().zip(f.values()) {
                prop_assert!((x - y).norm() < 1e-9);
            }
        }

        #[test]
        fn young_inequality(
            a in prop::collection::vec(-1.0f64..1.0, 1..120),
            b in prop::collection::vec(-1.0f64..1.0, 1..120),
        ) {
            let (k, g) = (LatticeSignal::from_real(1, &a), LatticeSignal::from_real(-7, &b));
            let out = convolve(&k, &g).unwrap();
            let k1 = k.norm(1.0).unwrap();
            for p in [1.0, 2.0, f64::INFINITY] {
                let lhs = out.norm(p).unwrap();
                let rhs = k1 * g.norm(p).unwrap();
                prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-12, "p={} {} > {}", p, lhs, rhs);
            }
        }
    }
}
