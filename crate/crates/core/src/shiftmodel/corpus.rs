use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LatticeSignal;

/// Seed of the standard random-signal corpus.
pub const CORPUS_SEED: u64 = 0x00e7_90d1_c5ea_50f1;

fn rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// Independent `±1` values on `0..len`; member `index` of the corpus `seed`.
pub fn random_sign_signal(seed: u64, index: u64, len: usize) -> LatticeSignal {
    let mut r = rng(seed, index);
    let values: Vec<f64> = (0..len).map(|_| if r.gen::<bool>() { 1.0 } else { -1.0 }).collect();
    LatticeSignal::from_real(0, &values)
}

/// Non-negative values on `0..len` mixing three shapes by `index % 3`:
/// uniform noise, sparse spikes, and a noisy plateau on a random block.
pub fn random_nonnegative_signal(seed: u64, index: u64, len: usize) -> LatticeSignal {
    let mut r = rng(seed, index);
    let values: Vec<f64> = match index % 3 {
        0 => (0..len).map(|_| r.gen::<f64>()).collect(),
        1 => (0..len)
            .map(|_| {
                if r.gen::<f64>() < 0.05 {
                    r.gen::<f64>() * 10.0
                } else {
                    0.0
                }
            })
            .collect(),
        _ => {
            let a = r.gen_range(0..len);
            let b = r.gen_range(a..len) + 1;
            (0..len)
                .map(|i| {
                    if (a..b).contains(&i) {
                        1.0 + 0.1 * r.gen::<f64>()
                    } else {
                        0.0
                    }
                })
                .collect()
        }
    };
    LatticeSignal::from_real(0, &values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(random_sign_signal(1, 2, 50), random_sign_signal(1, 2, 50));
        assert_ne!(random_sign_signal(1, 2, 50), random_sign_signal(1, 3, 50));
        for i in 0..6 {
            assert!(random_nonnegative_signal(CORPUS_SEED, i, 40).is_nonnegative());
        }
    }
}
