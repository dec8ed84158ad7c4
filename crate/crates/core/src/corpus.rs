//! Seeded families of random kernels for property and agreement checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::KernelSpec;
use crate::C64;

/// Seed of the default corpus.
pub const DEFAULT_SEED: u64 = 0x7d6b_2024;

fn polar(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> C64 {
    C64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn a_prefix(rng: &mut ChaCha8Rng, len: usize) -> Vec<C64> {
    (0..len).map(|_| polar(rng, 0.5, 2.0)).collect()
}

fn rho(rng: &mut ChaCha8Rng) -> C64 {
    polar(rng, 0.7, 1.2)
}

/// Random analytic kernels. Cycles through four shapes so that every branch
/// of the Shimorin criterion is exercised: `b_0 = 0`, `b = 0`, generic `b`,
/// and `b_n / a_n` constant on the prefix only.
pub fn random_specs(seed: u64, count: usize) -> Vec<KernelSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let len = rng.gen_range(1..=5);
            let a = a_prefix(&mut rng, len);
            let tail = rho(&mut rng);
            let blen = rng.gen_range(1..=5);
            let mut b: Vec<C64> = (0..blen).map(|_| polar(&mut rng, 0.1, 0.6)).collect();
            match i % 4 {
                0 => b[0] = C64::new(0.0, 0.0),
                1 => b.clear(),
                2 => {}
                _ => {
                    let ratio = polar(&mut rng, 0.1, 0.5);
                    let plain = KernelSpec::new(a.clone(), vec![], tail).expect("corpus specs are valid");
                    b = (0..blen).map(|n| ratio * plain.a(n)).collect();
                }
            }
            KernelSpec::new(a, b, tail).expect("corpus specs are valid")
        })
        .collect()
}

/// Random truncated kernels: `b_0 = b_1 = 0`, order `r` in `2..=5`, with
/// `|b_n| < 1/2`. Every fifth spec has `b = 0`.
pub fn truncated_specs(seed: u64, count: usize) -> Vec<KernelSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let len = rng.gen_range(1..=6);
            let a = a_prefix(&mut rng, len);
            let r = rng.gen_range(2..=5);
            let mut b = vec![C64::new(0.0, 0.0); r + 1];
            if i % 5 != 0 {
                for x in b.iter_mut().skip(2) {
                    *x = polar(&mut rng, 0.05, 0.5);
                }
            }
            KernelSpec::new(a, b, rho(&mut rng)).expect("corpus specs are valid")
        })
        .collect()
}

/// Random diagonal kernels with positive `a_n`.
pub fn diagonal_specs(seed: u64, count: usize) -> Vec<KernelSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=8);
            let a: Vec<f64> = (0..len).map(|_| rng.gen_range(0.5..2.0)).collect();
            KernelSpec::real(&a, &[], rng.gen_range(0.6..1.4)).expect("corpus specs are valid")
        })
        .collect()
}

/// Diagonal kernels with a constant weight `alpha` in `[0.5, 3)`.
pub fn constant_weight_specs(seed: u64, count: usize) -> Vec<(KernelSpec, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let alpha: f64 = rng.gen_range(0.5..3.0);
            let a0: f64 = rng.gen_range(0.5..2.0);
            (KernelSpec::real(&[a0], &[], 1.0 / alpha).expect("valid"), alpha)
        })
        .collect()
}
