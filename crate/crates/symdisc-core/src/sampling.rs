//! Deterministic sampling helpers shared by the library, its tests and the
//! CLI: every random quantity in this crate derives from an explicit `u64`
//! seed so that identical configurations reproduce identical reports.

use crate::numerics::ComplexMatrix;
use crate::C64;
use alloc::vec::Vec;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// RNG used throughout; ChaCha keeps streams portable across platforms.
pub fn seeded_rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Stable per-trial sub-seed (SplitMix64 finalizer over seed and index), so
/// trial `t` is reproducible independently of scheduling.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Standard complex Gaussian (independent N(0,1) real and imaginary parts)
/// via Box–Muller.
pub fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let phi = core::f64::consts::TAU * u2;
    C64::new(r * phi.cos(), r * phi.sin())
}

/// Uniform sample from the closed disk of the given radius.
pub fn uniform_disk(rng: &mut impl Rng, radius: f64) -> C64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let phi = core::f64::consts::TAU * rng.gen::<f64>();
    C64::new(r * phi.cos(), r * phi.sin())
}

/// Uniform sample from the unit circle.
pub fn uniform_circle(rng: &mut impl Rng) -> C64 {
    let phi = core::f64::consts::TAU * rng.gen::<f64>();
    C64::new(0.0, phi).exp()
}

/// Haar-like random unitary: Gaussian matrix orthonormalized by modified
/// Gram–Schmidt with one re-orthogonalization pass.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| g.column(j)).collect();
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let proj: C64 = cols[k]
                    .iter()
                    .zip(cols[j].iter())
                    .map(|(a, b)| a.conj() * *b)
                    .sum();
                for i in 0..n {
                    let delta = cols[k][i] * proj;
                    cols[j][i] -= delta;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_columns(&cols).expect("square unitary")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let mut a = seeded_rng(42);
        let mut b = seeded_rng(42);
        for _ in 0..16 {
            assert_eq!(complex_gaussian(&mut a), complex_gaussian(&mut b));
        }
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = seeded_rng(3);
        let u = random_unitary(&mut rng, 6);
        let defect = u.adjoint().mul(&u).sub(&ComplexMatrix::identity(6)).frobenius_norm();
        assert!(defect < 1e-12, "unitarity defect {defect}");
    }

    #[test]
    fn disk_samples_stay_inside() {
        let mut rng = seeded_rng(4);
        for _ in 0..200 {
            assert!(uniform_disk(&mut rng, 0.9).norm() <= 0.9 + 1e-15);
            assert!((uniform_circle(&mut rng).norm() - 1.0).abs() < 1e-14);
        }
    }
}
