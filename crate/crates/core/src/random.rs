//! Seeded random operators for tests, verification and sweeps.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::operator::{spectral_norm, DenseOperator, C64};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Uniform sample from `[lo, hi)`.
pub fn uniform(rng: &mut Rng, lo: f64, hi: f64) -> f64 {
    use rand::Rng as _;
    rng.gen_range(lo..hi)
}

/// Random Hermitian operator (GUE-distributed direction) rescaled to spectral norm `norm`.
pub fn hermitian(rng: &mut Rng, n_system: usize, n_bath: usize, norm: f64) -> DenseOperator {
    let dim = 1usize << (n_system + n_bath);
    let raw = DMatrix::<C64>::from_fn(dim, dim, |_, _| C64::new(normal(rng), normal(rng)));
    let h = DenseOperator::from_matrix(raw, n_system)
        .expect("power-of-two dimension")
        .hermitian_part();
    let current = spectral_norm(&h).expect("Hermitian by construction");
    if current == 0.0 {
        h
    } else {
        h.scale(norm / current)
    }
}
