#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tenshull::spectral::{spectral_radius, SpectralOptions};
use tenshull::Tensor;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[lo, hi)`, each zeroed with probability `sparsity`.
pub fn random_tensor(rng: &mut ChaCha8Rng, order: usize, dim: usize, lo: f64, hi: f64, sparsity: f64) -> Tensor {
    Tensor::from_fn(order, dim, |_| {
        let v = rng.gen_range(lo..hi);
        if rng.gen::<f64>() < sparsity {
            0.0
        } else {
            v
        }
    })
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..hi)).collect()
}

pub fn random_shape(rng: &mut ChaCha8Rng, orders: std::ops::RangeInclusive<usize>, dims: std::ops::RangeInclusive<usize>) -> (usize, usize) {
    (rng.gen_range(orders), rng.gen_range(dims))
}

pub fn rho(a: &Tensor) -> f64 {
    spectral_radius(a, &SpectralOptions::default()).unwrap().rho
}

/// `s I - D` for a dense nonnegative `D` with `s = factor * rho(D)`.
pub fn z_from(d: &Tensor, factor: f64) -> Tensor {
    let s = factor * rho(d);
    Tensor::identity(d.order(), d.dim()).scaled(s).sub(d).unwrap()
}

/// Adds a gap that keeps a Z-tensor Z: any nonnegative amount on the
/// diagonal, at most `|a|` on an off-diagonal entry `a`.
pub fn z_preserving_raise(rng: &mut ChaCha8Rng, a: &Tensor, diag_gap: f64) -> Tensor {
    let mut out = a.clone();
    for k in 0..a.len() {
        let idx = a.multi_index(k);
        let v = a.entries()[k];
        let raised = if Tensor::is_diagonal_index(&idx) {
            v + rng.gen_range(0.0..diag_gap)
        } else {
            v - rng.gen_range(0.0..=1.0) * v
        };
        out.set(&idx, raised.min(if Tensor::is_diagonal_index(&idx) { f64::INFINITY } else { 0.0 }));
    }
    out
}
