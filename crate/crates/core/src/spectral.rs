//! Spectral radius of nonnegative tensors.
//!
//! Weakly irreducible tensors go through a shifted power iteration whose
//! iterates yield Collatz-Wielandt brackets `[min_i r_i, max_i r_i]` with
//! `r_i = (A x^{m-1})_i / x_i^{m-1}`. Both ends are valid bounds at every
//! step, so the reported bracket is certified even when the iteration stops
//! early. Weakly reducible tensors are split into their weakly irreducible
//! blocks and the largest block radius is reported.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{is_weakly_irreducible, weakly_irreducible_partition};
use crate::tensor::{hadamard_power, max_norm, IndexSet, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralOptions {
    /// Relative bracket width at which the iteration stops.
    pub tol: f64,
    pub max_iters: usize,
    /// Multiple of the identity added before iterating.
    pub shift: f64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions { tol: 1e-10, max_iters: 100_000, shift: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub rho: f64,
    pub lower: f64,
    pub upper: f64,
    /// Positive eigenvector with unit max-norm; only for weakly irreducible input.
    pub perron: Option<Vec<f64>>,
    pub iterations: usize,
    pub converged: bool,
    /// Block achieving the radius when the input is weakly reducible.
    pub block: Option<IndexSet>,
}

impl SpectralResult {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    fn exact(rho: f64, perron: Option<Vec<f64>>) -> Self {
        SpectralResult { rho, lower: rho, upper: rho, perron, iterations: 0, converged: true, block: None }
    }
}

/// Lower Collatz-Wielandt bound `min_{x_i > 0} (A x^{m-1})_i / x_i^{m-1}`,
/// valid for any nonnegative `A` and nonzero `x >= 0`.
pub fn cw_lower(a: &Tensor, x: &[f64]) -> Result<f64> {
    a.require_nonnegative()?;
    let y = a.apply(x)?;
    if x.iter().any(|&v| v < 0.0) {
        return Err(Error::NotPositive);
    }
    let m1 = (a.order() - 1) as i32;
    x.iter()
        .zip(&y)
        .filter(|(&xi, _)| xi > 0.0)
        .map(|(&xi, &yi)| yi / xi.powi(m1))
        .reduce(f64::min)
        .ok_or(Error::ZeroVector)
}

/// Both Collatz-Wielandt bounds at a strictly positive `x`.
pub fn cw_bounds(a: &Tensor, x: &[f64]) -> Result<(f64, f64)> {
    a.require_nonnegative()?;
    let y = a.apply(x)?;
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroVector);
    }
    if x.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::NotPositive);
    }
    Ok(ratio_bounds(&y, x, a.order()))
}

fn ratio_bounds(y: &[f64], x: &[f64], order: usize) -> (f64, f64) {
    let m1 = (order - 1) as i32;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (&yi, &xi) in y.iter().zip(x) {
        let r = yi / xi.powi(m1);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    (lo, hi)
}

pub fn spectral_radius(a: &Tensor, opts: &SpectralOptions) -> Result<SpectralResult> {
    a.require_nonnegative()?;
    let n = a.dim();
    if n == 1 {
        return Ok(SpectralResult::exact(a.entries()[0], Some(vec![1.0])));
    }
    if a.entries().iter().all(|&v| v == 0.0) {
        return Ok(SpectralResult::exact(0.0, None));
    }
    if is_weakly_irreducible(a)? {
        return Ok(power_iteration(a, opts));
    }
    let partition = weakly_irreducible_partition(a)?;
    let mut best: Option<SpectralResult> = None;
    let (mut lower, mut upper) = (0.0f64, 0.0f64);
    let mut iterations = 0;
    let mut converged = true;
    for block in &partition.blocks {
        let sub = a.principal_subtensor(block)?;
        let mut r = spectral_radius(&sub, opts)?;
        lower = lower.max(r.lower);
        upper = upper.max(r.upper);
        iterations += r.iterations;
        converged &= r.converged;
        if best.as_ref().map_or(true, |b| r.rho > b.rho) {
            r.block = Some(block.clone());
            best = Some(r);
        }
    }
    let best = best.expect("partition is nonempty");
    Ok(SpectralResult { rho: best.rho, lower, upper, perron: None, iterations, converged, block: best.block })
}

fn power_iteration(a: &Tensor, opts: &SpectralOptions) -> SpectralResult {
    let shifted = a.scale_shift(1.0, opts.shift);
    let inv_root = 1.0 / (a.order() - 1) as f64;
    let mut x = vec![1.0; a.dim()];
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iters {
        iterations += 1;
        let y = shifted.contract_tail(&x);
        let (l, h) = ratio_bounds(&y, &x, a.order());
        lo = lo.max(l);
        hi = hi.min(h);
        if hi - lo <= opts.tol * hi.abs() {
            converged = true;
            break;
        }
        let mut next: Vec<f64> = y.iter().map(|v| v.max(0.0).powf(inv_root)).collect();
        let scale = max_norm(&next);
        next.iter_mut().for_each(|v| *v /= scale);
        x = next;
    }
    let lower = lo - opts.shift;
    let upper = hi - opts.shift;
    SpectralResult {
        rho: 0.5 * (lower + upper),
        lower,
        upper,
        perron: Some(x),
        iterations,
        converged,
        block: None,
    }
}

/// Positive eigenvector for `rho(A)` of a weakly irreducible nonnegative tensor.
pub fn perron_vector(a: &Tensor, opts: &SpectralOptions) -> Result<Vec<f64>> {
    a.require_nonnegative()?;
    if !is_weakly_irreducible(a)? {
        return Err(Error::WeaklyReducible);
    }
    spectral_radius(a, opts)?.perron.ok_or(Error::WeaklyReducible)
}

/// `A y^{m-1} - rho y^{[m-1]}`.
pub fn residual(a: &Tensor, rho: f64, y: &[f64]) -> Result<Vec<f64>> {
    let ay = a.apply(y)?;
    let yp = hadamard_power(y, (a.order() - 1) as u32);
    Ok(ay.iter().zip(&yp).map(|(u, v)| u - rho * v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SpectralOptions {
        SpectralOptions::default()
    }

    #[test]
    fn cw_bounds_examples() {
        assert_eq!(cw_bounds(&Tensor::ones(3, 2), &[1.0, 1.0]).unwrap(), (4.0, 4.0));
        assert_eq!(cw_bounds(&Tensor::diagonal(4, &[3.0, 5.0]), &[1.0, 1.0]).unwrap(), (3.0, 5.0));
        let m = Tensor::new(2, 2, vec![2., 1., 1., 2.]).unwrap();
        assert_eq!(cw_bounds(&m, &[1.0, 2.0]).unwrap(), (2.5, 4.0));
        assert_eq!(cw_bounds(&m, &[0.0, 0.0]), Err(Error::ZeroVector));
        assert_eq!(cw_bounds(&m, &[0.0, 1.0]), Err(Error::NotPositive));
        assert_eq!(cw_lower(&m, &[0.0, 1.0]).unwrap(), 2.0);
        assert!(cw_bounds(&m.scaled(-1.0), &[1.0, 1.0]).is_err());
    }

    #[test]
    fn spectral_radius_examples() {
        let r = spectral_radius(&Tensor::ones(3, 2), &opts()).unwrap();
        assert_eq!(r.rho, 4.0);
        assert_eq!(r.iterations, 1);
        for m in 2..=4 {
            let r = spectral_radius(&Tensor::diagonal(m, &[3.0, 5.0]), &opts()).unwrap();
            assert_eq!(r.rho, 5.0);
            assert_eq!(r.block, Some(IndexSet::new(vec![1]).unwrap()));
        }
        let m = Tensor::new(2, 2, vec![2., 1., 1., 2.]).unwrap();
        assert!((spectral_radius(&m, &opts()).unwrap().rho - 3.0).abs() <= 1e-10);
    }

    #[test]
    fn hand_solved_order_three_example() {
        // 2 x0^2 + x1^2 = l x0^2 and x0^2 + 2 x1^2 = l x1^2 force x0 = x1, l = 3.
        let mut a = Tensor::zeros(3, 2);
        a.set(&[0, 0, 0], 2.0);
        a.set(&[0, 1, 1], 1.0);
        a.set(&[1, 0, 0], 1.0);
        a.set(&[1, 1, 1], 2.0);
        let r = spectral_radius(&a, &opts()).unwrap();
        assert!(r.converged);
        assert!((r.rho - 3.0).abs() < 1e-9);
    }

    #[test]
    fn short_circuits() {
        let r = spectral_radius(&Tensor::new(3, 1, vec![2.5]).unwrap(), &opts()).unwrap();
        assert_eq!((r.rho, r.perron.clone()), (2.5, Some(vec![1.0])));
        let r = spectral_radius(&Tensor::zeros(4, 3), &opts()).unwrap();
        assert_eq!(r.rho, 0.0);
        assert!(r.perron.is_none());
    }

    #[test]
    fn reducible_single_entry() {
        let mut a = Tensor::zeros(3, 2);
        a.set(&[0, 1, 1], 5.0);
        let r = spectral_radius(&a, &opts()).unwrap();
        assert_eq!(r.rho, 0.0);
        assert!(r.perron.is_none());
    }

    #[test]
    fn non_convergence_is_reported() {
        let m = Tensor::new(2, 3, vec![1., 2., 0., 0., 1., 3., 1., 0., 1.]).unwrap();
        let r = spectral_radius(&m, &SpectralOptions { max_iters: 2, ..opts() }).unwrap();
        assert!(!r.converged);
        assert!(r.lower <= r.rho && r.rho <= r.upper);
    }

    #[test]
    fn perron_vector_examples() {
        assert_eq!(perron_vector(&Tensor::ones(3, 3), &opts()).unwrap(), vec![1.0; 3]);
        assert_eq!(perron_vector(&Tensor::identity(3, 1), &opts()).unwrap(), vec![1.0]);
        let m = Tensor::new(2, 2, vec![2., 1., 1., 2.]).unwrap();
        assert_eq!(perron_vector(&m, &opts()).unwrap(), vec![1.0, 1.0]);
        assert_eq!(perron_vector(&Tensor::identity(3, 3), &opts()), Err(Error::WeaklyReducible));
    }

    #[test]
    fn residual_examples() {
        let a = Tensor::ones(3, 3);
        let res = residual(&a, 9.0, &[1.0; 3]).unwrap();
        assert!(res.iter().all(|v| v.abs() < 1e-12));
        let res = residual(&a, 0.0, &[0.5, 0.0, 2.0]).unwrap();
        assert!(res.iter().all(|&v| v >= 0.0));
        assert_eq!(residual(&Tensor::identity(3, 2), 1.0, &[1.0, 2.0]).unwrap(), vec![0.0, 0.0]);
        assert!(residual(&a, 1.0, &[1.0]).is_err());
    }
}
