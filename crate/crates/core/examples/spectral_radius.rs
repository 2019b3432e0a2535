//! Spectral radius of a nonnegative tensor with its certified bracket.

use tenshull::spectral::{residual, spectral_radius, SpectralOptions};
use tenshull::Tensor;

fn main() -> tenshull::Result<()> {
    // A_{ijk} = 1 + i + j + k, order 3, dimension 3.
    let a = Tensor::from_fn(3, 3, |idx| 1.0 + idx.iter().sum::<usize>() as f64);
    let res = spectral_radius(&a, &SpectralOptions::default())?;
    println!("rho      = {:.12}", res.rho);
    println!("bracket  = [{:.12}, {:.12}] after {} iterations", res.lower, res.upper, res.iterations);

    let y = res.perron.expect("weakly irreducible input has a Perron vector");
    println!("perron   = {y:.6?}");
    let r = residual(&a, res.rho, &y)?;
    println!("residual = {:.1e}", r.iter().fold(0.0f64, |m, v| m.max(v.abs())));

    // All-ones tensors have radius n^(m-1).
    let ones = spectral_radius(&Tensor::ones(4, 3), &SpectralOptions::default())?;
    println!("rho(ones(4, 3)) = {} (expected 27)", ones.rho);
    Ok(())
}
