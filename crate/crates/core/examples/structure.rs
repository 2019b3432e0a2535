//! Irreducibility tests and the block partition of a reducible tensor.

use tenshull::spectral::{spectral_radius, SpectralOptions};
use tenshull::structure::{is_irreducible, is_weakly_irreducible, representation_matrix, weakly_irreducible_partition};
use tenshull::Tensor;

fn main() -> tenshull::Result<()> {
    let mut a = Tensor::zeros(3, 4);
    // Indices 0 and 1 feed each other, 2 and 3 form their own cycle,
    // and row 1 also looks at index 2.
    a.set(&[0, 1, 1], 1.0);
    a.set(&[1, 0, 2], 2.0);
    a.set(&[2, 3, 3], 1.5);
    a.set(&[3, 2, 2], 0.5);

    println!("R(A) =\n{}", representation_matrix(&a)?);
    println!("irreducible:        {}", is_irreducible(&a)?);
    println!("weakly irreducible: {}", is_weakly_irreducible(&a)?);

    let p = weakly_irreducible_partition(&a)?;
    let opts = SpectralOptions::default();
    for block in &p.blocks {
        let sub = a.principal_subtensor(block)?;
        println!("block {:?}: rho = {:.10}", block.as_slice(), spectral_radius(&sub, &opts)?.rho);
    }
    let whole = spectral_radius(&a, &opts)?;
    println!("rho(A) = {:.10}, attained on {:?}", whole.rho, whole.block.map(|b| b.as_slice().to_vec()));
    Ok(())
}
