mod common;

use common::*;
use proptest::prelude::*;
use tenshull::oracle::cw_refine;
use tenshull::spectral::{spectral_radius, SpectralOptions};
use tenshull::structure::is_weakly_irreducible;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn bracket_holds_the_refined_midpoint(seed in any::<u64>(), m in 2usize..=4, n in 1usize..=5, sparsity in 0.0f64..0.6) {
        let a = random_tensor(&mut rng(seed), m, n, 0.0, 1.0, sparsity);
        prop_assume!(is_weakly_irreducible(&a).unwrap());
        let opts = SpectralOptions::default();
        let res = spectral_radius(&a, &opts).unwrap();
        prop_assert!(res.lower <= res.upper);
        prop_assert!(res.converged);
        let oracle = cw_refine(&a, 2000).unwrap();
        prop_assert!(oracle.lo <= oracle.hi);
        let slack = 10.0 * opts.tol * res.rho.max(1.0);
        prop_assert!(
            res.lower - slack <= oracle.mid() && oracle.mid() <= res.upper + slack,
            "bracket [{}, {}] vs oracle [{}, {}]", res.lower, res.upper, oracle.lo, oracle.hi
        );
    }

    #[test]
    fn perron_vector_is_positive(seed in any::<u64>(), m in 2usize..=4, n in 1usize..=5, sparsity in 0.0f64..0.6) {
        let a = random_tensor(&mut rng(seed), m, n, 0.0, 1.0, sparsity);
        prop_assume!(is_weakly_irreducible(&a).unwrap());
        let y = spectral_radius(&a, &SpectralOptions::default()).unwrap().perron.unwrap();
        prop_assert!(y.iter().all(|&v| v >= 1e-8), "{y:?}");
    }

    #[test]
    fn reducible_input_is_total(seed in any::<u64>(), m in 2usize..=4, n in 1usize..=6) {
        let a = random_tensor(&mut rng(seed), m, n, 0.0, 1.0, 0.9);
        let res = spectral_radius(&a, &SpectralOptions::default()).unwrap();
        prop_assert!(res.rho >= 0.0 && res.lower <= res.rho && res.rho <= res.upper);
    }
}

#[test]
fn reducible_radius_is_the_limit_from_above() {
    use tenshull::Tensor;
    let mut r = rng(9);
    for k in 0..200 {
        let (m, n) = (2 + k % 3, 2 + k % 4);
        let a = random_tensor(&mut r, m, n, 0.0, 1.0, 0.85);
        if is_weakly_irreducible(&a).unwrap() {
            continue;
        }
        let base = rho(&a);
        let mut prev = f64::INFINITY;
        for eps in [1e-2, 1e-4, 1e-6, 1e-8] {
            let p = rho(&a.add(&Tensor::filled(m, n, eps)).unwrap());
            assert!(p >= base - 1e-9, "perturbed radius {p} below {base}");
            assert!(p <= prev + 1e-9, "radius grew as the perturbation shrank");
            prev = p;
        }
    }
}
