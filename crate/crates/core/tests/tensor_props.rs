mod common;

use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;
use tenshull::interval::SignVector;
use tenshull::{IndexSet, Tensor};

fn close(a: &[f64], b: &[f64], rel: f64) -> bool {
    let scale = b.iter().fold(1e-300f64, |s, v| s.max(v.abs()));
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= rel * scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn apply_is_homogeneous(seed in any::<u64>(), m in 2usize..=4, n in 1usize..=5, t in -10.0f64..10.0) {
        let mut r = rng(seed);
        let a = random_tensor(&mut r, m, n, -1.0, 1.0, 0.2);
        let x = random_vector(&mut r, n, -1.0, 1.0);
        let tx: Vec<f64> = x.iter().map(|v| t * v).collect();
        let lhs = a.apply(&tx).unwrap();
        let rhs: Vec<f64> = a.apply(&x).unwrap().iter().map(|v| t.powi(m as i32 - 1) * v).collect();
        prop_assert!(close(&lhs, &rhs, 1e-12), "{lhs:?} vs {rhs:?}");
    }

    #[test]
    fn apply_is_linear_in_the_tensor(seed in any::<u64>(), m in 2usize..=4, n in 1usize..=5) {
        let mut r = rng(seed);
        let a = random_tensor(&mut r, m, n, -1.0, 1.0, 0.2);
        let b = random_tensor(&mut r, m, n, -1.0, 1.0, 0.2);
        let x = random_vector(&mut r, n, -1.0, 1.0);
        let sum = a.add(&b).unwrap().apply(&x).unwrap();
        let parts: Vec<f64> = a.apply(&x).unwrap().iter().zip(b.apply(&x).unwrap()).map(|(p, q)| p + q).collect();
        prop_assert!(close(&sum, &parts, 1e-12));
    }

    #[test]
    fn form_is_dot_with_apply(seed in any::<u64>(), m in 2usize..=4, n in 1usize..=5) {
        let mut r = rng(seed);
        let a = random_tensor(&mut r, m, n, -1.0, 1.0, 0.0);
        let x = random_vector(&mut r, n, -1.0, 1.0);
        let via_apply: f64 = x.iter().zip(a.apply(&x).unwrap()).map(|(p, q)| p * q).sum();
        let form = a.form_value(&x).unwrap();
        prop_assert!((form - via_apply).abs() <= 1e-12 * via_apply.abs().max(1.0));
    }

    #[test]
    fn identity_product_is_exact(seed in any::<u64>(), m in 1usize..=4, n in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_tensor(&mut r, m, n, -5.0, 5.0, 0.3);
        prop_assert_eq!(a.matrix_product(&DMatrix::identity(n, n)).unwrap(), a);
    }

    #[test]
    fn full_subtensor_of_subtensor_is_itself(seed in any::<u64>(), m in 1usize..=4, n in 1usize..=5) {
        let mut r = rng(seed);
        let a = random_tensor(&mut r, m, n, -1.0, 1.0, 0.3);
        let mask = r.gen_range(1u64..1 << n);
        let alpha = IndexSet::from_mask(mask, n);
        let sub = a.principal_subtensor(&alpha).unwrap();
        let again = sub.principal_subtensor(&IndexSet::full(sub.dim())).unwrap();
        prop_assert_eq!(again, sub);
    }

    #[test]
    fn sign_product_flips_by_index_signs(seed in any::<u64>(), m in 1usize..=4, n in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_tensor(&mut r, m, n, -1.0, 1.0, 0.0);
        let z = SignVector::new((0..n).map(|_| if r.gen::<bool>() { 1 } else { -1 }).collect()).unwrap();
        let b = a.matrix_product(&z.diag_matrix()).unwrap();
        for k in 0..a.len() {
            let idx = a.multi_index(k);
            let sign: f64 = idx.iter().map(|&i| f64::from(z.as_slice()[i])).product();
            prop_assert_eq!(b.entries()[k], sign * a.entries()[k]);
        }
    }
}

#[test]
fn scale_shift_of_zero_is_identity() {
    assert_eq!(Tensor::zeros(3, 4).scale_shift(1.0, 1.0), Tensor::identity(3, 4));
}
