//! Exact matrix-case (`m = 2`) deciders.

use nalgebra::{DMatrix, DVector};

use super::certificate::Certificate;
use super::Property;
use crate::tensor::Tensor;

pub(crate) fn principal_minor(m: &DMatrix<f64>, alpha: &[usize]) -> f64 {
    let k = alpha.len();
    let sub = DMatrix::from_fn(k, k, |r, c| m[(alpha[r], alpha[c])]);
    sub.determinant()
}

/// Smallest eigenpair of the symmetric part `(M + M^T) / 2`, eigenvector with unit 2-norm.
pub(crate) fn min_symmetric_eigen(m: &DMatrix<f64>) -> (f64, Vec<f64>) {
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let (k, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    (lambda, eig.eigenvectors.column(k).iter().copied().collect())
}

/// Every principal index set ordered by size, then lexicographically.
pub(crate) fn principal_sets(n: usize) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets
}

/// Principal minors violating P (`<= tol`) or P0 (`< -tol`), with their values.
pub(crate) fn violating_minors(m: &DMatrix<f64>, property: Property, tol: f64) -> Vec<(Vec<usize>, f64)> {
    principal_sets(m.nrows())
        .into_iter()
        .filter_map(|alpha| {
            let det = principal_minor(m, &alpha);
            let bad = match property {
                Property::P => det <= tol,
                _ => det < -tol,
            };
            bad.then_some((alpha, det))
        })
        .collect()
}

/// Tries to turn a violating principal minor into a sign-reversing vector:
/// a real eigenvalue `l <= 0` of `M[alpha]` with eigenvector `v` gives
/// `v_i (M v)_i = l v_i^2` on `alpha` and zero elsewhere.
pub(crate) fn minor_witness(
    a: &Tensor,
    m: &DMatrix<f64>,
    alpha: &[usize],
    property: Property,
    tol: f64,
) -> Option<Certificate> {
    let k = alpha.len();
    let sub = DMatrix::from_fn(k, k, |r, c| m[(alpha[r], alpha[c])]);
    let scale = sub.amax().max(1.0);
    let mut candidates: Vec<f64> = sub
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= 1e-10 * scale)
        .map(|z| z.re)
        .filter(|&l| match property {
            Property::P => l <= tol,
            _ => l < 0.0,
        })
        .collect();
    candidates.sort_by(f64::total_cmp);
    for lambda in candidates {
        let shifted = &sub - DMatrix::identity(k, k) * lambda;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t?;
        let (j, _) = svd.singular_values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1))?;
        let v: DVector<f64> = v_t.row(j).transpose();
        let mut x = vec![0.0; m.nrows()];
        for (r, &i) in alpha.iter().enumerate() {
            x[i] = v[r];
        }
        let value = a.apply(&x).ok()?.iter().zip(&x).map(|(y, xi)| y * xi).fold(f64::NEG_INFINITY, f64::max);
        let cert = Certificate::Counterexample { property, x, value, tol };
        if cert.check(a).is_ok() {
            return Some(cert);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minors_of_rotation() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let dets: Vec<f64> = principal_sets(2).iter().map(|a| principal_minor(&m, a)).collect();
        assert_eq!(dets, vec![0.0, 0.0, 1.0]);
        assert_eq!(violating_minors(&m, Property::P, 0.0).len(), 2);
        assert!(violating_minors(&m, Property::P0, 0.0).is_empty());
    }

    #[test]
    fn symmetric_eigen() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        let (l, v) = min_symmetric_eigen(&m);
        assert!((l + 1.0).abs() < 1e-12);
        assert!((v[0] + v[1]).abs() < 1e-12);
    }

    #[test]
    fn witness_from_negative_minor() {
        let a = Tensor::new(2, 2, vec![1.0, 3.0, 3.0, 1.0]).unwrap();
        let m = a.to_matrix().unwrap();
        let cert = minor_witness(&a, &m, &[0, 1], Property::P0, 1e-9).unwrap();
        assert!(cert.check(&a).is_ok());
    }
}
