//! PSD / PD / P / P0 semi-decisions.

use super::certificate::{sign_products, Certificate};
use super::matrix::{min_symmetric_eigen, minor_witness, violating_minors};
use super::search::{max_form_value, min_form_value, sign_search};
use super::{Label, Property, SearchBudget, Verdict};
use crate::tensor::{norm2, Tensor};

fn counterexample(a: &Tensor, property: Property, x: Vec<f64>, tol: f64) -> Verdict {
    let value = match property {
        Property::P | Property::P0 => sign_products(a, &x).into_iter().fold(f64::NEG_INFINITY, f64::max),
        _ => a.form_value(&x).expect("dimension checked"),
    };
    Verdict::new(Label::CertifiedNo)
        .with_margin(value)
        .with_certificate(Certificate::Counterexample { property, x, value, tol })
}

/// Positive semidefiniteness: `A x^m >= 0` for every `x`.
pub fn is_psd(a: &Tensor, budget: &SearchBudget) -> Verdict {
    definite(a, budget, Property::Psd)
}

/// Positive definiteness: `A x^m > 0` for every nonzero `x`.
pub fn is_pd(a: &Tensor, budget: &SearchBudget) -> Verdict {
    definite(a, budget, Property::Pd)
}

fn definite(a: &Tensor, budget: &SearchBudget, property: Property) -> Verdict {
    let strict = property == Property::Pd;
    let tol = if strict { budget.pd_tol } else { 0.0 };
    if let Some(m) = a.to_matrix() {
        let (lambda, x) = min_symmetric_eigen(&m);
        let holds = if strict { lambda > budget.pd_tol } else { lambda >= -budget.cert_tol };
        if holds {
            return Verdict::new(Label::Yes)
                .with_margin(lambda)
                .with_certificate(Certificate::MinEigenvalue { value: lambda });
        }
        let v = counterexample(a, property, x, tol);
        if v.certificate.as_ref().is_some_and(|c| c.check(a).is_ok()) {
            return v;
        }
        // Rounding pushed the eigenvector off the violating side; fall through to the search.
    }
    if a.order() % 2 == 1 {
        // Odd degree: A(-x)^m = -A x^m, so the form is never positive everywhere.
        let top = max_form_value(a, budget);
        let x: Vec<f64> = top.argmin.iter().map(|v| -v).collect();
        if strict {
            return counterexample(a, property, x, tol);
        }
        if a.symmetrized().entries().iter().all(|&v| v == 0.0) {
            // The form vanishes identically.
            return Verdict::new(Label::Yes).with_margin(0.0);
        }
        if top.value > 0.0 {
            return counterexample(a, property, x, tol);
        }
        return Verdict::new(Label::NoCounterexampleFound).with_margin(-top.value);
    }
    let low = min_form_value(a, budget);
    let violated = if strict { low.value <= budget.pd_tol } else { low.value < -budget.cert_tol };
    if violated {
        let v = counterexample(a, property, low.argmin, tol);
        if v.certificate.as_ref().is_some_and(|c| c.check(a).is_ok()) {
            return v;
        }
    }
    Verdict::new(Label::NoCounterexampleFound).with_margin(low.value)
}

/// P-tensor: every nonzero `x` has some `i` with `x_i (A x^{m-1})_i > 0`.
pub fn is_p(a: &Tensor, budget: &SearchBudget) -> Verdict {
    sign_class(a, budget, Property::P)
}

/// P0-tensor: every nonzero `x` has some `i` with `x_i != 0` and `x_i (A x^{m-1})_i >= 0`.
pub fn is_p0(a: &Tensor, budget: &SearchBudget) -> Verdict {
    sign_class(a, budget, Property::P0)
}

fn sign_class(a: &Tensor, budget: &SearchBudget, property: Property) -> Verdict {
    let n = a.dim();
    if let Some(m) = a.to_matrix().filter(|_| n <= budget.minor_cap) {
        let bad = violating_minors(&m, property, budget.cert_tol);
        let Some((alpha, det)) = bad.first().cloned() else {
            return Verdict::new(Label::Yes);
        };
        for (alpha, _) in &bad {
            if let Some(cert) = minor_witness(a, &m, alpha, property, budget.cert_tol) {
                return Verdict::new(Label::CertifiedNo).with_margin(det).with_certificate(cert);
            }
        }
        return Verdict::new(Label::CertifiedNo).with_margin(det).with_certificate(Certificate::PrincipalMinor {
            property,
            alpha,
            det,
            tol: budget.cert_tol,
        });
    }

    // Signed unit vectors are evaluated exactly: x = +-e_i gives x_i (A x^{m-1})_i = (+-1)^m A_{i..i}.
    let diag = a.diagonal_entries();
    for (i, &d) in diag.iter().enumerate() {
        for sign in [1.0, -1.0] {
            let value = if a.order() % 2 == 0 { d } else { sign * d };
            let violated = match property {
                Property::P => value <= 0.0,
                _ => value < 0.0,
            };
            if violated {
                let mut x = vec![0.0; n];
                x[i] = sign;
                return counterexample(a, property, x, 0.0);
            }
        }
    }
    if n == 1 {
        return Verdict::new(Label::Yes);
    }
    let threshold = -budget.cert_tol;
    let (value, x) = sign_search(a, budget, threshold);
    if value <= threshold && norm2(&x) > 0.0 {
        let v = counterexample(a, property, x, 0.0);
        if v.certificate.as_ref().is_some_and(|c| c.check(a).is_ok()) {
            return v;
        }
    }
    Verdict::new(Label::NoCounterexampleFound).with_margin(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    fn mat(n: usize, e: &[f64]) -> Tensor {
        Tensor::new(2, n, e.to_vec()).unwrap()
    }

    #[test]
    fn pd_examples() {
        let v = is_pd(&Tensor::identity(4, 3), &budget());
        assert_eq!(v.label, Label::NoCounterexampleFound);
        assert!(v.margin.unwrap() > 0.0);

        let mut t = Tensor::zeros(3, 2);
        t.set(&[0, 1, 1], 1.0);
        let v = is_pd(&t, &budget());
        assert_eq!(v.label, Label::CertifiedNo);
        assert!(v.certificate.unwrap().check(&t).is_ok());

        let v = is_pd(&mat(2, &[2., 1., 1., 2.]), &budget());
        assert_eq!(v.label, Label::Yes);
        assert!((v.margin.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn psd_examples() {
        let a = mat(2, &[1., 2., 2., 1.]);
        let v = is_psd(&a, &budget());
        assert_eq!(v.label, Label::CertifiedNo);
        let c = v.certificate.unwrap();
        assert!(c.check(&a).is_ok());
        let x = c.vector().unwrap();
        assert!((x[0] + x[1]).abs() < 1e-12);
        assert!((a.form_value(x).unwrap() + 1.0).abs() < 1e-12);
        // x = (1, -1) unnormalized gives -2.
        assert_eq!(a.form_value(&[1.0, -1.0]).unwrap(), -2.0);

        let mut odd = Tensor::zeros(3, 2);
        odd.set(&[0, 0, 1], 1.0);
        let v = is_psd(&odd, &budget());
        assert_eq!(v.label, Label::CertifiedNo);
        assert!(v.certificate.unwrap().check(&odd).is_ok());

        // Antisymmetric in the first two positions: the cubic form is identically zero.
        let mut anti = Tensor::zeros(3, 2);
        anti.set(&[0, 1, 1], 1.0);
        anti.set(&[1, 0, 1], -1.0);
        assert_eq!(is_psd(&anti, &budget()).label, Label::Yes);

        assert_eq!(is_psd(&Tensor::identity(4, 2), &budget()).label, Label::NoCounterexampleFound);
        let neg = Tensor::identity(4, 2).scaled(-1.0);
        assert_eq!(is_psd(&neg, &budget()).label, Label::CertifiedNo);
    }

    #[test]
    fn p_examples() {
        let v = is_p(&Tensor::identity(4, 3), &budget());
        assert_eq!(v.label, Label::NoCounterexampleFound);
        let v = is_p(&Tensor::identity(2, 3), &budget());
        assert_eq!(v.label, Label::Yes);

        let rot = mat(2, &[0., 1., -1., 0.]);
        let v = is_p(&rot, &budget());
        assert_eq!(v.label, Label::CertifiedNo);
        assert!(v.certificate.unwrap().check(&rot).is_ok());
        assert_eq!(is_p0(&rot, &budget()).label, Label::Yes);

        let d = mat(2, &[1., 0., 0., -1.]);
        let v = is_p0(&d, &budget());
        assert_eq!(v.label, Label::CertifiedNo);
        let c = v.certificate.unwrap();
        assert!(c.check(&d).is_ok());
        let x = c.vector().unwrap();
        assert_eq!(x[0], 0.0);
        assert!(x[1].abs() > 0.0);
    }

    #[test]
    fn p_search_finds_higher_order_counterexample() {
        // A negative diagonal entry is caught by the unit-vector probes.
        let mut t = Tensor::identity(4, 2);
        t.set(&[1, 1, 1, 1], -1.0);
        let v = is_p0(&t, &budget());
        assert_eq!(v.label, Label::CertifiedNo);
        assert!(v.certificate.unwrap().check(&t).is_ok());

        // Positive diagonal, but a strong coupling reverses every sign at x = (1, -1).
        let mut c = Tensor::identity(4, 2);
        c.set(&[0, 1, 1, 1], 3.0);
        c.set(&[1, 0, 0, 0], 3.0);
        let v = is_p(&c, &budget());
        assert_eq!(v.label, Label::CertifiedNo);
        assert!(v.certificate.unwrap().check(&c).is_ok());
    }
}
