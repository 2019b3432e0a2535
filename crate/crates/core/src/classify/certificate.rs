use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::matrix::{min_symmetric_eigen, principal_minor};
use super::Property;
use crate::spectral::{cw_bounds, cw_lower};
use crate::tensor::{max_norm, norm2, Tensor};

/// Relative rounding allowance when re-checking `x_i (A x^{m-1})_i <= 0`.
const ROUNDING: f64 = 1e-12;

/// Evidence attached to a verdict. Every variant re-checks against the
/// tensor it was issued for with [`Certificate::check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A positive off-diagonal entry: the tensor is not a Z-tensor.
    OffDiagonal { index: Vec<usize>, value: f64 },
    /// `rho(sI - A) >= bound` via the lower Collatz-Wielandt bound at `y >= 0`.
    /// With `strict = true` it shows `s < rho` (not M), otherwise `s <= rho + strict_tol`
    /// (not strong M).
    SpectralLower { s: f64, y: Vec<f64>, bound: f64, strict_tol: f64, strict: bool },
    /// `rho(sI - A) <= bound < s` via the upper Collatz-Wielandt bound at `y > 0`.
    SpectralUpper { s: f64, y: Vec<f64>, bound: f64 },
    /// A vector violating the defining inequality of `property`.
    Counterexample { property: Property, x: Vec<f64>, value: f64, tol: f64 },
    /// A principal minor of a matrix that is `<= tol` (P) or `< -tol` (P0).
    PrincipalMinor { property: Property, alpha: Vec<usize>, det: f64, tol: f64 },
    /// The smallest eigenvalue of the symmetric part of a matrix (evidence for `Yes`).
    MinEigenvalue { value: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("certificate rejected: {0}")]
pub struct CheckError(pub String);

fn fail<T>(msg: impl Into<String>) -> Result<T, CheckError> {
    Err(CheckError(msg.into()))
}

impl Certificate {
    /// Re-evaluates the certified inequality on `a`.
    pub fn check(&self, a: &Tensor) -> Result<(), CheckError> {
        match self {
            Certificate::OffDiagonal { index, .. } => {
                if index.len() != a.order() || index.iter().any(|&i| i >= a.dim()) {
                    return fail(format!("index {index:?} out of range"));
                }
                if Tensor::is_diagonal_index(index) {
                    return fail(format!("index {index:?} is diagonal"));
                }
                let v = a.get(index);
                if v > 0.0 {
                    Ok(())
                } else {
                    fail(format!("entry at {index:?} is {v}, not > 0"))
                }
            }
            Certificate::SpectralLower { s, y, strict_tol, strict, .. } => {
                let d = split_remainder(a, *s)?;
                check_len(y, a.dim())?;
                let lower = cw_lower(&d, y).map_err(|e| CheckError(e.to_string()))?;
                if *strict {
                    if lower > s + strict_tol {
                        Ok(())
                    } else {
                        fail(format!("lower bound {lower} does not exceed s + tol = {}", s + strict_tol))
                    }
                } else if lower >= s - strict_tol {
                    Ok(())
                } else {
                    fail(format!("lower bound {lower} < s - tol = {}", s - strict_tol))
                }
            }
            Certificate::SpectralUpper { s, y, .. } => {
                let d = split_remainder(a, *s)?;
                check_len(y, a.dim())?;
                let (_, upper) = cw_bounds(&d, y).map_err(|e| CheckError(e.to_string()))?;
                if upper < *s {
                    Ok(())
                } else {
                    fail(format!("upper bound {upper} is not < s = {s}"))
                }
            }
            Certificate::Counterexample { property, x, tol, .. } => {
                check_len(x, a.dim())?;
                if x.iter().all(|&v| v == 0.0) {
                    return fail("zero vector");
                }
                check_counterexample(a, *property, x, *tol)
            }
            Certificate::PrincipalMinor { property, alpha, tol, .. } => {
                let m = a.to_matrix().ok_or_else(|| CheckError("principal minors need order 2".into()))?;
                if alpha.is_empty() || alpha.iter().any(|&i| i >= a.dim()) || alpha.windows(2).any(|w| w[0] >= w[1]) {
                    return fail(format!("invalid index set {alpha:?}"));
                }
                let det = principal_minor(&m, alpha);
                match property {
                    Property::P if det <= *tol => Ok(()),
                    Property::P0 if det < -tol => Ok(()),
                    Property::P | Property::P0 => {
                        fail(format!("principal minor {alpha:?} = {det} does not violate {}", property.name()))
                    }
                    _ => fail("principal minors certify only P and P0"),
                }
            }
            Certificate::MinEigenvalue { value } => {
                let m = a.to_matrix().ok_or_else(|| CheckError("eigenvalue evidence needs order 2".into()))?;
                let (lambda, _) = min_symmetric_eigen(&m);
                if (lambda - value).abs() <= 1e-9 * value.abs().max(1.0) {
                    Ok(())
                } else {
                    fail(format!("smallest symmetric eigenvalue is {lambda}, not {value}"))
                }
            }
        }
    }

    /// Vector carried by the certificate, if any.
    pub fn vector(&self) -> Option<&[f64]> {
        match self {
            Certificate::SpectralLower { y, .. } | Certificate::SpectralUpper { y, .. } => Some(y),
            Certificate::Counterexample { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn vector_mut(&mut self) -> Option<&mut Vec<f64>> {
        match self {
            Certificate::SpectralLower { y, .. } | Certificate::SpectralUpper { y, .. } => Some(y),
            Certificate::Counterexample { x, .. } => Some(x),
            _ => None,
        }
    }
}

fn check_len(x: &[f64], n: usize) -> Result<(), CheckError> {
    if x.len() != n {
        return fail(format!("vector length {} differs from dimension {n}", x.len()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return fail("vector has non-finite entries");
    }
    Ok(())
}

// D = sI - A, which must be entrywise nonnegative.
fn split_remainder(a: &Tensor, s: f64) -> Result<Tensor, CheckError> {
    if let Some((index, value)) = a.positive_off_diagonal() {
        return fail(format!("positive off-diagonal entry {value} at {index:?}"));
    }
    let d = a.scale_shift(-1.0, -s);
    if !d.is_nonnegative() {
        return fail(format!("s = {s} is below a diagonal entry"));
    }
    Ok(d)
}

/// `x_i (A x^{m-1})_i` for every `i`.
pub(crate) fn sign_products(a: &Tensor, x: &[f64]) -> Vec<f64> {
    let y = a.contract_tail(x);
    x.iter().zip(&y).map(|(xi, yi)| xi * yi).collect()
}

/// Rounding allowance for the sign products at `x`.
pub(crate) fn rounding_slack(a: &Tensor, x: &[f64]) -> f64 {
    let terms = (a.dim() as f64).powi(a.order() as i32 - 1);
    ROUNDING * a.max_abs() * terms * max_norm(x).powi(a.order() as i32)
}

fn check_counterexample(a: &Tensor, property: Property, x: &[f64], tol: f64) -> Result<(), CheckError> {
    match property {
        Property::Psd => {
            let f = a.form_value(x).map_err(|e| CheckError(e.to_string()))?;
            if f < 0.0 {
                Ok(())
            } else {
                fail(format!("form value {f} is not < 0"))
            }
        }
        Property::Pd => {
            let f = a.form_value(x).map_err(|e| CheckError(e.to_string()))?;
            let bound = tol * norm2(x).powi(a.order() as i32);
            if f <= bound {
                Ok(())
            } else {
                fail(format!("form value {f} exceeds {bound}"))
            }
        }
        Property::P => {
            let h = sign_products(a, x);
            let slack = rounding_slack(a, x);
            match h.iter().position(|&v| v > slack) {
                None => Ok(()),
                Some(i) => fail(format!("x_{i} (A x^(m-1))_{i} = {} > 0", h[i])),
            }
        }
        Property::P0 => {
            let h = sign_products(a, x);
            match (0..x.len()).find(|&i| x[i] != 0.0 && !(h[i] < 0.0)) {
                None => Ok(()),
                Some(i) => fail(format!("x_{i} (A x^(m-1))_{i} = {} is not < 0", h[i])),
            }
        }
        Property::M | Property::StrongM => fail("M-class certificates are spectral, not vectors"),
    }
}
