use serde::{Deserialize, Serialize};

use super::certificate::Certificate;
use super::{ClassifyOptions, Label, Verdict};
use crate::error::{Error, Result};
use crate::spectral::{cw_bounds, cw_lower, spectral_radius, SpectralResult};
use crate::structure::is_weakly_irreducible;
use crate::tensor::Tensor;

/// A representation `A = sI - D` of a Z-tensor with `D >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZSplit {
    pub s: f64,
    pub d: Tensor,
}

/// Canonical split with `s` equal to the largest diagonal entry, so `D` has a
/// zero on its diagonal. Any other valid split classifies identically.
pub fn z_split(a: &Tensor) -> Result<ZSplit> {
    if let Some((index, value)) = a.positive_off_diagonal() {
        return Err(Error::NotZ { index, value });
    }
    let s = a.diagonal_entries().into_iter().fold(f64::NEG_INFINITY, f64::max);
    Ok(ZSplit { s, d: a.scale_shift(-1.0, -s) })
}

/// Z / M / strong-M classification from the certified bracket on `rho(D)`.
pub fn classify_m(a: &Tensor, opts: &ClassifyOptions) -> Verdict {
    let split = match z_split(a) {
        Ok(s) => s,
        Err(Error::NotZ { index, value }) => {
            return Verdict::new(Label::NotZ).with_certificate(Certificate::OffDiagonal { index, value });
        }
        Err(e) => unreachable!("z_split only fails with NotZ: {e}"),
    };
    let ZSplit { s, d } = split;
    let spec = spectral_radius(&d, &opts.spectral).expect("D is nonnegative by construction");
    let tol = opts.strict_tol(s);
    let mut verdict = if s > spec.upper + tol {
        let mut v = Verdict::new(Label::StrongM);
        v.certificate = upper_certificate(&d, s, &spec, opts);
        v
    } else if s < spec.lower - tol {
        let mut v = Verdict::new(Label::ZNotM);
        v.certificate = lower_certificate(&d, s, &spec, opts, tol, true);
        v
    } else {
        let mut v = Verdict::new(Label::M);
        v.inconclusive = !spec.converged || spec.width() > tol;
        v.certificate = lower_certificate(&d, s, &spec, opts, tol, false);
        v
    };
    verdict.s = Some(s);
    verdict.margin = Some(s - spec.rho);
    verdict.bracket = Some((spec.lower, spec.upper));
    verdict
}

// A nonnegative vector whose lower Collatz-Wielandt bound shows rho(D) is at
// least about s: the Perron vector of D, or of the block achieving rho(D)
// padded with zeros.
fn lower_certificate(
    d: &Tensor,
    s: f64,
    spec: &SpectralResult,
    opts: &ClassifyOptions,
    tol: f64,
    strict: bool,
) -> Option<Certificate> {
    let y = match (&spec.perron, &spec.block) {
        (Some(p), _) => p.clone(),
        (None, Some(block)) => {
            let sub = d.principal_subtensor(block).ok()?;
            let inner = spectral_radius(&sub, &opts.spectral).ok()?.perron?;
            let mut y = vec![0.0; d.dim()];
            for (k, &i) in block.as_slice().iter().enumerate() {
                y[i] = inner[k];
            }
            y
        }
        (None, None) => {
            // Zero D: any unit vector has bound 0.
            let mut y = vec![0.0; d.dim()];
            y[0] = 1.0;
            y
        }
    };
    let bound = cw_lower(d, &y).ok()?;
    let cert = Certificate::SpectralLower { s, y, bound, strict_tol: tol, strict };
    let ok = if strict { bound > s + tol } else { bound >= s - tol };
    ok.then_some(cert)
}

// A positive vector whose upper Collatz-Wielandt bound is below s. Weakly
// reducible D gets the Perron vector of D + eps * ones, which is positive.
fn upper_certificate(d: &Tensor, s: f64, spec: &SpectralResult, opts: &ClassifyOptions) -> Option<Certificate> {
    let from = |y: Vec<f64>| -> Option<Certificate> {
        let (_, bound) = cw_bounds(d, &y).ok()?;
        (bound < s).then_some(Certificate::SpectralUpper { s, y, bound })
    };
    if let Some(p) = &spec.perron {
        if p.iter().all(|&v| v > 0.0) {
            if let Some(c) = from(p.clone()) {
                return Some(c);
            }
        }
    }
    let terms = (d.dim() as f64).powi(d.order() as i32 - 1);
    let mut eps = (s - spec.upper) / (2.0 * terms);
    for _ in 0..6 {
        let bumped = d.map(|v| v + eps);
        if is_weakly_irreducible(&bumped).unwrap_or(false) {
            if let Some(p) = spectral_radius(&bumped, &opts.spectral).ok().and_then(|r| r.perron) {
                if p.iter().all(|&v| v > 0.0) {
                    if let Some(c) = from(p) {
                        return Some(c);
                    }
                }
            }
        }
        eps *= 0.1;
    }
    None
}
