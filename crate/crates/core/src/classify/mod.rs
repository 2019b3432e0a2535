//! Single-tensor classification.
//!
//! Z / M / strong-M membership is decided from certified spectral brackets.
//! P, P0, PSD and PD are semi-decided: a [`Label::CertifiedNo`] always comes
//! with a certificate that re-verifies by direct evaluation, while a failed
//! search only yields [`Label::NoCounterexampleFound`]. Exact `Yes` answers
//! come from the matrix case (`m = 2`) and the odd-order shortcuts.

mod certificate;
mod definite;
mod matrix;
mod mtensor;
mod search;

pub use certificate::{Certificate, CheckError};
pub use definite::{is_p, is_p0, is_pd, is_psd};
pub use mtensor::{classify_m, z_split, ZSplit};
pub use search::{max_form_value, min_form_value, FormExtremum};

use serde::{Deserialize, Serialize};

use crate::spectral::SpectralOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    NotZ,
    ZNotM,
    M,
    StrongM,
    CertifiedNo,
    NoCounterexampleFound,
    Yes,
}

impl Label {
    /// Rank within the M hierarchy (`NotZ < ZNotM < M < StrongM`).
    pub fn m_rank(self) -> Option<u8> {
        match self {
            Label::NotZ => Some(0),
            Label::ZNotM => Some(1),
            Label::M => Some(2),
            Label::StrongM => Some(3),
            _ => None,
        }
    }
}

/// The tensor classes the crate can test for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    M,
    StrongM,
    P,
    P0,
    Psd,
    Pd,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::M => "m",
            Property::StrongM => "strong-m",
            Property::P => "p",
            Property::P0 => "p0",
            Property::Psd => "psd",
            Property::Pd => "pd",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub label: Label,
    /// Diagonal shift `s` of the canonical split `A = sI - D` (M-class labels).
    pub s: Option<f64>,
    /// `s - rho(D)` for M-class labels, the best objective value for searches.
    pub margin: Option<f64>,
    /// Certified `rho(D)` bracket for M-class labels.
    pub bracket: Option<(f64, f64)>,
    /// Set when the numbers could not separate the boundary from either side.
    pub inconclusive: bool,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub(crate) fn new(label: Label) -> Self {
        Verdict { label, s: None, margin: None, bracket: None, inconclusive: false, certificate: None }
    }

    pub(crate) fn with_certificate(mut self, c: Certificate) -> Self {
        self.certificate = Some(c);
        self
    }

    pub(crate) fn with_margin(mut self, m: f64) -> Self {
        self.margin = Some(m);
        self
    }

    /// Collapses an M-class verdict onto the three-valued answer for `property`.
    pub fn answer_for(&self, property: Property) -> Label {
        match (property, self.label) {
            (Property::M, Label::M | Label::StrongM) if !self.inconclusive => Label::Yes,
            (Property::M, Label::M | Label::StrongM) => Label::NoCounterexampleFound,
            (Property::M, Label::NotZ | Label::ZNotM) => Label::CertifiedNo,
            (Property::StrongM, Label::StrongM) => Label::Yes,
            (Property::StrongM, Label::M) if self.inconclusive => Label::NoCounterexampleFound,
            (Property::StrongM, Label::M | Label::NotZ | Label::ZNotM) => Label::CertifiedNo,
            (_, l) => l,
        }
    }
}

/// Tolerances and spectral settings for M-tensor classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub spectral: SpectralOptions,
    /// Relative strictness margin; the absolute margin is `strict_rel * max(1, |s|)`.
    pub strict_rel: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { spectral: SpectralOptions::default(), strict_rel: 1e-9 }
    }
}

impl ClassifyOptions {
    pub fn strict_tol(&self, s: f64) -> f64 {
        self.strict_rel * s.abs().max(1.0)
    }
}

/// Settings for the multi-start searches behind P / P0 / PSD / PD.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub starts: usize,
    pub max_iters: usize,
    pub seed: u64,
    pub cert_tol: f64,
    pub pd_tol: f64,
    /// Largest dimension handled by the exact principal-minor test (`m = 2`).
    pub minor_cap: usize,
    /// Largest dimension for which every support pattern is searched.
    pub support_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            starts: 64,
            max_iters: 500,
            seed: 0,
            cert_tol: 1e-9,
            pd_tol: 1e-9,
            minor_cap: 12,
            support_cap: 8,
        }
    }
}
