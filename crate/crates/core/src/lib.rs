//! Nonnegative tensor spectra, M / P / PSD tensor classification and
//! interval-hull certification.
//!
//! Tensors are dense, row-major and 0-based. Decisions that cannot be made
//! exactly come back as three-valued verdicts: a `CertifiedNo` always carries
//! a certificate that [`classify::Certificate::check`] re-verifies by direct
//! evaluation.

pub mod classify;
pub mod cli;
pub mod error;
pub mod interval;
pub mod io;
pub mod oracle;
pub mod report;
pub mod spectral;
pub mod structure;
pub mod tensor;

pub use error::{Error, Result};
pub use classify::{Certificate, Label, Property, Verdict};
pub use interval::IntervalHull;
pub use tensor::{IndexSet, Tensor};
