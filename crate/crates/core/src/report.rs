//! Machine-readable reports and their offline verification.
//!
//! A report embeds every input tensor next to its SHA-256 digest and every
//! certificate next to the member tensor it speaks about, so `verify` needs
//! nothing but the report file. Reports carry no timings and are
//! byte-identical across runs with the same seed.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::Certificate;
use crate::error::{Error, Result};
use crate::interval::{IntervalHull, Member, SignVector};
use crate::io::{self, Format};
use crate::tensor::Tensor;

pub const TOOL: &str = "tenshull";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Input {
    pub name: String,
    pub sha256: String,
    pub tensor: Value,
}

impl Input {
    pub fn new(name: impl Into<String>, t: &Tensor) -> Self {
        Input { name: name.into(), sha256: io::digest(t), tensor: io::tensor_to_value(t, Format::Dense) }
    }
}

/// The tensor a certificate is about, by reference to the inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Input(usize),
    Vertex { lower: usize, upper: usize, z: SignVector },
    Center { lower: usize, upper: usize },
}

impl Subject {
    /// Subject for a hull member, the hull being inputs 0 and 1.
    pub fn for_member(m: &Member) -> Self {
        match m {
            Member::Lower => Subject::Input(0),
            Member::Upper => Subject::Input(1),
            Member::Center => Subject::Center { lower: 0, upper: 1 },
            Member::Vertex(z) => Subject::Vertex { lower: 0, upper: 1, z: z.clone() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub subject: Subject,
    /// What the certificate supports, e.g. `"pd: certified_no"`.
    pub claim: String,
    pub certificate: Certificate,
    /// The subject tensor itself for members that are not inputs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub seed: u64,
    pub inputs: Vec<Input>,
    pub result: Value,
    pub certificates: Vec<CertificateRecord>,
}

impl Report {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        Report {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed,
            inputs: Vec::new(),
            result: Value::Null,
            certificates: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("invalid report: {e}")))
    }

    /// Resolves a subject to its tensor using the embedded inputs.
    pub fn subject_tensor(&self, subject: &Subject) -> Result<Tensor> {
        let input = |i: usize| -> Result<Tensor> {
            let inp = self.inputs.get(i).ok_or_else(|| Error::Format(format!("no input {i}")))?;
            io::tensor_from_value(&inp.tensor)
        };
        match subject {
            Subject::Input(i) => input(*i),
            Subject::Vertex { lower, upper, z } => {
                IntervalHull::new(input(*lower)?, input(*upper)?)?.vertex_tensor(z)
            }
            Subject::Center { lower, upper } => Ok(IntervalHull::new(input(*lower)?, input(*upper)?)?.center().clone()),
        }
    }
}

/// Outcome of re-checking a report.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Verification {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every input digest and re-evaluates every certificate.
pub fn verify(report: &Report) -> Verification {
    let mut v = Verification::default();
    for (i, input) in report.inputs.iter().enumerate() {
        match io::tensor_from_value(&input.tensor) {
            Ok(t) => {
                let d = io::digest(&t);
                if d != input.sha256 {
                    v.failures.push(format!("input {i} ({}): digest {d} does not match recorded {}", input.name, input.sha256));
                }
            }
            Err(e) => v.failures.push(format!("input {i} ({}): {e}", input.name)),
        }
    }
    for (k, rec) in report.certificates.iter().enumerate() {
        v.checked += 1;
        let subject = match report.subject_tensor(&rec.subject) {
            Ok(t) => t,
            Err(e) => {
                v.failures.push(format!("certificate {k}: cannot rebuild subject: {e}"));
                continue;
            }
        };
        if let Some(member) = &rec.member {
            match io::tensor_from_value(member) {
                Ok(t) if t == subject => {}
                Ok(_) => {
                    v.failures.push(format!("certificate {k}: embedded member differs from the rebuilt subject"));
                    continue;
                }
                Err(e) => {
                    v.failures.push(format!("certificate {k}: embedded member: {e}"));
                    continue;
                }
            }
        }
        if let Err(e) = rec.certificate.check(&subject) {
            v.failures.push(format!("certificate {k} ({}): {}", rec.claim, e.0));
        }
    }
    v
}
