//! Tensor files: JSON with `order`, `dim`, `format` and `entries`.
//!
//! `dense` stores all `dim^order` entries row-major; `coo` stores a list of
//! `{"idx": [...], "val": v}` records and every unlisted entry is zero.
//! Floats are printed shortest-round-trip, so `parse(emit(t)) == t` exactly.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Dense,
    Coo,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    order: usize,
    dim: usize,
    format: Format,
    entries: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CooEntry {
    idx: Vec<usize>,
    val: f64,
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

pub fn parse_tensor(text: &str) -> Result<Tensor> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| format_err(format!("invalid tensor file: {e}")))?;
    from_raw(raw)
}

/// Reads a tensor from an already parsed JSON value (e.g. one embedded in a report).
pub fn tensor_from_value(v: &Value) -> Result<Tensor> {
    let raw: RawFile = serde_json::from_value(v.clone()).map_err(|e| format_err(format!("invalid tensor: {e}")))?;
    from_raw(raw)
}

fn from_raw(raw: RawFile) -> Result<Tensor> {
    if raw.order == 0 || raw.dim == 0 {
        return Err(Error::EmptyShape { order: raw.order, dim: raw.dim });
    }
    let expected = u32::try_from(raw.order)
        .ok()
        .and_then(|m| raw.dim.checked_pow(m))
        .ok_or_else(|| format_err(format!("order {} and dimension {} are too large", raw.order, raw.dim)))?;
    match raw.format {
        Format::Dense => {
            let entries: Vec<f64> = serde_json::from_value(raw.entries)
                .map_err(|e| format_err(format!("dense entries must be an array of numbers: {e}")))?;
            Tensor::new(raw.order, raw.dim, entries)
        }
        Format::Coo => {
            let list: Vec<CooEntry> = serde_json::from_value(raw.entries)
                .map_err(|e| format_err(format!("coo entries must be a list of {{idx, val}}: {e}")))?;
            let mut t = Tensor::zeros(raw.order, raw.dim);
            let mut seen = HashSet::with_capacity(list.len());
            for (k, e) in list.into_iter().enumerate() {
                if e.idx.len() != raw.order || e.idx.iter().any(|&i| i >= raw.dim) {
                    return Err(format_err(format!("coo entry {k}: index {:?} out of range", e.idx)));
                }
                if !seen.insert(e.idx.clone()) {
                    return Err(format_err(format!("coo entry {k}: duplicate index {:?}", e.idx)));
                }
                t.set(&e.idx, e.val);
            }
            debug_assert_eq!(t.len(), expected);
            Ok(t)
        }
    }
}

pub fn tensor_to_value(t: &Tensor, format: Format) -> Value {
    match format {
        Format::Dense => json!({
            "order": t.order(),
            "dim": t.dim(),
            "format": "dense",
            "entries": t.entries(),
        }),
        Format::Coo => {
            // Signed zeros are kept so the round trip is bit-exact.
            let entries: Vec<Value> = t
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, v)| v.to_bits() != 0)
                .map(|(k, v)| json!({ "idx": t.multi_index(k), "val": v }))
                .collect();
            json!({ "order": t.order(), "dim": t.dim(), "format": "coo", "entries": entries })
        }
    }
}

/// Pretty-printed file contents with a trailing newline.
pub fn emit_tensor(t: &Tensor, format: Format) -> Result<String> {
    if let Some(k) = t.entries().iter().position(|v| !v.is_finite()) {
        return Err(format_err(format!("entry {:?} is not finite", t.multi_index(k))));
    }
    let mut s = serde_json::to_string_pretty(&tensor_to_value(t, format)).expect("serializable");
    s.push('\n');
    Ok(s)
}

/// Compact dense JSON; the byte string digested in reports.
pub fn canonical_json(t: &Tensor) -> String {
    serde_json::to_string(&tensor_to_value(t, Format::Dense)).expect("serializable")
}

pub fn digest(t: &Tensor) -> String {
    hex::encode(Sha256::digest(canonical_json(t).as_bytes()))
}

pub fn read_tensor(path: &Path) -> Result<Tensor> {
    let text = std::fs::read_to_string(path).map_err(|e| format_err(format!("{}: {e}", path.display())))?;
    parse_tensor(&text).map_err(|e| format_err(format!("{}: {e}", path.display())))
}

pub fn write_tensor(path: &Path, t: &Tensor, format: Format) -> Result<()> {
    std::fs::write(path, emit_tensor(t, format)?).map_err(|e| format_err(format!("{}: {e}", path.display())))
}
