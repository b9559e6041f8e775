//! The interchange format: metadata plus the sorted nonzero entries, each part
//! written as an exact hexadecimal float so that import restores the operator
//! bit for bit.

use std::io::{Read, Write};

use dybe_core::{MpComplex, Operator, Precision, Scalar};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: u64) -> Self {
        if n % 2 == 1 {
            Self::Odd
        } else {
            Self::Even
        }
    }
}

/// `exp(2πi·power/order)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub order: u64,
    pub power: u64,
}

/// A numeric spectral point, or one of the exactly evaluated limits
/// `"symbolic-limit-0"` and `"symbolic-limit-1"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ZValue {
    Point { re: f64, im: f64 },
    Symbolic(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub object: String,
    pub n: u64,
    pub parity: Parity,
    pub convention: String,
    pub root: Root,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<ZValue>,
    pub dim: usize,
    pub precision: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExportRecord {
    pub metadata: Metadata,
    pub entries: Vec<Entry>,
}

impl ExportRecord {
    /// The nonzero entries of `op`, sorted by `(row, col)`.
    pub fn new(metadata: Metadata, op: &Operator<MpComplex>) -> Self {
        let mut entries: Vec<Entry> = op
            .entries()
            .into_iter()
            .filter(|(_, _, v)| !v.is_zero())
            .map(|(row, col, v)| {
                let (re, im) = v.to_hex();
                Entry { row, col, re, im }
            })
            .collect();
        entries.sort_by_key(|e| (e.row, e.col));
        Self { metadata, entries }
    }

    pub fn precision(&self) -> Result<Precision, CliError> {
        precision(self.metadata.precision)
    }

    pub fn to_operator(&self) -> Result<Operator<MpComplex>, CliError> {
        let prec = self.precision()?;
        let dim = self.metadata.dim;
        let entries = self
            .entries
            .iter()
            .map(|e| {
                if e.row >= dim || e.col >= dim {
                    return Err(CliError::Input(format!("entry ({}, {}) outside dimension {dim}", e.row, e.col)));
                }
                let v = MpComplex::from_hex(&prec, &e.re, &e.im)
                    .ok_or_else(|| CliError::Input(format!("entry ({}, {}) is not a hex float", e.row, e.col)))?;
                Ok((e.row, e.col, v))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Operator::from_entries(&prec, dim, entries))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Input(format!("not an export record: {e}")))
    }

    /// The flat `row,col,re,im` listing.
    pub fn write_csv(&self, w: impl Write) -> Result<(), CliError> {
        let mut out = csv::Writer::from_writer(w);
        for e in &self.entries {
            out.serialize(e).map_err(io)?;
        }
        out.flush().map_err(|e| CliError::Io(e.to_string()))
    }

    /// Entries from a CSV listing, sorted.
    pub fn read_csv(r: impl Read) -> Result<Vec<Entry>, CliError> {
        let mut entries = csv::Reader::from_reader(r)
            .deserialize()
            .collect::<Result<Vec<Entry>, _>>()
            .map_err(|e| CliError::Input(format!("not an entry listing: {e}")))?;
        entries.sort_by_key(|e| (e.row, e.col));
        Ok(entries)
    }
}

fn io(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn precision(bits: usize) -> Result<Precision, CliError> {
    if bits < 53 {
        return Err(CliError::Input(format!("precision must be at least 53 bits, got {bits}")));
    }
    Ok(Precision::new(bits))
}
