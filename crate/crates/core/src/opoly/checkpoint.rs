//! Checkpoint persistence: line-delimited JSON records.
//!
//! Every save appends one record with the fields (search_id, h,
//! modulus_hex, degree_bound, constraint_tag, cursor, found); loading
//! reads the last record. Re-loading validates the field, degree bound and
//! constraint against the requested search before resuming, refusing
//! with a field-by-field diff on mismatch.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::gf2m::BinaryField;

use super::{OpolyError, SearchConstraint};

/// Resumable cursor over a coefficient-enumeration search space, plus the
/// hits found so far (as canonical polynomial texts in cursor order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCheckpoint {
    pub search_id: String,
    pub h: u32,
    #[serde(
        rename = "modulus_hex",
        serialize_with = "ser_hex",
        deserialize_with = "de_hex"
    )]
    pub modulus: u64,
    pub degree_bound: u32,
    pub constraint_tag: String,
    pub cursor: u64,
    pub found: Vec<String>,
}

fn ser_hex<S: serde::Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{v:#X}"))
}

fn de_hex<'de, D: serde::Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
    let s = String::deserialize(d)?;
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(&s);
    u64::from_str_radix(digits, 16).map_err(serde::de::Error::custom)
}

impl SearchCheckpoint {
    /// Refuse to resume unless field, degree bound and constraint match.
    pub fn validate(
        &self,
        field: &BinaryField,
        degree_bound: u32,
        constraint: SearchConstraint,
    ) -> Result<(), OpolyError> {
        let mut diffs = Vec::new();
        if self.h != field.h() {
            diffs.push(format!("h: checkpoint {} vs requested {}", self.h, field.h()));
        }
        if self.modulus != field.modulus() {
            diffs.push(format!(
                "modulus: checkpoint {:#X} vs requested {:#X}",
                self.modulus,
                field.modulus()
            ));
        }
        if self.degree_bound != degree_bound {
            diffs.push(format!(
                "degree_bound: checkpoint {} vs requested {}",
                self.degree_bound, degree_bound
            ));
        }
        if self.constraint_tag != constraint.tag() {
            diffs.push(format!(
                "constraint: checkpoint {} vs requested {}",
                self.constraint_tag,
                constraint.tag()
            ));
        }
        if diffs.is_empty() {
            Ok(())
        } else {
            Err(OpolyError::CheckpointMismatch { diffs })
        }
    }
}

/// Append one checkpoint record to the file, creating it if needed.
pub fn append_checkpoint(path: &Path, cp: &SearchCheckpoint) -> Result<(), OpolyError> {
    let line = serde_json::to_string(cp).map_err(|e| OpolyError::CheckpointIo(e.to_string()))?;
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| OpolyError::CheckpointIo(format!("{}: {e}", path.display())))?;
    writeln!(file, "{line}").map_err(|e| OpolyError::CheckpointIo(e.to_string()))?;
    file.flush()
        .map_err(|e| OpolyError::CheckpointIo(e.to_string()))?;
    Ok(())
}

/// Load the most recent checkpoint record from a line-delimited file.
pub fn load_latest_checkpoint(path: &Path) -> Result<SearchCheckpoint, OpolyError> {
    let file = std::fs::File::open(path)
        .map_err(|e| OpolyError::CheckpointIo(format!("{}: {e}", path.display())))?;
    let mut latest = None;
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| OpolyError::CheckpointIo(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let cp: SearchCheckpoint = serde_json::from_str(&line)
            .map_err(|e| OpolyError::CheckpointIo(format!("bad record: {e}")))?;
        latest = Some(cp);
    }
    latest.ok_or_else(|| {
        OpolyError::CheckpointIo(format!("{}: no checkpoint records", path.display()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SearchCheckpoint {
        SearchCheckpoint {
            search_id: "opoly-search/h3/m0xB/d6/all".to_string(),
            h: 3,
            modulus: 0xB,
            degree_bound: 6,
            constraint_tag: "all".to_string(),
            cursor: 65536,
            found: vec!["1*x^2".to_string()],
        }
    }

    #[test]
    fn save_then_load_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.jsonl");
        let cp = sample();
        append_checkpoint(&path, &cp).unwrap();
        let mut cp2 = cp.clone();
        cp2.cursor = 131072;
        cp2.found.push("1*x^4".to_string());
        append_checkpoint(&path, &cp2).unwrap();
        let loaded = load_latest_checkpoint(&path).unwrap();
        assert_eq!(loaded, cp2);
    }

    #[test]
    fn record_uses_hex_modulus() {
        let line = serde_json::to_string(&sample()).unwrap();
        assert!(line.contains("\"modulus_hex\":\"0xB\""), "{line}");
    }

    #[test]
    fn validation_reports_each_mismatch() {
        let cp = sample();
        let wrong_field = BinaryField::with_modulus(3, 0b1101).unwrap();
        let err = cp
            .validate(&wrong_field, 5, SearchConstraint::EvenTermsOnly)
            .unwrap_err();
        match err {
            OpolyError::CheckpointMismatch { diffs } => {
                assert_eq!(diffs.len(), 3);
                assert!(diffs.iter().any(|d| d.starts_with("modulus")));
                assert!(diffs.iter().any(|d| d.starts_with("degree_bound")));
                assert!(diffs.iter().any(|d| d.starts_with("constraint")));
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
        let right = BinaryField::new(3).unwrap();
        assert!(cp.validate(&right, 6, SearchConstraint::All).is_ok());
    }

    #[test]
    fn missing_file_is_an_io_error() {
        assert!(matches!(
            load_latest_checkpoint(Path::new("/nonexistent/cp.jsonl")),
            Err(OpolyError::CheckpointIo(_))
        ));
    }
}
