//! JSON wire format for factorization files.
//!
//! The schema is `{"f": string, "size": int, "phi": [[string]], "psi":
//! [[string]]}` where every string is the canonical polynomial rendering.
//! Output is deterministic: identical inputs serialize byte-identically.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::factorization::{FactorError, MatrixFactorization};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorizationFile {
    pub f: String,
    pub size: usize,
    pub phi: Vec<Vec<String>>,
    pub psi: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemaError {
    Json(String),
    BadPolynomial { field: &'static str, row: usize, col: usize, message: String },
    BadShape(String),
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaError::Json(m) => write!(f, "malformed JSON: {m}"),
            SchemaError::BadPolynomial { field, row, col, message } => {
                write!(f, "bad polynomial in {field}[{row}][{col}]: {message}")
            }
            SchemaError::BadShape(m) => write!(f, "bad shape: {m}"),
        }
    }
}

impl std::error::Error for SchemaError {}

/// Parsed but not yet verified factorization data.
#[derive(Debug, Clone)]
pub struct RawFactorization {
    pub f: Polynomial,
    pub phi: PolyMatrix,
    pub psi: PolyMatrix,
}

impl RawFactorization {
    /// Verifies the data into a [`MatrixFactorization`].
    pub fn into_verified(self) -> Result<MatrixFactorization, FactorError> {
        MatrixFactorization::new(self.phi, self.psi, self.f)
    }
}

pub fn to_file(mf: &MatrixFactorization) -> FactorizationFile {
    let rows = |m: &PolyMatrix| {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
            .collect()
    };
    FactorizationFile {
        f: mf.target().to_string(),
        size: mf.size(),
        phi: rows(mf.phi()),
        psi: rows(mf.psi()),
    }
}

pub fn to_json(mf: &MatrixFactorization) -> String {
    let mut text = serde_json::to_string_pretty(&to_file(mf)).expect("serialization cannot fail");
    text.push('\n');
    text
}

fn parse_matrix(field: &'static str, size: usize, rows: &[Vec<String>]) -> Result<PolyMatrix, SchemaError> {
    if rows.len() != size {
        return Err(SchemaError::BadShape(format!(
            "{field} has {} rows, declared size is {size}",
            rows.len()
        )));
    }
    let mut entries = Vec::with_capacity(size * size);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != size {
            return Err(SchemaError::BadShape(format!(
                "{field} row {i} has {} entries, declared size is {size}",
                row.len()
            )));
        }
        for (j, text) in row.iter().enumerate() {
            let poly = crate::parse_polynomial(text).map_err(|e| SchemaError::BadPolynomial {
                field,
                row: i,
                col: j,
                message: e.to_string(),
            })?;
            entries.push(poly);
        }
    }
    PolyMatrix::new(size, size, entries).map_err(|e| SchemaError::BadShape(e.to_string()))
}

/// Parses a factorization file without verifying the product identities.
pub fn from_json(text: &str) -> Result<RawFactorization, SchemaError> {
    let file: FactorizationFile =
        serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
    if file.size == 0 {
        return Err(SchemaError::BadShape("size must be at least 1".into()));
    }
    let f = crate::parse_polynomial(&file.f).map_err(|e| SchemaError::BadPolynomial {
        field: "f",
        row: 0,
        col: 0,
        message: e.to_string(),
    })?;
    let phi = parse_matrix("phi", file.size, &file.phi)?;
    let psi = parse_matrix("psi", file.size, &file.psi)?;
    Ok(RawFactorization { f, phi, psi })
}

/// Parses and fully verifies a factorization file.
pub fn verified_from_json(text: &str) -> Result<MatrixFactorization, Box<dyn std::error::Error>> {
    Ok(from_json(text)?.into_verified()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn intro() -> MatrixFactorization {
        let p = |s: &str| crate::parse_polynomial(s).unwrap();
        MatrixFactorization::new(
            PolyMatrix::new(2, 2, vec![p("x"), p("-1"), p("1"), p("x")]).unwrap(),
            PolyMatrix::new(2, 2, vec![p("x"), p("1"), p("-1"), p("x")]).unwrap(),
            p("x^2+1"),
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip_is_exact_and_deterministic() {
        let mf = intro();
        let text = to_json(&mf);
        assert_eq!(text, to_json(&mf));
        let back = verified_from_json(&text).unwrap();
        assert_eq!(back, mf);
    }

    #[test]
    fn json_has_the_declared_fields() {
        let text = to_json(&intro());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["f"], "x^2 + 1");
        assert_eq!(value["size"], 2);
        assert_eq!(value["phi"][0][1], "-1");
        assert_eq!(value["psi"][1][0], "-1");
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(matches!(from_json("not json"), Err(SchemaError::Json(_))));
        assert!(matches!(
            from_json(r#"{"f": "x", "size": 1, "phi": [["x"], ["x"]], "psi": [["1"]]}"#),
            Err(SchemaError::BadShape(_))
        ));
        assert!(matches!(
            from_json(r#"{"f": "x", "size": 1, "phi": [["x@"]], "psi": [["1"]]}"#),
            Err(SchemaError::BadPolynomial { field: "phi", .. })
        ));
        assert!(matches!(
            from_json(r#"{"f": "x", "size": 0, "phi": [], "psi": []}"#),
            Err(SchemaError::BadShape(_))
        ));
    }

    #[test]
    fn wrong_target_fails_verification_not_parsing() {
        let mut file = to_file(&intro());
        file.f = "x^2 + 2".into();
        let text = serde_json::to_string(&file).unwrap();
        let raw = from_json(&text).unwrap();
        assert_eq!(raw.f, &crate::parse_polynomial("x^2+1").unwrap() + &Polynomial::one());
        assert!(raw.into_verified().is_err());
    }
}
