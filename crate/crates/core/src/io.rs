//! JSON algebra files.
//!
//! ```json
//! {"format_version": "1", "q": 2, "p": 1,
//!  "brackets": [{"i": 1, "j": 2, "coeffs": {"1": "1"}}]}
//! ```
//!
//! One record per unordered pair with `i < j`; rationals are strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{validate, Bracket, StructureTensor, TwoStepAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: String,
    pub q: usize,
    pub p: usize,
    pub brackets: Vec<BracketRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, String>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &TwoStepAlgebra, name: Option<String>, notes: Option<String>) -> Self {
        let brackets = alg
            .tensor()
            .brackets()
            .into_iter()
            .map(|b| BracketRecord {
                i: b.i,
                j: b.j,
                coeffs: b.coeffs.iter().map(|(k, c)| (*k, format_rational(c))).collect(),
            })
            .collect();
        AlgebraFile {
            format_version: FORMAT_VERSION.into(),
            q: alg.q(),
            p: alg.p(),
            brackets,
            name,
            notes,
        }
    }

    /// Structural checks with field context, then validation.
    pub fn to_algebra(&self) -> Result<TwoStepAlgebra> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "format_version: expected \"{FORMAT_VERSION}\", got {:?}",
                self.format_version
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut records = Vec::with_capacity(self.brackets.len());
        for (n, rec) in self.brackets.iter().enumerate() {
            let at = format!("brackets[{n}]");
            if rec.i == 0 || rec.j > self.q || rec.i >= rec.j {
                return Err(Error::Format(format!(
                    "{at}: need 1 <= i < j <= q = {}, got i = {}, j = {}",
                    self.q, rec.i, rec.j
                )));
            }
            if !seen.insert((rec.i, rec.j)) {
                return Err(Error::Format(format!("{at}: duplicate record for ({}, {})", rec.i, rec.j)));
            }
            let mut coeffs = Vec::with_capacity(rec.coeffs.len());
            for (k, text) in &rec.coeffs {
                if *k == 0 || *k > self.p {
                    return Err(Error::Format(format!(
                        "{at}.coeffs: center index {k} outside 1..={}",
                        self.p
                    )));
                }
                let c = parse_rational(text)
                    .map_err(|e| Error::Format(format!("{at}.coeffs[\"{k}\"]: {e}")))?;
                coeffs.push((*k, c));
            }
            records.push(Bracket { i: rec.i, j: rec.j, coeffs });
        }
        validate(StructureTensor::from_brackets(self.q, self.p, &records)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Parses the JSON document; syntax errors carry line and column.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

pub fn read_algebra(text: &str) -> Result<TwoStepAlgebra> {
    parse_algebra_file(text)?.to_algebra()
}

pub fn write_algebra(alg: &TwoStepAlgebra, name: Option<String>) -> String {
    AlgebraFile::from_algebra(alg, name, None).to_json()
}
