//! Text encoding of Lie algebras.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["X", "Y", "Z"],
//!   "brackets": [[1, 2, ["0/1", "0/1", "1/1"]]],
//!   "polarization": [["1/1", "0/1", "0/1"], ["0/1", "1/1", "0/1"]],
//!   "lattice_rank": 0
//! }
//! ```
//!
//! Bracket indices are 1-based; coefficients are exact `"p/q"` strings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::rational::{self, RVec};
use super::{LieAlgebra, LieError, Subspace};

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    dim: usize,
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<(usize, usize, Vec<String>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    polarization: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lattice_rank: Option<usize>,
}

/// A parsed algebra file: the algebra plus the optional group data.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraDocument {
    pub algebra: LieAlgebra,
    pub polarization: Option<Subspace>,
    pub lattice_rank: Option<usize>,
}

fn malformed(msg: impl Into<String>) -> LieError {
    LieError::MalformedSpec(msg.into())
}

fn parse_vector(strings: &[String], dim: usize) -> Result<RVec, LieError> {
    if strings.len() != dim {
        return Err(LieError::DimensionMismatch {
            expected: dim,
            found: strings.len(),
        });
    }
    strings
        .iter()
        .map(|s| rational::parse(s).ok_or_else(|| malformed(format!("bad rational {s:?}"))))
        .collect()
}

fn format_vector(v: &[rational::Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

pub fn parse_value(value: Value) -> Result<AlgebraDocument, LieError> {
    let raw: RawAlgebra = serde_json::from_value(value).map_err(|e| malformed(e.to_string()))?;
    if raw.basis.len() != raw.dim {
        return Err(malformed(format!(
            "dim is {} but {} basis labels given",
            raw.dim,
            raw.basis.len()
        )));
    }
    let mut brackets = Vec::with_capacity(raw.brackets.len());
    for (i, j, coeffs) in &raw.brackets {
        if *i == 0 || *j == 0 {
            return Err(malformed("bracket indices are 1-based"));
        }
        brackets.push((i - 1, j - 1, parse_vector(coeffs, raw.dim)?));
    }
    let algebra = LieAlgebra::new(raw.basis, brackets)?;
    let polarization = raw
        .polarization
        .map(|vs| {
            let vectors = vs
                .iter()
                .map(|v| parse_vector(v, raw.dim))
                .collect::<Result<Vec<_>, _>>()?;
            Subspace::span(raw.dim, &vectors)
        })
        .transpose()?;
    Ok(AlgebraDocument {
        algebra,
        polarization,
        lattice_rank: raw.lattice_rank,
    })
}

pub fn parse_lie_algebra(text: &str) -> Result<AlgebraDocument, LieError> {
    let value: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    parse_value(value)
}

/// Document for `alg` with an optional polarization (written as its reduced basis).
pub fn to_value(alg: &LieAlgebra, polarization: Option<&Subspace>, lattice_rank: Option<usize>) -> Value {
    let raw = RawAlgebra {
        dim: alg.dim(),
        basis: alg.labels().to_vec(),
        brackets: alg
            .bracket_entries()
            .into_iter()
            .map(|(i, j, v)| (i + 1, j + 1, format_vector(&v)))
            .collect(),
        polarization: polarization.map(|p| p.basis().iter().map(|v| format_vector(v)).collect()),
        lattice_rank,
    };
    serde_json::to_value(raw).expect("algebra documents serialize")
}
