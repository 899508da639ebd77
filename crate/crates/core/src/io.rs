//! File formats. Every index in JSON is 1-based.
//!
//! * Matrix text: one line per row of `0`/`1`, `#` comments and blank lines
//!   ignored. JSON matrices are an array of rows of 0/1 numbers.
//! * Decomposition: `{"m", "n", "terms": [{"sign", "rows", "cols"}]}`.
//! * Oracle result: the decomposition fields plus `value`, `exhausted`,
//!   `lower_bound` and `nodes`.
//! * Tensor text: `dims: n1 … nl` then the row-major entries.
//! * Tensor decomposition: `{"dims", "terms": [{"sign", "sets"}]}`.
//! * Family pair: `{"d", "S": [[…]], "T": [[…]]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;
use crate::oracles::OracleResult;
use crate::rect::{Rectangle, Sign, SignedDecomposition, SignedTerm};
use crate::setsys::SetFamilyPair;
use crate::tensor::{BoolTensor, PrimitiveTensor, SignedPrimitive, SignedTensorDecomposition};

fn to_one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|&x| x + 1).collect()
}

fn to_zero_based(v: &[usize], what: &str) -> Result<Vec<usize>> {
    v.iter()
        .map(|&x| {
            x.checked_sub(1)
                .ok_or_else(|| Error::Parse(format!("{what} indices are 1-based, found 0")))
        })
        .collect()
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// `true` when the first non-blank character opens a JSON value.
pub fn looks_like_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{') | Some('['))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub sign: i64,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub m: usize,
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl From<&SignedDecomposition> for DecompositionJson {
    fn from(d: &SignedDecomposition) -> Self {
        Self {
            m: d.rows(),
            n: d.cols(),
            terms: d
                .terms()
                .iter()
                .map(|t| TermJson {
                    sign: t.sign.value(),
                    rows: to_one_based(t.rect.rows()),
                    cols: to_one_based(t.rect.cols()),
                })
                .collect(),
        }
    }
}

impl DecompositionJson {
    pub fn to_decomposition(&self) -> Result<SignedDecomposition> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let rect = Rectangle::new(
                    to_zero_based(&t.rows, "row")?,
                    to_zero_based(&t.cols, "column")?,
                )?;
                Ok(SignedTerm::new(Sign::from_value(t.sign)?, rect))
            })
            .collect::<Result<Vec<_>>>()?;
        SignedDecomposition::new(self.m, self.n, terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    #[serde(flatten)]
    pub decomposition: DecompositionJson,
    pub value: usize,
    pub exhausted: bool,
    pub lower_bound: usize,
    pub nodes: u64,
}

impl From<&OracleResult> for OracleJson {
    fn from(r: &OracleResult) -> Self {
        Self {
            decomposition: (&r.witness).into(),
            value: r.value,
            exhausted: r.exhausted,
            lower_bound: r.lower_bound,
            nodes: r.nodes,
        }
    }
}

pub fn decomposition_to_json(d: &SignedDecomposition) -> String {
    serde_json::to_string(&DecompositionJson::from(d)).expect("serializable")
}

pub fn decomposition_from_json(text: &str) -> Result<SignedDecomposition> {
    serde_json::from_str::<DecompositionJson>(text)
        .map_err(json_err)?
        .to_decomposition()
}

/// Reads a matrix from text or a JSON array of rows.
pub fn read_matrix(text: &str) -> Result<BoolMatrix> {
    if looks_like_json(text) {
        let rows: Vec<Vec<u8>> = serde_json::from_str(text).map_err(json_err)?;
        BoolMatrix::from_rows(&rows)
    } else {
        BoolMatrix::parse_text(text)
    }
}

pub fn matrix_to_json(m: &BoolMatrix) -> String {
    let rows: Vec<&[u8]> = (0..m.rows()).map(|i| m.row(i)).collect();
    serde_json::to_string(&rows).expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub dims: Vec<usize>,
    pub entries: Vec<u8>,
}

/// Reads a tensor from the text format or `{"dims", "entries"}` JSON.
pub fn read_tensor(text: &str) -> Result<BoolTensor> {
    if looks_like_json(text) {
        let t: TensorJson = serde_json::from_str(text).map_err(json_err)?;
        BoolTensor::new(t.dims, t.entries)
    } else {
        BoolTensor::parse_text(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub sign: i64,
    pub sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDecompositionJson {
    pub dims: Vec<usize>,
    pub terms: Vec<TensorTermJson>,
}

impl From<&SignedTensorDecomposition> for TensorDecompositionJson {
    fn from(d: &SignedTensorDecomposition) -> Self {
        Self {
            dims: d.dims().to_vec(),
            terms: d
                .terms()
                .iter()
                .map(|t| TensorTermJson {
                    sign: t.sign.value(),
                    sets: t.tensor.sets().iter().map(|s| to_one_based(s)).collect(),
                })
                .collect(),
        }
    }
}

impl TensorDecompositionJson {
    pub fn to_decomposition(&self) -> Result<SignedTensorDecomposition> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let sets = t
                    .sets
                    .iter()
                    .map(|s| to_zero_based(s, "tensor"))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SignedPrimitive {
                    sign: Sign::from_value(t.sign)?,
                    tensor: PrimitiveTensor::new(sets)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SignedTensorDecomposition::new(self.dims.clone(), terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub d: usize,
    #[serde(rename = "S")]
    pub left: Vec<Vec<usize>>,
    #[serde(rename = "T")]
    pub right: Vec<Vec<usize>>,
}

impl From<&SetFamilyPair> for FamilyJson {
    fn from(p: &SetFamilyPair) -> Self {
        Self {
            d: p.universe(),
            left: p.left().iter().map(|s| to_one_based(s)).collect(),
            right: p.right().iter().map(|s| to_one_based(s)).collect(),
        }
    }
}

impl FamilyJson {
    pub fn to_pair(&self) -> Result<SetFamilyPair> {
        let conv = |sets: &[Vec<usize>]| -> Result<Vec<Vec<usize>>> {
            sets.iter().map(|s| to_zero_based(s, "element")).collect()
        };
        SetFamilyPair::new(self.d, conv(&self.left)?, conv(&self.right)?)
    }
}

pub fn family_from_json(text: &str) -> Result<SetFamilyPair> {
    serde_json::from_str::<FamilyJson>(text)
        .map_err(json_err)?
        .to_pair()
}

pub fn family_to_json(p: &SetFamilyPair) -> String {
    serde_json::to_string(&FamilyJson::from(p)).expect("serializable")
}
