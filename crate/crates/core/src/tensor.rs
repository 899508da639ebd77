//! Boolean tensors of order `ℓ >= 2` and their signed decomposition into
//! primitive tensors (all ones on a product set `Q_1 x … x Q_ℓ`).
//!
//! The decomposition flattens along one coordinate, picks a maximal
//! independent set of slices, writes every slice as a `±1` combination of
//! those, and recurses into the chosen slices. Order two is the matrix
//! engine itself.

use crate::colsum::IndependenceConfig;
use crate::decompose::{
    decompose_with, maximal_independent_columns_with, ColumnExpander, DecomposeOptions,
};
use crate::error::{check_index, Error, Result};
use crate::matrix::BoolMatrix;
use crate::rank::exact_rank;
use crate::rect::Sign;

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Calls `f` on every multi-index of `dims` in row-major order.
fn for_each_index(dims: &[usize], mut f: impl FnMut(&[usize])) {
    if dims.contains(&0) {
        return;
    }
    let mut idx = vec![0; dims.len()];
    loop {
        f(&idx);
        let mut k = dims.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Order-`ℓ` 0/1 array, row-major (last coordinate fastest).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolTensor {
    dims: Vec<usize>,
    data: Vec<u8>,
}

impl BoolTensor {
    pub fn new(dims: Vec<usize>, data: Vec<u8>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::Validation(format!(
                "tensor order must be at least 2, got {}",
                dims.len()
            )));
        }
        if dims.contains(&0) {
            return Err(Error::Validation("tensor dimensions must be positive".into()));
        }
        let size: usize = dims.iter().product();
        if data.len() != size {
            return Err(Error::Dimension {
                expected: format!("{size} entries"),
                found: format!("{} entries", data.len()),
            });
        }
        if data.iter().any(|&v| v > 1) {
            return Err(Error::Validation("tensor entries must be 0 or 1".into()));
        }
        Ok(Self { dims, data })
    }

    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> bool) -> Result<Self> {
        let mut data = Vec::with_capacity(dims.iter().product());
        for_each_index(&dims, |idx| data.push(u8::from(f(idx))));
        Self::new(dims, data)
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        Self::from_fn(dims, |_| false)
    }

    pub fn ones(dims: Vec<usize>) -> Result<Self> {
        Self::from_fn(dims, |_| true)
    }

    /// Ones where all coordinates agree.
    pub fn diagonal(order: usize, n: usize) -> Result<Self> {
        Self::from_fn(vec![n; order], |idx| idx.iter().all(|&x| x == idx[0]))
    }

    pub fn from_matrix(m: &BoolMatrix) -> Self {
        Self {
            dims: vec![m.rows(), m.cols()],
            data: m.entries().to_vec(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, idx: &[usize]) -> bool {
        let off: usize = idx.iter().zip(strides(&self.dims)).map(|(i, s)| i * s).sum();
        self.data[off] == 1
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_coordinate(&self, lambda: usize) -> Result<()> {
        check_index("tensor coordinate", lambda, self.order())
    }

    /// Parses `dims: n1 n2 … nl` followed by the entries in row-major
    /// order as `0`/`1` characters; whitespace and `#` comment lines are
    /// skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `dims:` header".into()))?;
        let rest = header
            .strip_prefix("dims:")
            .ok_or_else(|| Error::Parse(format!("expected `dims:` header, found {header:?}")))?;
        let dims = rest
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad dimension {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut data = Vec::new();
        for line in lines {
            for c in line.chars().filter(|c| !c.is_whitespace()) {
                match c {
                    '0' => data.push(0),
                    '1' => data.push(1),
                    other => {
                        return Err(Error::Parse(format!(
                            "unexpected character {other:?} in tensor entries"
                        )))
                    }
                }
            }
        }
        Self::new(dims, data).map_err(|e| match e {
            Error::Dimension { .. } => Error::Parse(format!("entry count mismatch: {e}")),
            other => other,
        })
    }

    /// Text form with one line per run of the last coordinate.
    pub fn to_text(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        let mut out = format!("dims: {}\n", dims.join(" "));
        for chunk in self.data.chunks(*self.dims.last().expect("order >= 2")) {
            out.extend(chunk.iter().map(|&v| if v == 1 { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }
}

/// Integer-valued tensor, the result of evaluating a signed decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntTensor {
    pub dims: Vec<usize>,
    pub data: Vec<i64>,
}

impl IntTensor {
    pub fn equals_bool(&self, t: &BoolTensor) -> bool {
        self.dims == t.dims
            && self
                .data
                .iter()
                .zip(&t.data)
                .all(|(&a, &b)| a == i64::from(b))
    }
}

/// Fixes coordinate `lambda` to `value`. An order-2 tensor yields its
/// row or column as a single-column matrix (`dims = [k, 1]`).
pub fn slice(t: &BoolTensor, lambda: usize, value: usize) -> Result<BoolTensor> {
    t.check_coordinate(lambda)?;
    check_index("slice value", value, t.dims[lambda])?;
    let mut dims: Vec<usize> = t
        .dims
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != lambda)
        .map(|(_, &d)| d)
        .collect();
    if dims.len() == 1 {
        dims.push(1);
    }
    let mut full = vec![0; t.order()];
    BoolTensor::from_fn(dims, |idx| {
        for (k, slot) in full.iter_mut().enumerate() {
            *slot = match k.cmp(&lambda) {
                std::cmp::Ordering::Less => idx[k],
                std::cmp::Ordering::Equal => value,
                std::cmp::Ordering::Greater => idx[k - 1],
            };
        }
        t.get(&full)
    })
}

/// The `(Π_{k≠λ} n_k) x n_λ` matrix whose column `v` is the row-major
/// vectorisation of the `λ`-slice at `v`.
pub fn flatten(t: &BoolTensor, lambda: usize) -> Result<BoolMatrix> {
    t.check_coordinate(lambda)?;
    let rest: Vec<usize> = (0..t.order()).filter(|&k| k != lambda).collect();
    let rest_dims: Vec<usize> = rest.iter().map(|&k| t.dims[k]).collect();
    let rows: usize = rest_dims.iter().product();
    let cols = t.dims[lambda];
    let mut entries = vec![0u8; rows * cols];
    let mut full = vec![0; t.order()];
    let mut r = 0;
    for_each_index(&rest_dims, |idx| {
        for (&k, &x) in rest.iter().zip(idx) {
            full[k] = x;
        }
        for v in 0..cols {
            full[lambda] = v;
            entries[r * cols + v] = u8::from(t.get(&full));
        }
        r += 1;
    });
    BoolMatrix::new(rows, cols, entries)
}

/// Maximum exact rank over all single-coordinate flattenings.
pub fn flattening_rank(t: &BoolTensor) -> usize {
    (0..t.order())
        .map(|k| exact_rank(&flatten(t, k).expect("valid coordinate")))
        .max()
        .unwrap_or(0)
}

/// Slice values forming a greedy maximal independent set along `lambda`.
pub fn maximal_independent_slices(
    t: &BoolTensor,
    lambda: usize,
    config: &IndependenceConfig,
) -> Result<Vec<usize>> {
    let flat = flatten(t, lambda)?;
    Ok(maximal_independent_columns_with(&flat, None, config)?
        .columns()
        .to_vec())
}

/// All ones on `Q_1 x … x Q_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimitiveTensor {
    sets: Vec<Vec<usize>>,
}

impl PrimitiveTensor {
    pub fn new(mut sets: Vec<Vec<usize>>) -> Result<Self> {
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::Validation(
                    "primitive tensor sides must be nonempty".into(),
                ));
            }
        }
        Ok(Self { sets })
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    fn check_fits(&self, dims: &[usize]) -> Result<()> {
        if self.sets.len() != dims.len() {
            return Err(Error::Dimension {
                expected: format!("order {}", dims.len()),
                found: format!("order {}", self.sets.len()),
            });
        }
        for (s, &d) in self.sets.iter().zip(dims) {
            check_index("tensor index", *s.last().expect("nonempty"), d)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPrimitive {
    pub sign: Sign,
    pub tensor: PrimitiveTensor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedTensorDecomposition {
    dims: Vec<usize>,
    terms: Vec<SignedPrimitive>,
}

impl SignedTensorDecomposition {
    pub fn new(dims: Vec<usize>, terms: Vec<SignedPrimitive>) -> Result<Self> {
        for t in &terms {
            t.tensor.check_fits(&dims)?;
        }
        Ok(Self { dims, terms })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn terms(&self) -> &[SignedPrimitive] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self) -> IntTensor {
        let size: usize = self.dims.iter().product();
        let st = strides(&self.dims);
        let mut data = vec![0i64; size];
        for term in &self.terms {
            let sets = term.tensor.sets();
            let sizes: Vec<usize> = sets.iter().map(Vec::len).collect();
            for_each_index(&sizes, |pick| {
                let off: usize = pick
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| sets[k][p] * st[k])
                    .sum();
                data[off] += term.sign.value();
            });
        }
        IntTensor {
            dims: self.dims.clone(),
            data,
        }
    }

    pub fn verify(&self, t: &BoolTensor) -> bool {
        self.evaluate().equals_bool(t)
    }
}

pub fn evaluate_tensor_decomposition(d: &SignedTensorDecomposition) -> IntTensor {
    d.evaluate()
}

#[derive(Debug, Clone)]
pub struct TensorOptions {
    /// Coordinate split at the top level; the last one when `None`.
    /// Recursive levels always split their last coordinate.
    pub lambda: Option<usize>,
    pub independence: IndependenceConfig,
    pub max_order: usize,
}

impl Default for TensorOptions {
    fn default() -> Self {
        Self {
            lambda: None,
            independence: IndependenceConfig::default(),
            max_order: 4,
        }
    }
}

pub fn tensor_signed_decomposition(t: &BoolTensor) -> Result<SignedTensorDecomposition> {
    tensor_signed_decomposition_with(t, &TensorOptions::default())
}

pub fn tensor_signed_decomposition_with(
    t: &BoolTensor,
    options: &TensorOptions,
) -> Result<SignedTensorDecomposition> {
    if t.order() > options.max_order {
        return Err(Error::ResourceLimit {
            what: "tensor order",
            actual: t.order(),
            cap: options.max_order,
        });
    }
    let lambda = options.lambda.unwrap_or(t.order() - 1);
    t.check_coordinate(lambda)?;
    let terms = decompose_rec(t, lambda, &options.independence)?;
    SignedTensorDecomposition::new(t.dims.clone(), terms)
}

fn decompose_rec(
    t: &BoolTensor,
    lambda: usize,
    config: &IndependenceConfig,
) -> Result<Vec<SignedPrimitive>> {
    if t.order() == 2 && lambda == 1 {
        let m = flatten(t, 1)?;
        let opts = DecomposeOptions {
            order: None,
            independence: *config,
        };
        let d = decompose_with(&m, &opts)?.decomposition;
        return d
            .into_terms()
            .into_iter()
            .map(|term| {
                Ok(SignedPrimitive {
                    sign: term.sign,
                    tensor: PrimitiveTensor::new(vec![
                        term.rect.rows().to_vec(),
                        term.rect.cols().to_vec(),
                    ])?,
                })
            })
            .collect();
    }

    let flat = flatten(t, lambda)?;
    let set = maximal_independent_columns_with(&flat, None, config)?;
    let expander = ColumnExpander::new(&flat, &set, config)?;
    let coefficients = (0..flat.cols())
        .map(|v| expander.express(v))
        .collect::<Result<Vec<_>>>()?;

    let mut out = Vec::new();
    for &s in set.columns() {
        let sub = slice(t, lambda, s)?;
        // Order-2 slices of a 2-tensor are columns `[k, 1]`; split the
        // row coordinate there so the recursion terminates.
        let sub_terms = if t.order() == 2 {
            let rows: Vec<usize> = (0..sub.dims[0]).filter(|&i| sub.get(&[i, 0])).collect();
            if rows.is_empty() {
                Vec::new()
            } else {
                vec![SignedPrimitive {
                    sign: Sign::Plus,
                    tensor: PrimitiveTensor::new(vec![rows, vec![0]])?,
                }]
            }
        } else {
            decompose_rec(&sub, sub.order() - 1, config)?
        };
        for (value, sign) in [(1i8, Sign::Plus), (-1, Sign::Minus)] {
            let chosen: Vec<usize> = coefficients
                .iter()
                .enumerate()
                .filter(|(_, a)| a.get(s) == Some(value))
                .map(|(v, _)| v)
                .collect();
            if chosen.is_empty() {
                continue;
            }
            for term in &sub_terms {
                let mut sets: Vec<Vec<usize>> = term.tensor.sets().to_vec();
                if t.order() == 2 {
                    sets.truncate(1);
                }
                sets.insert(lambda, chosen.clone());
                out.push(SignedPrimitive {
                    sign: term.sign * sign,
                    tensor: PrimitiveTensor::new(sets)?,
                });
            }
        }
    }
    Ok(out)
}
