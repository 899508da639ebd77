//! Dense Boolean and integer matrices.
//!
//! Indices are 0-based throughout the library; the text and JSON formats in
//! [`crate::io`] convert to 1-based where a format asks for it.

use std::fmt;

use crate::error::{check_index, Error, Result};

/// Dense 0/1 matrix stored row-major, one byte per entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    m: usize,
    n: usize,
    entries: Vec<u8>,
}

impl BoolMatrix {
    /// Builds a matrix from row-major entries, each of which must be 0 or 1.
    pub fn new(m: usize, n: usize, entries: Vec<u8>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Validation(format!(
                "matrix dimensions must be positive, got {m}x{n}"
            )));
        }
        if entries.len() != m * n {
            return Err(Error::Dimension {
                expected: format!("{} entries", m * n),
                found: format!("{} entries", entries.len()),
            });
        }
        if let Some(pos) = entries.iter().position(|&v| v > 1) {
            return Err(Error::Validation(format!(
                "entry ({}, {}) is {}, expected 0 or 1",
                pos / n,
                pos % n,
                entries[pos]
            )));
        }
        Ok(Self { m, n, entries })
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(m * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: format!("row of length {n}"),
                    found: format!("row {i} of length {}", row.len()),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(m, n, entries)
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut entries = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                entries.push(u8::from(f(i, j)));
            }
        }
        Self::new(m, n, entries)
    }

    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        Self::new(m, n, vec![0; m * n])
    }

    pub fn ones(m: usize, n: usize) -> Result<Self> {
        Self::new(m, n, vec![1; m * n])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| i == j)
    }

    /// The `m*n`-bit pattern `bits` read row-major, bit `i*n + j` giving entry `(i, j)`.
    pub fn from_bits(m: usize, n: usize, bits: u64) -> Result<Self> {
        if m * n > 64 {
            return Err(Error::ResourceLimit {
                what: "cell count for bit pattern",
                actual: m * n,
                cap: 64,
            });
        }
        Self::from_fn(m, n, |i, j| bits >> (i * n + j) & 1 == 1)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.n + j] == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.entries[i * self.n + j] = u8::from(value);
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.m).map(|i| self.entries[i * self.n + j]).collect()
    }

    /// Bitmask of the 1-entries in row `i`; requires `n <= 64`.
    pub fn row_mask(&self, i: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.row(i)
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &v)| acc | (u64::from(v) << j))
    }

    /// Bitmask of the 1-entries in column `j`; requires `m <= 64`.
    pub fn col_mask(&self, j: usize) -> u64 {
        debug_assert!(self.m <= 64);
        (0..self.m).fold(0, |acc, i| acc | (u64::from(self.entries[i * self.n + j]) << i))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.m * self.n);
        for j in 0..self.n {
            for i in 0..self.m {
                entries.push(self.entries[i * self.n + j]);
            }
        }
        Self {
            m: self.n,
            n: self.m,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.entries.iter().filter(|&&v| v == 1).count()
    }

    /// Submatrix on the given (ordered) row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        for &i in rows {
            check_index("row", i, self.m)?;
        }
        for &j in cols {
            check_index("column", j, self.n)?;
        }
        Self::from_fn(rows.len(), cols.len(), |a, b| self.get(rows[a], cols[b]))
    }

    pub fn to_int(&self) -> IntMatrix {
        IntMatrix {
            m: self.m,
            n: self.n,
            entries: self.entries.iter().map(|&v| i64::from(v)).collect(),
        }
    }

    /// Parses the text format: one line per row of `0`/`1` characters.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(Error::Parse(format!(
                        "line {}: unexpected character {other:?}",
                        lineno + 1
                    ))),
                })
                .collect::<Result<Vec<u8>>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse("matrix text contains no rows".into()));
        }
        Self::from_rows(&rows).map_err(|e| match e {
            Error::Dimension { .. } => Error::Parse(format!("rows have unequal length: {e}")),
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.m * (self.n + 1));
        for i in 0..self.m {
            for &v in self.row(i) {
                out.push(if v == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMatrix {}x{} [", self.m, self.n)?;
        for i in 0..self.m {
            if i > 0 {
                write!(f, " ")?;
            }
            for &v in self.row(i) {
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    m: usize,
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(m: usize, n: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != m * n {
            return Err(Error::Dimension {
                expected: format!("{} entries", m * n),
                found: format!("{} entries", entries.len()),
            });
        }
        Ok(Self { m, n, entries })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(m * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: format!("row of length {n}"),
                    found: format!("row {i} of length {}", row.len()),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(m, n, entries)
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            entries: vec![0; m * n],
        }
    }

    pub fn constant(m: usize, n: usize, value: i64) -> Self {
        Self {
            m,
            n,
            entries: vec![value; m * n],
        }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.n + j] = value;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, delta: i64) {
        self.entries[i * self.n + j] += delta;
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Entrywise sum; dimensions must agree.
    pub fn checked_add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if (self.m, self.n) != (other.m, other.n) {
            return Err(Error::Dimension {
                expected: format!("{}x{}", self.m, self.n),
                found: format!("{}x{}", other.m, other.n),
            });
        }
        Ok(IntMatrix {
            m: self.m,
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `true` when every entry equals the corresponding entry of `b`.
    pub fn equals_bool(&self, b: &BoolMatrix) -> bool {
        self.m == b.rows()
            && self.n == b.cols()
            && self
                .entries
                .iter()
                .zip(b.entries())
                .all(|(&x, &y)| x == i64::from(y))
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.m).map(|i| self.row(i).to_vec()).collect()
    }
}

impl From<&BoolMatrix> for IntMatrix {
    fn from(b: &BoolMatrix) -> Self {
        b.to_int()
    }
}
