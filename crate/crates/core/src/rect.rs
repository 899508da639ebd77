//! Primitive matrices (all-ones rectangles) and signed sums of them.

use std::cmp::Ordering;
use std::ops::{Mul, Neg};

use crate::error::{check_index, Error, Result};
use crate::matrix::{BoolMatrix, IntMatrix};

/// A primitive matrix: all ones on `rows x cols`, zero elsewhere.
///
/// Both index sets are sorted, deduplicated and nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rectangle {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Rectangle {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self> {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Validation(
                "a rectangle needs a nonempty row set and column set".into(),
            ));
        }
        Ok(Self { rows, cols })
    }

    /// Like [`Rectangle::new`] but yields `None` when either side is empty.
    pub fn nonempty(rows: Vec<usize>, cols: Vec<usize>) -> Option<Self> {
        Self::new(rows, cols).ok()
    }

    pub fn from_masks(row_mask: u64, col_mask: u64) -> Option<Self> {
        Self::nonempty(mask_to_indices(row_mask), mask_to_indices(col_mask))
    }

    pub fn full(m: usize, n: usize) -> Result<Self> {
        Self::new((0..m).collect(), (0..n).collect())
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn area(&self) -> usize {
        self.rows.len() * self.cols.len()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows.binary_search(&i).is_ok() && self.cols.binary_search(&j).is_ok()
    }

    /// Errors unless every index lies inside an `m x n` matrix.
    pub fn check_fits(&self, m: usize, n: usize) -> Result<()> {
        check_index("row", *self.rows.last().expect("nonempty"), m)?;
        check_index("column", *self.cols.last().expect("nonempty"), n)
    }

    pub fn row_mask(&self) -> u64 {
        indices_to_mask(&self.rows)
    }

    pub fn col_mask(&self) -> u64 {
        indices_to_mask(&self.cols)
    }

    /// Canonical comparator: lexicographic on the row set, then the column set.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.rows
            .cmp(&other.rows)
            .then_with(|| self.cols.cmp(&other.cols))
    }
}

pub(crate) fn mask_to_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&b| mask >> b & 1 == 1).collect()
}

pub(crate) fn indices_to_mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |acc, &i| acc | 1 << i)
}

/// The 0/1 matrix of a rectangle inside an `m x n` ambient matrix.
pub fn rect_to_matrix(rect: &Rectangle, m: usize, n: usize) -> Result<BoolMatrix> {
    rect.check_fits(m, n)?;
    BoolMatrix::from_fn(m, n, |i, j| rect.contains(i, j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::Validation(format!("sign must be 1 or -1, got {other}"))),
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedTerm {
    pub sign: Sign,
    pub rect: Rectangle,
}

impl SignedTerm {
    pub fn new(sign: Sign, rect: Rectangle) -> Self {
        Self { sign, rect }
    }

    pub fn plus(rect: Rectangle) -> Self {
        Self::new(Sign::Plus, rect)
    }

    pub fn minus(rect: Rectangle) -> Self {
        Self::new(Sign::Minus, rect)
    }
}

/// An ordered signed sum of rectangles inside an `m x n` matrix.
/// Its length upper-bounds the signed rectangle rank of whatever it evaluates to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedDecomposition {
    m: usize,
    n: usize,
    terms: Vec<SignedTerm>,
}

impl SignedDecomposition {
    pub fn new(m: usize, n: usize, terms: Vec<SignedTerm>) -> Result<Self> {
        for t in &terms {
            t.rect.check_fits(m, n)?;
        }
        Ok(Self { m, n, terms })
    }

    pub fn empty(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, term: SignedTerm) -> Result<()> {
        term.rect.check_fits(self.m, self.n)?;
        self.terms.push(term);
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[SignedTerm] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<SignedTerm> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Concatenates two term lists over the same ambient dimensions.
    pub fn concat(&self, other: &SignedDecomposition) -> Result<SignedDecomposition> {
        if (self.m, self.n) != (other.m, other.n) {
            return Err(Error::Dimension {
                expected: format!("{}x{}", self.m, self.n),
                found: format!("{}x{}", other.m, other.n),
            });
        }
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Self {
            m: self.m,
            n: self.n,
            terms,
        })
    }

    /// Entrywise signed sum of the terms.
    pub fn evaluate(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.m, self.n);
        for t in &self.terms {
            let s = t.sign.value();
            for &i in t.rect.rows() {
                for &j in t.rect.cols() {
                    out.add_at(i, j, s);
                }
            }
        }
        out
    }

    /// `Ok(true)` iff the decomposition evaluates to `target` entrywise.
    pub fn verify(&self, target: &BoolMatrix) -> Result<bool> {
        if (self.m, self.n) != (target.rows(), target.cols()) {
            return Err(Error::Dimension {
                expected: format!("{}x{}", target.rows(), target.cols()),
                found: format!("{}x{}", self.m, self.n),
            });
        }
        Ok(self.evaluate().equals_bool(target))
    }
}

pub fn evaluate_decomposition(d: &SignedDecomposition) -> IntMatrix {
    d.evaluate()
}

pub fn verify_decomposition(target: &BoolMatrix, d: &SignedDecomposition) -> Result<bool> {
    d.verify(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(rows: &[usize], cols: &[usize]) -> Rectangle {
        Rectangle::new(rows.to_vec(), cols.to_vec()).unwrap()
    }

    #[test]
    fn rect_to_matrix_examples() {
        assert_eq!(
            rect_to_matrix(&r(&[0, 1], &[0, 1]), 2, 2).unwrap(),
            BoolMatrix::ones(2, 2).unwrap()
        );
        assert_eq!(
            rect_to_matrix(&r(&[0], &[1]), 2, 2).unwrap(),
            BoolMatrix::from_rows(&[[0, 1], [0, 0]]).unwrap()
        );
        assert_eq!(
            rect_to_matrix(&r(&[1], &[0, 1]), 3, 2).unwrap(),
            BoolMatrix::from_rows(&[[0, 0], [1, 1], [0, 0]]).unwrap()
        );
    }

    #[test]
    fn rect_out_of_bounds() {
        assert!(matches!(
            rect_to_matrix(&r(&[2], &[0]), 2, 2),
            Err(Error::Bounds { what: "row", .. })
        ));
        assert!(SignedDecomposition::new(2, 2, vec![SignedTerm::plus(r(&[0], &[5]))]).is_err());
    }

    #[test]
    fn empty_sides_rejected() {
        assert!(Rectangle::new(vec![], vec![0]).is_err());
        assert!(Rectangle::nonempty(vec![1], vec![]).is_none());
        assert_eq!(r(&[2, 0, 2], &[1]).rows(), &[0, 2]);
    }

    #[test]
    fn evaluate_examples() {
        let full = SignedDecomposition::new(2, 2, vec![SignedTerm::plus(r(&[0, 1], &[0, 1]))])
            .unwrap();
        assert_eq!(full.evaluate(), IntMatrix::constant(2, 2, 1));
        assert_eq!(SignedDecomposition::empty(2, 2).evaluate(), IntMatrix::zeros(2, 2));

        let l_shape = SignedDecomposition::new(
            2,
            2,
            vec![
                SignedTerm::plus(r(&[0, 1], &[0, 1])),
                SignedTerm::minus(r(&[1], &[1])),
            ],
        )
        .unwrap();
        assert_eq!(
            l_shape.evaluate(),
            IntMatrix::from_rows(&[[1, 1], [1, 0]]).unwrap()
        );
    }

    #[test]
    fn verify_examples() {
        let j = BoolMatrix::ones(2, 2).unwrap();
        let full = SignedDecomposition::new(2, 2, vec![SignedTerm::plus(r(&[0, 1], &[0, 1]))])
            .unwrap();
        assert!(verify_decomposition(&j, &full).unwrap());
        assert!(!verify_decomposition(&j, &SignedDecomposition::empty(2, 2)).unwrap());

        let l = BoolMatrix::from_rows(&[[1, 1], [1, 0]]).unwrap();
        let mut d = full.clone();
        d.push(SignedTerm::minus(r(&[1], &[1]))).unwrap();
        assert!(verify_decomposition(&l, &d).unwrap());

        let wrong = BoolMatrix::ones(3, 2).unwrap();
        assert!(matches!(
            verify_decomposition(&wrong, &d),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(-Sign::Plus, Sign::Minus);
        assert!(Sign::from_value(0).is_err());
    }
}
