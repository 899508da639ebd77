//! Constructive signed decomposition of a Boolean matrix.
//!
//! A greedy maximal independent column set `S` is built first. Every other
//! column `c` then makes `S ∪ {c}` dependent, so two disjoint subsets `A`,
//! `B ∋ c` share a column sum and `c = sum(A) - sum(B \ {c})`. Collecting the
//! columns with coefficient `+1` (resp. `-1`) on each `s ∈ S` gives one
//! positive and one negative rectangle per member of `S`, so at most `2|S|`
//! terms. Since `2^|S| <= (|S| + 1)^rank`, `|S|` is `O(r log r)`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;

use crate::colsum::{
    column_vectors, first_collision, for_each_subset_sum, signed_dependency,
    IndependenceConfig, Strategy, SumKey,
};
use crate::error::{check_index, Error, Result};
use crate::matrix::BoolMatrix;
use crate::rect::{Rectangle, SignedDecomposition, SignedTerm};

/// An independent set of columns, in the order they were admitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSet {
    columns: Vec<usize>,
    rows: usize,
    cols: usize,
}

impl IndependentSet {
    /// Wraps a column list without checking independence.
    pub fn new_unchecked(columns: Vec<usize>, rows: usize, cols: usize) -> Self {
        Self {
            columns,
            rows,
            cols,
        }
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.columns.contains(&c)
    }

    pub fn source_dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

/// Coefficients in `{-1, 0, 1}` on the members of an independent set,
/// stored in the set's order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientVector {
    coeffs: Vec<(usize, i8)>,
}

impl CoefficientVector {
    fn zero(set: &IndependentSet) -> Self {
        Self {
            coeffs: set.columns.iter().map(|&c| (c, 0)).collect(),
        }
    }

    fn unit(set: &IndependentSet, at: usize) -> Self {
        let mut v = Self::zero(set);
        v.set(at, 1);
        v
    }

    fn set(&mut self, column: usize, value: i8) {
        if let Some(slot) = self.coeffs.iter_mut().find(|(c, _)| *c == column) {
            slot.1 = value;
        }
    }

    pub fn get(&self, column: usize) -> Option<i8> {
        self.coeffs
            .iter()
            .find(|(c, _)| *c == column)
            .map(|&(_, v)| v)
    }

    pub fn entries(&self) -> &[(usize, i8)] {
        &self.coeffs
    }

    /// Members of the set carrying coefficient `+1`.
    pub fn positive(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().filter(|e| e.1 == 1).map(|e| e.0)
    }

    /// Members of the set carrying coefficient `-1`.
    pub fn negative(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().filter(|e| e.1 == -1).map(|e| e.0)
    }
}

fn validate_order(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::Validation(format!(
            "column order has {} entries, expected a permutation of {n} columns",
            order.len()
        )));
    }
    for &j in order {
        check_index("column", j, n)?;
        if std::mem::replace(&mut seen[j], true) {
            return Err(Error::Validation(format!(
                "column order repeats column {j}"
            )));
        }
    }
    Ok(())
}

/// Greedy maximal independent set scanning columns in ascending order.
pub fn maximal_independent_columns(matrix: &BoolMatrix) -> Result<IndependentSet> {
    maximal_independent_columns_with(matrix, None, &IndependenceConfig::default())
}

/// Greedy maximal independent set scanning columns in `order`
/// (a permutation of all columns; ascending when `None`).
pub fn maximal_independent_columns_with(
    matrix: &BoolMatrix,
    order: Option<&[usize]>,
    config: &IndependenceConfig,
) -> Result<IndependentSet> {
    let n = matrix.cols();
    let default_order: Vec<usize>;
    let order = match order {
        Some(o) => {
            validate_order(o, n)?;
            o
        }
        None => {
            default_order = (0..n).collect();
            &default_order
        }
    };

    let vectors = column_vectors(matrix, &(0..n).collect::<Vec<_>>());
    let mut chosen: Vec<usize> = Vec::new();
    // All subset sums of `chosen`, maintained while the enumeration cap holds.
    let mut sums: HashSet<SumKey> = HashSet::from([vec![0; matrix.rows()]]);

    for &c in order {
        let col = &vectors[c];
        if col.iter().all(|&x| x == 0) || chosen.iter().any(|&s| vectors[s] == *col) {
            continue;
        }
        let admit = match config.admit(chosen.len() + 1)? {
            Strategy::Enumerate => {
                let shifted: Vec<SumKey> = sums
                    .iter()
                    .map(|s| s.iter().zip(col).map(|(a, b)| a + b).collect())
                    .collect();
                if shifted.iter().any(|s| sums.contains(s)) {
                    false
                } else {
                    sums.extend(shifted);
                    true
                }
            }
            Strategy::MeetInTheMiddle => {
                let mut cand: Vec<SumKey> = chosen.iter().map(|&s| vectors[s].clone()).collect();
                cand.push(col.clone());
                signed_dependency(&cand, matrix.rows()).is_none()
            }
        };
        if admit {
            chosen.push(c);
        }
    }
    Ok(IndependentSet::new_unchecked(chosen, matrix.rows(), n))
}

fn mask_members(mask: u64, members: &[usize]) -> Vec<usize> {
    members
        .iter()
        .enumerate()
        .filter(|&(b, _)| mask >> b & 1 == 1)
        .map(|(_, &c)| c)
        .collect()
}

fn check_set(matrix: &BoolMatrix, set: &IndependentSet) -> Result<()> {
    if set.source_dims() != (matrix.rows(), matrix.cols()) {
        return Err(Error::Dimension {
            expected: format!("{}x{}", matrix.rows(), matrix.cols()),
            found: format!("{}x{}", set.rows, set.cols),
        });
    }
    for &c in &set.columns {
        check_index("column", c, matrix.cols())?;
    }
    Ok(())
}

/// Two disjoint subsets `(A, B)` of `S ∪ {c}` with equal column sums and
/// `c ∈ B`, taken from the first collision when subsets of `S ∪ {c}` are
/// visited in ascending bitmask order (bit `k` is the `k`-th member of `S`,
/// `c` is the top bit).
pub fn find_equal_sum_subsets(
    matrix: &BoolMatrix,
    set: &IndependentSet,
    c: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    find_equal_sum_subsets_with(matrix, set, c, &IndependenceConfig::default())
}

pub fn find_equal_sum_subsets_with(
    matrix: &BoolMatrix,
    set: &IndependentSet,
    c: usize,
    config: &IndependenceConfig,
) -> Result<(Vec<usize>, Vec<usize>)> {
    check_set(matrix, set)?;
    check_index("column", c, matrix.cols())?;
    if set.contains(c) {
        return Err(Error::Logic(format!(
            "column {c} already belongs to the independent set"
        )));
    }
    let mut members = set.columns.clone();
    members.push(c);
    let c_bit = 1u64 << set.len();
    let vectors = column_vectors(matrix, &members);

    let (a_mask, b_mask) = match config.admit(members.len())? {
        Strategy::Enumerate => {
            let (x, y) = first_collision(&vectors, matrix.rows()).ok_or_else(|| {
                Error::Logic(format!(
                    "adding column {c} keeps the set independent; the set is not maximal"
                ))
            })?;
            (x & !y, y & !x)
        }
        Strategy::MeetInTheMiddle => {
            let w = signed_dependency(&vectors, matrix.rows()).ok_or_else(|| {
                Error::Logic(format!(
                    "adding column {c} keeps the set independent; the set is not maximal"
                ))
            })?;
            let pick = |v: i8| {
                w.iter()
                    .enumerate()
                    .filter(|&(_, &x)| x == v)
                    .fold(0u64, |m, (b, _)| m | 1 << b)
            };
            (pick(1), pick(-1))
        }
    };
    let (a_mask, b_mask) = if a_mask & c_bit != 0 {
        (b_mask, a_mask)
    } else {
        (a_mask, b_mask)
    };
    if b_mask & c_bit == 0 {
        return Err(Error::Logic(
            "collision avoids the new column; the set is not independent".into(),
        ));
    }
    Ok((mask_members(a_mask, &members), mask_members(b_mask, &members)))
}

/// Expresses columns over a fixed independent set, reusing one index of
/// its subset sums across calls.
pub struct ColumnExpander<'a> {
    matrix: &'a BoolMatrix,
    set: &'a IndependentSet,
    config: IndependenceConfig,
    vectors: Vec<SumKey>,
    /// Subset sum of `S` -> its (unique) bitmask. Empty above the enumeration cap.
    index: HashMap<SumKey, u64>,
}

impl<'a> ColumnExpander<'a> {
    pub fn new(
        matrix: &'a BoolMatrix,
        set: &'a IndependentSet,
        config: &IndependenceConfig,
    ) -> Result<Self> {
        check_set(matrix, set)?;
        let vectors = column_vectors(matrix, &set.columns);
        let mut index = HashMap::new();
        if config.admit(set.len() + 1)? == Strategy::Enumerate {
            index.reserve(1 << set.len());
            for_each_subset_sum(&vectors, matrix.rows(), |mask, sum| {
                index.insert(sum.to_vec(), mask);
                true
            });
            if index.len() != 1 << set.len() {
                return Err(Error::Validation(
                    "column set is not independent".into(),
                ));
            }
        }
        Ok(Self {
            matrix,
            set,
            config: *config,
            vectors,
            index,
        })
    }

    pub fn express(&self, c: usize) -> Result<CoefficientVector> {
        check_index("column", c, self.matrix.cols())?;
        if self.set.contains(c) {
            return Ok(CoefficientVector::unit(self.set, c));
        }
        let col: SumKey = column_vectors(self.matrix, &[c]).pop().expect("one column");
        if let Some(pos) = self.vectors.iter().position(|v| *v == col) {
            return Ok(CoefficientVector::unit(self.set, self.set.columns[pos]));
        }

        let (a, b) = if self.index.is_empty() && !self.set.is_empty() {
            find_equal_sum_subsets_with(self.matrix, self.set, c, &self.config)?
        } else {
            // Ascending X ⊆ S, first X with sum(X) + c = sum(Y).
            let mut hit = None;
            let mut probe = vec![0i32; self.matrix.rows()];
            for_each_subset_sum(&self.vectors, self.matrix.rows(), |x, sum| {
                for ((p, s), v) in probe.iter_mut().zip(sum).zip(&col) {
                    *p = s + v;
                }
                match self.index.get(&probe) {
                    Some(&y) => {
                        hit = Some((x, y));
                        false
                    }
                    None => true,
                }
            });
            let (x, y) = hit.ok_or_else(|| {
                Error::Logic(format!(
                    "column {c} has no signed representation; the set is not maximal"
                ))
            })?;
            let mut b = mask_members(x & !y, &self.set.columns);
            b.push(c);
            (mask_members(y & !x, &self.set.columns), b)
        };

        let mut coeffs = CoefficientVector::zero(self.set);
        for j in a {
            coeffs.set(j, 1);
        }
        for j in b.into_iter().filter(|&j| j != c) {
            coeffs.set(j, -1);
        }
        Ok(coeffs)
    }
}

/// Coefficients `α` with `column c = Σ_{s ∈ S} α_s · column s`.
pub fn express_column(
    matrix: &BoolMatrix,
    set: &IndependentSet,
    c: usize,
) -> Result<CoefficientVector> {
    ColumnExpander::new(matrix, set, &IndependenceConfig::default())?.express(c)
}

#[derive(Debug, Clone, Default)]
pub struct DecomposeOptions {
    /// Column scan order for the greedy set; ascending when `None`.
    pub order: Option<Vec<usize>>,
    pub independence: IndependenceConfig,
}

/// Full output of the constructive engine.
#[derive(Debug, Clone)]
pub struct ConstructiveDecomposition {
    pub independent: IndependentSet,
    /// One coefficient vector per column of the input.
    pub coefficients: Vec<CoefficientVector>,
    pub decomposition: SignedDecomposition,
}

pub fn signed_rectangle_decomposition(matrix: &BoolMatrix) -> Result<SignedDecomposition> {
    Ok(decompose_with(matrix, &DecomposeOptions::default())?.decomposition)
}

pub fn decompose_with(
    matrix: &BoolMatrix,
    options: &DecomposeOptions,
) -> Result<ConstructiveDecomposition> {
    let set = maximal_independent_columns_with(
        matrix,
        options.order.as_deref(),
        &options.independence,
    )?;
    let expander = ColumnExpander::new(matrix, &set, &options.independence)?;
    let coefficients = (0..matrix.cols())
        .map(|y| expander.express(y))
        .collect::<Result<Vec<_>>>()?;

    let mut terms = Vec::with_capacity(2 * set.len());
    for &c in set.columns() {
        let support: Vec<usize> = (0..matrix.rows()).filter(|&i| matrix.get(i, c)).collect();
        for (value, make) in [
            (1i8, SignedTerm::plus as fn(Rectangle) -> SignedTerm),
            (-1, SignedTerm::minus),
        ] {
            let cols: Vec<usize> = coefficients
                .iter()
                .enumerate()
                .filter(|(_, a)| a.get(c) == Some(value))
                .map(|(y, _)| y)
                .collect();
            if let Some(rect) = Rectangle::nonempty(support.clone(), cols) {
                terms.push(make(rect));
            }
        }
    }
    let decomposition = SignedDecomposition::new(matrix.rows(), matrix.cols(), terms)?;
    Ok(ConstructiveDecomposition {
        independent: set,
        coefficients,
        decomposition,
    })
}

/// `2^size <= (size + 1)^rank`, in exact integer arithmetic.
pub fn independent_set_bound_check(size: usize, rank: usize) -> bool {
    let lhs = BigUint::from(1u8) << size;
    let rhs = BigUint::from(size + 1).pow(rank as u32);
    lhs <= rhs
}

/// Largest `s` with `2^s <= (s + 1)^rank`. The admissible sizes form an
/// interval starting at 0, so the scan stops at the first failure.
pub fn independent_set_size_limit(rank: usize) -> usize {
    let mut s = 0;
    while independent_set_bound_check(s + 1, rank) {
        s += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colsum::{column_sum, is_independent};

    fn bm<const N: usize>(rows: &[[u8; N]]) -> BoolMatrix {
        BoolMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn greedy_set_examples() {
        let s = maximal_independent_columns(&BoolMatrix::identity(2).unwrap()).unwrap();
        assert_eq!(s.columns(), &[0, 1]);
        let s = maximal_independent_columns(&BoolMatrix::ones(2, 2).unwrap()).unwrap();
        assert_eq!(s.columns(), &[0]);
        let s = maximal_independent_columns(&bm(&[[0, 1], [0, 1]])).unwrap();
        assert_eq!(s.columns(), &[1]);
    }

    #[test]
    fn greedy_respects_order() {
        let m = bm(&[[1, 0, 1], [0, 1, 1]]);
        let s = maximal_independent_columns_with(&m, Some(&[2, 1, 0]), &Default::default())
            .unwrap();
        assert_eq!(s.columns(), &[2, 1]);
        assert!(maximal_independent_columns_with(&m, Some(&[0, 0, 1]), &Default::default())
            .is_err());
    }

    #[test]
    fn equal_sum_subsets_examples() {
        let m = bm(&[[1, 0, 1], [0, 1, 1]]);
        let s = IndependentSet::new_unchecked(vec![0, 1], 2, 3);
        assert_eq!(
            find_equal_sum_subsets(&m, &s, 2).unwrap(),
            (vec![0, 1], vec![2])
        );

        let dup = bm(&[[1, 0, 1], [1, 1, 1]]);
        let s = IndependentSet::new_unchecked(vec![0, 1], 2, 3);
        assert_eq!(find_equal_sum_subsets(&dup, &s, 2).unwrap(), (vec![0], vec![2]));

        let zero = bm(&[[1, 0, 0], [0, 1, 0]]);
        assert_eq!(
            find_equal_sum_subsets(&zero, &s, 2).unwrap(),
            (vec![], vec![2])
        );
    }

    #[test]
    fn equal_sum_subsets_rejects_independent_extension() {
        let m = BoolMatrix::identity(3).unwrap();
        let s = IndependentSet::new_unchecked(vec![0, 1], 3, 3);
        assert!(matches!(
            find_equal_sum_subsets(&m, &s, 2),
            Err(Error::Logic(_))
        ));
    }

    #[test]
    fn express_column_examples() {
        let m = bm(&[[1, 0, 1], [0, 1, 1]]);
        let s = IndependentSet::new_unchecked(vec![0, 1], 2, 3);
        let a = express_column(&m, &s, 2).unwrap();
        assert_eq!(a.entries(), &[(0, 1), (1, 1)]);

        let m = bm(&[[1, 0, 1], [1, 1, 0]]);
        let a = express_column(&m, &s, 2).unwrap();
        assert_eq!(a.entries(), &[(0, 1), (1, -1)]);

        let m = bm(&[[1, 0, 0], [0, 1, 0]]);
        let a = express_column(&m, &s, 2).unwrap();
        assert_eq!(a.entries(), &[(0, 0), (1, 0)]);

        let a = express_column(&m, &s, 1).unwrap();
        assert_eq!(a.entries(), &[(0, 0), (1, 1)]);
    }

    #[test]
    fn express_on_non_maximal_set_is_logic_error() {
        let m = BoolMatrix::identity(3).unwrap();
        let s = IndependentSet::new_unchecked(vec![0, 1], 3, 3);
        assert!(matches!(express_column(&m, &s, 2), Err(Error::Logic(_))));
    }

    #[test]
    fn expander_matches_direct_collision_search() {
        for bits in 0u64..(1 << 12) {
            let m = BoolMatrix::from_bits(3, 4, bits).unwrap();
            let s = maximal_independent_columns(&m).unwrap();
            for c in (0..4).filter(|c| !s.contains(*c)) {
                let (a, b) = find_equal_sum_subsets(&m, &s, c).unwrap();
                let coeffs = express_column(&m, &s, c).unwrap();
                let dup = s
                    .columns()
                    .iter()
                    .any(|&j| m.column(j) == m.column(c));
                if !dup {
                    for &j in &a {
                        assert_eq!(coeffs.get(j), Some(1));
                    }
                    for &j in b.iter().filter(|&&j| j != c) {
                        assert_eq!(coeffs.get(j), Some(-1));
                    }
                }
                assert_eq!(
                    column_sum(&m, &a).unwrap(),
                    column_sum(&m, &b).unwrap()
                );
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let j = BoolMatrix::ones(3, 4).unwrap();
        let d = signed_rectangle_decomposition(&j).unwrap();
        assert_eq!(d.terms(), &[SignedTerm::plus(Rectangle::full(3, 4).unwrap())]);

        let z = BoolMatrix::zeros(2, 3).unwrap();
        assert!(signed_rectangle_decomposition(&z).unwrap().is_empty());

        let l = bm(&[[1, 1], [1, 0]]);
        let d = signed_rectangle_decomposition(&l).unwrap();
        assert!(d.verify(&l).unwrap());
        assert!(d.len() <= 4);
    }

    #[test]
    fn greedy_set_is_independent_and_maximal() {
        for bits in 0u64..(1 << 9) {
            let m = BoolMatrix::from_bits(3, 3, bits).unwrap();
            let s = maximal_independent_columns(&m).unwrap();
            assert!(is_independent(&m, s.columns()).unwrap());
            for c in (0..3).filter(|c| !s.contains(*c)) {
                let mut ext = s.columns().to_vec();
                ext.push(c);
                assert!(!is_independent(&m, &ext).unwrap());
            }
        }
    }

    #[test]
    fn mitm_path_decomposes() {
        let cfg = IndependenceConfig {
            cap: 1,
            meet_in_the_middle: true,
            mitm_cap: 12,
        };
        let opts = DecomposeOptions {
            order: None,
            independence: cfg,
        };
        for bits in [0b1011_0110_1u64, 0b1_1111_1111, 0b0101_1010_1, 0b1000_0010_0] {
            let m = BoolMatrix::from_bits(3, 3, bits).unwrap();
            let out = decompose_with(&m, &opts).unwrap();
            assert!(out.decomposition.verify(&m).unwrap());
            let plain = maximal_independent_columns(&m).unwrap();
            assert_eq!(out.independent, plain);
        }
    }

    #[test]
    fn bound_check_examples() {
        assert!(independent_set_bound_check(0, 0));
        assert!(independent_set_bound_check(4, 2));
        assert!(!independent_set_bound_check(5, 1));
        assert_eq!(independent_set_size_limit(0), 0);
        assert_eq!(independent_set_size_limit(1), 1);
        // 2^5 = 32 <= 36 = 6^2 but 2^6 = 64 > 49 = 7^2
        assert_eq!(independent_set_size_limit(2), 5);
    }
}
