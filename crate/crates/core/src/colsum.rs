//! Column sums and independent column sets.
//!
//! A set of columns is independent when its `2^k` subsets have pairwise
//! distinct column sums. Equivalently, no nonzero coefficient vector in
//! `{-1, 0, 1}^k` combines the columns to zero.

use std::collections::HashMap;

use crate::error::{check_index, Error, Result};
use crate::matrix::BoolMatrix;

/// Entrywise sum of a set of columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColumnSum(Vec<u32>);

impl ColumnSum {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

pub fn column_sum(matrix: &BoolMatrix, cols: &[usize]) -> Result<ColumnSum> {
    for &j in cols {
        check_index("column", j, matrix.cols())?;
    }
    let sums = (0..matrix.rows())
        .map(|i| cols.iter().map(|&j| u32::from(matrix.get(i, j))).sum())
        .collect();
    Ok(ColumnSum(sums))
}

/// Limits for independence testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependenceConfig {
    /// Largest set checked by direct subset-sum enumeration.
    pub cap: usize,
    /// Fall back to the meet-in-the-middle search above `cap`.
    pub meet_in_the_middle: bool,
    /// Largest set the meet-in-the-middle search accepts.
    pub mitm_cap: usize,
}

impl Default for IndependenceConfig {
    fn default() -> Self {
        Self {
            cap: 24,
            meet_in_the_middle: false,
            mitm_cap: 36,
        }
    }
}

impl IndependenceConfig {
    pub fn with_cap(cap: usize) -> Self {
        Self {
            cap,
            ..Self::default()
        }
    }

    pub(crate) fn admit(&self, size: usize) -> Result<Strategy> {
        if size <= self.cap {
            Ok(Strategy::Enumerate)
        } else if self.meet_in_the_middle && size <= self.mitm_cap {
            Ok(Strategy::MeetInTheMiddle)
        } else {
            Err(Error::ResourceLimit {
                what: "independence set size",
                actual: size,
                cap: if self.meet_in_the_middle {
                    self.mitm_cap
                } else {
                    self.cap
                },
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Strategy {
    Enumerate,
    MeetInTheMiddle,
}

pub(crate) type SumKey = Vec<i32>;

pub(crate) fn column_vectors(matrix: &BoolMatrix, cols: &[usize]) -> Vec<SumKey> {
    cols.iter()
        .map(|&j| (0..matrix.rows()).map(|i| i32::from(matrix.get(i, j))).collect())
        .collect()
}

/// Visits every subset of `vectors` in ascending bitmask order (bit `k` is
/// `vectors[k]`) with its sum. Stops early when `visit` returns `false`.
pub(crate) fn for_each_subset_sum(
    vectors: &[SumKey],
    len: usize,
    mut visit: impl FnMut(u64, &[i32]) -> bool,
) {
    let k = vectors.len();
    debug_assert!(k < 64);
    let mut sum = vec![0i32; len];
    let mut mask: u64 = 0;
    loop {
        if !visit(mask, &sum) {
            return;
        }
        // Binary increment: clear trailing ones, set the next bit.
        let mut bit = 0;
        while bit < k && mask >> bit & 1 == 1 {
            for (s, v) in sum.iter_mut().zip(&vectors[bit]) {
                *s -= v;
            }
            mask &= !(1 << bit);
            bit += 1;
        }
        if bit == k {
            return;
        }
        for (s, v) in sum.iter_mut().zip(&vectors[bit]) {
            *s += v;
        }
        mask |= 1 << bit;
    }
}

/// First pair of subset masks `(earlier, later)` with equal sums, in
/// ascending enumeration order, or `None` when all sums are distinct.
pub(crate) fn first_collision(vectors: &[SumKey], len: usize) -> Option<(u64, u64)> {
    let mut seen: HashMap<SumKey, u64> = HashMap::with_capacity(1 << vectors.len().min(20));
    let mut found = None;
    for_each_subset_sum(vectors, len, |mask, sum| {
        if let Some(&earlier) = seen.get(sum) {
            found = Some((earlier, mask));
            false
        } else {
            seen.insert(sum.to_vec(), mask);
            true
        }
    });
    found
}

/// Searches for a nonzero `w` in `{-1,0,1}^k` with `sum_k w_k * vectors[k] = 0`
/// by matching signed sums of the two halves.
pub(crate) fn signed_dependency(vectors: &[SumKey], len: usize) -> Option<Vec<i8>> {
    let k = vectors.len();
    let (low, high) = vectors.split_at(k.div_ceil(2));

    // Signed sums of the low half, keyed by sum, remembering the first
    // coefficient vector reaching each sum and a nonzero one reaching zero.
    let mut table: HashMap<SumKey, Vec<i8>> = HashMap::new();
    let mut zero_witness: Option<Vec<i8>> = None;
    for_each_signed(low, len, |coeffs, sum| {
        let nonzero = coeffs.iter().any(|&c| c != 0);
        if nonzero && zero_witness.is_none() && sum.iter().all(|&s| s == 0) {
            zero_witness = Some(coeffs.to_vec());
        }
        table.entry(sum.to_vec()).or_insert_with(|| coeffs.to_vec());
    });
    if let Some(w) = zero_witness {
        let mut full = w;
        full.resize(k, 0);
        return Some(full);
    }

    let mut result = None;
    let mut negated = vec![0i32; len];
    for_each_signed_until(high, len, |coeffs, sum| {
        if coeffs.iter().all(|&c| c == 0) {
            return true;
        }
        for (n, s) in negated.iter_mut().zip(sum) {
            *n = -s;
        }
        if let Some(low_coeffs) = table.get(&negated) {
            let mut full = low_coeffs.clone();
            full.extend_from_slice(coeffs);
            result = Some(full);
            return false;
        }
        true
    });
    result
}

fn for_each_signed(vectors: &[SumKey], len: usize, mut visit: impl FnMut(&[i8], &[i32])) {
    for_each_signed_until(vectors, len, |c, s| {
        visit(c, s);
        true
    });
}

/// Visits all `3^k` coefficient vectors (base-3 counting over 0, 1, -1).
fn for_each_signed_until(
    vectors: &[SumKey],
    len: usize,
    mut visit: impl FnMut(&[i8], &[i32]) -> bool,
) {
    let k = vectors.len();
    let mut coeffs = vec![0i8; k];
    let mut sum = vec![0i32; len];
    loop {
        if !visit(&coeffs, &sum) {
            return;
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return;
            }
            let v = &vectors[pos];
            match coeffs[pos] {
                0 => {
                    coeffs[pos] = 1;
                    sum.iter_mut().zip(v).for_each(|(s, x)| *s += x);
                    break;
                }
                1 => {
                    coeffs[pos] = -1;
                    sum.iter_mut().zip(v).for_each(|(s, x)| *s -= 2 * x);
                    break;
                }
                _ => {
                    coeffs[pos] = 0;
                    sum.iter_mut().zip(v).for_each(|(s, x)| *s += x);
                    pos += 1;
                }
            }
        }
    }
}

fn normalized(matrix: &BoolMatrix, cols: &[usize]) -> Result<Vec<usize>> {
    for &j in cols {
        check_index("column", j, matrix.cols())?;
    }
    let mut set = cols.to_vec();
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

/// Independence test with the default cap of 24 columns.
pub fn is_independent(matrix: &BoolMatrix, cols: &[usize]) -> Result<bool> {
    is_independent_with(matrix, cols, &IndependenceConfig::default())
}

pub fn is_independent_with(
    matrix: &BoolMatrix,
    cols: &[usize],
    config: &IndependenceConfig,
) -> Result<bool> {
    let set = normalized(matrix, cols)?;
    let strategy = config.admit(set.len())?;
    let vectors = column_vectors(matrix, &set);
    // Zero or repeated columns collide immediately.
    for (a, v) in vectors.iter().enumerate() {
        if v.iter().all(|&x| x == 0) || vectors[..a].contains(v) {
            return Ok(false);
        }
    }
    let dependent = match strategy {
        Strategy::Enumerate => first_collision(&vectors, matrix.rows()).is_some(),
        Strategy::MeetInTheMiddle => signed_dependency(&vectors, matrix.rows()).is_some(),
    };
    Ok(!dependent)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_sum_examples() {
        let i2 = BoolMatrix::identity(2).unwrap();
        assert_eq!(column_sum(&i2, &[0, 1]).unwrap().values(), &[1, 1]);
        assert_eq!(column_sum(&i2, &[]).unwrap().values(), &[0, 0]);
        let m = BoolMatrix::from_rows(&[[1, 0, 1], [1, 1, 0]]).unwrap();
        assert_eq!(column_sum(&m, &[0, 2]).unwrap().values(), &[2, 1]);
        assert!(matches!(
            column_sum(&m, &[3]),
            Err(Error::Bounds { .. })
        ));
    }

    #[test]
    fn independence_examples() {
        let i2 = BoolMatrix::identity(2).unwrap();
        assert!(is_independent(&i2, &[0, 1]).unwrap());
        assert!(is_independent(&i2, &[]).unwrap());
        let j = BoolMatrix::ones(2, 2).unwrap();
        assert!(!is_independent(&j, &[0, 1]).unwrap());
        let z = BoolMatrix::from_rows(&[[0, 1], [0, 1]]).unwrap();
        assert!(!is_independent(&z, &[0]).unwrap());
        // c3 = c1 + c2
        let m = BoolMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]).unwrap();
        assert!(!is_independent(&m, &[0, 1, 2]).unwrap());
        assert!(is_independent(&m, &[0, 2]).unwrap());
    }

    #[test]
    fn cap_is_enforced_and_named() {
        let m = BoolMatrix::identity(5).unwrap();
        let cfg = IndependenceConfig::with_cap(3);
        match is_independent_with(&m, &[0, 1, 2, 3], &cfg) {
            Err(Error::ResourceLimit { cap, actual, .. }) => {
                assert_eq!(cap, 3);
                assert_eq!(actual, 4);
            }
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn meet_in_the_middle_agrees_with_enumeration() {
        let cfg = IndependenceConfig {
            cap: 0,
            meet_in_the_middle: true,
            mitm_cap: 10,
        };
        for bits in 0u64..(1 << 9) {
            let m = BoolMatrix::from_bits(3, 3, bits).unwrap();
            for set in 0u64..8 {
                let cols: Vec<usize> = (0..3).filter(|&b| set >> b & 1 == 1).collect();
                assert_eq!(
                    is_independent(&m, &cols).unwrap(),
                    is_independent_with(&m, &cols, &cfg).unwrap(),
                    "{m:?} {cols:?}"
                );
            }
        }
    }

    #[test]
    fn signed_dependency_witness_is_valid() {
        // c1 + c2 = c3 + c4 on a 2x4 matrix.
        let m = BoolMatrix::from_rows(&[[1, 0, 1, 0], [0, 1, 0, 1]]).unwrap();
        let v = column_vectors(&m, &[0, 1, 2, 3]);
        let w = signed_dependency(&v, 2).expect("dependent");
        assert!(w.iter().any(|&c| c != 0));
        for i in 0..2 {
            let s: i32 = w.iter().zip(&v).map(|(&c, col)| i32::from(c) * col[i]).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn subset_sums_in_ascending_order() {
        let v = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let mut seen = Vec::new();
        for_each_subset_sum(&v, 2, |mask, sum| {
            seen.push((mask, sum.to_vec()));
            true
        });
        assert_eq!(seen.len(), 8);
        for (mask, sum) in &seen {
            let expect: Vec<i32> = (0..2)
                .map(|i| (0..3).filter(|&b| mask >> b & 1 == 1).map(|b| v[b][i]).sum())
                .collect();
            assert_eq!(sum, &expect);
        }
        assert!(seen.windows(2).all(|w| w[0].0 < w[1].0));
        assert_eq!(first_collision(&v, 2), Some((3, 4)));
    }
}
