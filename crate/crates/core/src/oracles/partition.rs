use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;
use crate::rank::rank_of_entries;
use crate::rect::{mask_to_indices, Rectangle, SignedDecomposition, SignedTerm};

use super::{NodeCounter, OracleResult, SearchBudget};

/// Partition of the 1-cells grouping identical nonzero rows: each distinct
/// row pattern `P` gives the rectangle `{rows equal to P} x P`.
pub fn row_partition(matrix: &BoolMatrix) -> SignedDecomposition {
    let mut groups: Vec<(Vec<u8>, Vec<usize>)> = Vec::new();
    for i in 0..matrix.rows() {
        let row = matrix.row(i);
        if row.iter().all(|&v| v == 0) {
            continue;
        }
        match groups.iter_mut().find(|(p, _)| p == row) {
            Some((_, rows)) => rows.push(i),
            None => groups.push((row.to_vec(), vec![i])),
        }
    }
    let terms = groups
        .into_iter()
        .map(|(pattern, rows)| {
            let cols = (0..pattern.len()).filter(|&j| pattern[j] == 1).collect();
            SignedTerm::plus(Rectangle::new(rows, cols).expect("nonempty group"))
        })
        .collect();
    SignedDecomposition::new(matrix.rows(), matrix.cols(), terms).expect("in bounds")
}

fn transpose_decomposition(d: &SignedDecomposition) -> SignedDecomposition {
    let terms = d
        .terms()
        .iter()
        .map(|t| {
            SignedTerm::new(
                t.sign,
                Rectangle::new(t.rect.cols().to_vec(), t.rect.rows().to_vec()).expect("nonempty"),
            )
        })
        .collect();
    SignedDecomposition::new(d.cols(), d.rows(), terms).expect("in bounds")
}

struct PartitionSearch {
    m: usize,
    n: usize,
    best: Vec<(u64, u64)>,
    stack: Vec<(u64, u64)>,
    counter: NodeCounter,
    aborted: bool,
    scratch: Vec<i64>,
}

impl PartitionSearch {
    fn remaining_rank(&mut self, uncovered: &[u64]) -> usize {
        self.scratch.clear();
        for &row in uncovered {
            for j in 0..self.n {
                self.scratch.push((row >> j & 1) as i64);
            }
        }
        rank_of_entries(&self.scratch, self.m, self.n)
    }

    fn dfs(&mut self, uncovered: &mut [u64]) {
        if self.aborted {
            return;
        }
        if !self.counter.tick() {
            self.aborted = true;
            return;
        }
        let Some(i) = uncovered.iter().position(|&r| r != 0) else {
            if self.stack.len() < self.best.len() {
                self.best = self.stack.clone();
            }
            return;
        };
        if self.stack.len() + self.remaining_rank(uncovered) >= self.best.len() {
            return;
        }
        let j = uncovered[i].trailing_zeros() as usize;
        let j_bit = 1u64 << j;

        // Every rectangle holding (i, j) inside the uncovered cells. Cells
        // before (i, j) in row-major order are covered, so its rows are >= i
        // and its columns >= j.
        let lower: Vec<usize> = (i + 1..self.m)
            .filter(|&r| uncovered[r] & j_bit != 0)
            .collect();
        let mut candidates: Vec<(u64, u64)> = Vec::new();
        for sub in 0u64..(1 << lower.len()) {
            let mut rows = 1u64 << i;
            let mut common = uncovered[i];
            for (b, &r) in lower.iter().enumerate() {
                if sub >> b & 1 == 1 {
                    rows |= 1 << r;
                    common &= uncovered[r];
                }
            }
            let free = common & !j_bit;
            let mut s = free;
            loop {
                candidates.push((rows, s | j_bit));
                if s == 0 {
                    break;
                }
                s = (s - 1) & free;
            }
        }
        candidates.sort_by_key(|&(r, c)| {
            (
                std::cmp::Reverse(r.count_ones() * c.count_ones()),
                r,
                c,
            )
        });

        for (rows, cols) in candidates {
            for r in 0..self.m {
                if rows >> r & 1 == 1 {
                    uncovered[r] &= !cols;
                }
            }
            self.stack.push((rows, cols));
            self.dfs(uncovered);
            self.stack.pop();
            for r in 0..self.m {
                if rows >> r & 1 == 1 {
                    uncovered[r] |= cols;
                }
            }
            if self.aborted || self.stack.len() + 1 >= self.best.len() {
                return;
            }
        }
    }
}

/// Minimum number of cell-disjoint all-ones rectangles covering exactly
/// the 1-cells. Branches on the first uncovered 1-cell in row-major order
/// over every rectangle containing it, pruning with the exact rank of the
/// uncovered part (each rectangle has rank one).
pub fn exact_partition_number(matrix: &BoolMatrix, budget: SearchBudget) -> Result<OracleResult> {
    let (m, n) = (matrix.rows(), matrix.cols());
    if m > 64 || n > 64 {
        return Err(Error::ResourceLimit {
            what: "matrix side for exact partition search",
            actual: m.max(n),
            cap: 64,
        });
    }
    let rows_first = row_partition(matrix);
    let cols_first = transpose_decomposition(&row_partition(&matrix.transpose()));
    let upper = if cols_first.len() < rows_first.len() {
        cols_first
    } else {
        rows_first
    };
    let root_rank = crate::rank::exact_rank(matrix);

    let mut search = PartitionSearch {
        m,
        n,
        best: upper
            .terms()
            .iter()
            .map(|t| (t.rect.row_mask(), t.rect.col_mask()))
            .collect(),
        stack: Vec::new(),
        counter: NodeCounter::new(budget),
        aborted: false,
        scratch: Vec::with_capacity(m * n),
    };
    if root_rank < search.best.len() {
        let mut uncovered: Vec<u64> = (0..m).map(|i| matrix.row_mask(i)).collect();
        search.dfs(&mut uncovered);
    }

    let terms = search
        .best
        .iter()
        .map(|&(r, c)| {
            SignedTerm::plus(
                Rectangle::new(mask_to_indices(r), mask_to_indices(c)).expect("nonempty"),
            )
        })
        .collect();
    let witness = SignedDecomposition::new(m, n, terms)?;
    let value = witness.len();
    let exhausted = !search.aborted;
    debug_assert!(witness.verify(matrix).unwrap_or(false));
    Ok(OracleResult {
        value,
        witness,
        exhausted,
        lower_bound: if exhausted { value } else { root_rank },
        nodes: search.counter.used(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: &BoolMatrix) -> OracleResult {
        exact_partition_number(m, SearchBudget::default()).unwrap()
    }

    fn assert_partition(m: &BoolMatrix, r: &OracleResult) {
        let mut covered = vec![0u8; m.rows() * m.cols()];
        for t in r.witness.terms() {
            assert_eq!(t.sign, crate::rect::Sign::Plus);
            for &i in t.rect.rows() {
                for &j in t.rect.cols() {
                    assert!(m.get(i, j), "rectangle covers a 0-cell");
                    covered[i * m.cols() + j] += 1;
                }
            }
        }
        assert_eq!(covered.as_slice(), m.entries());
    }

    #[test]
    fn examples() {
        let j = BoolMatrix::ones(3, 3).unwrap();
        assert_eq!(p(&j).value, 1);
        let i3 = BoolMatrix::identity(3).unwrap();
        let r = p(&i3);
        assert_eq!((r.value, r.exhausted), (3, true));
        let l = BoolMatrix::from_rows(&[[1, 1], [1, 0]]).unwrap();
        let r = p(&l);
        assert_eq!(r.value, 2);
        assert_partition(&l, &r);
        let z = BoolMatrix::zeros(2, 2).unwrap();
        let r = p(&z);
        assert_eq!(r.value, 0);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn complement_identity_4() {
        // J - I_4 has full rank 4 and partitions into 4 rows.
        let m = BoolMatrix::from_fn(4, 4, |i, j| i != j).unwrap();
        let r = p(&m);
        assert_eq!(r.value, 4);
        assert_partition(&m, &r);
    }

    #[test]
    fn witnesses_are_partitions() {
        for bits in (0u64..(1 << 16)).step_by(97) {
            let m = BoolMatrix::from_bits(4, 4, bits).unwrap();
            let r = p(&m);
            assert!(r.exhausted);
            assert_partition(&m, &r);
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // Rank 5 < 6 distinct rows forces a search.
        let m = BoolMatrix::parse_text("110000\n011000\n001100\n000110\n000011\n100001\n")
            .unwrap();
        let r = exact_partition_number(&m, SearchBudget::nodes(1)).unwrap();
        assert!(!r.exhausted);
        assert!(r.lower_bound <= r.value);
        assert!(r.witness.verify(&m).unwrap());
        let full = p(&m);
        assert!(full.exhausted);
        assert!(full.value <= r.value);
    }
}
