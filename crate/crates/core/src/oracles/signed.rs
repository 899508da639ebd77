use crate::decompose::signed_rectangle_decomposition;
use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;
use crate::rank::{exact_rank, rank_of_entries};
use crate::rect::{mask_to_indices, Rectangle, Sign, SignedDecomposition, SignedTerm};

use super::partition::row_partition;
use super::{NodeCounter, OracleResult, SearchBudget};

/// Largest number of distinct rectangles the signed search will branch over.
pub const SIGNED_CANDIDATE_CAP: usize = 1 << 16;

#[derive(Clone, Copy, PartialEq, Eq)]
struct Candidate {
    rows: u64,
    cols: u64,
    sign: i64,
}

struct SignedSearch {
    m: usize,
    n: usize,
    candidates: Vec<Candidate>,
    residual: Vec<i64>,
    stack: Vec<Candidate>,
    counter: NodeCounter,
    aborted: bool,
}

enum Outcome {
    Found,
    Refuted,
}

impl SignedSearch {
    fn apply(&mut self, c: Candidate, factor: i64) {
        let delta = -c.sign * factor;
        for i in 0..self.m {
            if c.rows >> i & 1 == 0 {
                continue;
            }
            for j in 0..self.n {
                if c.cols >> j & 1 == 1 {
                    self.residual[i * self.n + j] += delta;
                }
            }
        }
    }

    /// The residual as a single signed rectangle, if it is one.
    fn residual_as_rectangle(&self) -> Option<Candidate> {
        let mut sign = 0;
        let (mut rows, mut cols) = (0u64, 0u64);
        for i in 0..self.m {
            for j in 0..self.n {
                let v = self.residual[i * self.n + j];
                if v == 0 {
                    continue;
                }
                if v.abs() != 1 || (sign != 0 && v != sign) {
                    return None;
                }
                sign = v;
                rows |= 1 << i;
                cols |= 1 << j;
            }
        }
        if sign == 0 {
            return None;
        }
        let full = (0..self.m).filter(|&i| rows >> i & 1 == 1).all(|i| {
            (0..self.n)
                .filter(|&j| cols >> j & 1 == 1)
                .all(|j| self.residual[i * self.n + j] == sign)
        });
        full.then_some(Candidate { rows, cols, sign })
    }

    fn dfs(&mut self, remaining: usize, start: usize) -> Outcome {
        if !self.counter.tick() {
            self.aborted = true;
            return Outcome::Refuted;
        }
        if self.residual.iter().all(|&v| v == 0) {
            return Outcome::Found;
        }
        if remaining == 0 {
            return Outcome::Refuted;
        }
        // Each rectangle moves an entry by at most one.
        if self.residual.iter().any(|v| v.unsigned_abs() as usize > remaining) {
            return Outcome::Refuted;
        }
        if remaining == 1 {
            return match self.residual_as_rectangle() {
                Some(c) => {
                    self.stack.push(c);
                    Outcome::Found
                }
                None => Outcome::Refuted,
            };
        }
        // Each rectangle changes the rank by at most one.
        if rank_of_entries(&self.residual, self.m, self.n) > remaining {
            return Outcome::Refuted;
        }
        for idx in start..self.candidates.len() {
            let c = self.candidates[idx];
            // +R and -R together cancel; never useful in a minimum.
            if self
                .stack
                .iter()
                .any(|s| s.rows == c.rows && s.cols == c.cols && s.sign != c.sign)
            {
                continue;
            }
            self.apply(c, 1);
            self.stack.push(c);
            if let Outcome::Found = self.dfs(remaining - 1, idx) {
                return Outcome::Found;
            }
            self.stack.pop();
            self.apply(c, -1);
            if self.aborted {
                return Outcome::Refuted;
            }
        }
        Outcome::Refuted
    }
}

fn to_decomposition(m: usize, n: usize, terms: &[Candidate]) -> Result<SignedDecomposition> {
    let terms = terms
        .iter()
        .map(|c| {
            let rect = Rectangle::new(mask_to_indices(c.rows), mask_to_indices(c.cols))?;
            Ok(SignedTerm::new(Sign::from_value(c.sign)?, rect))
        })
        .collect::<Result<Vec<_>>>()?;
    SignedDecomposition::new(m, n, terms)
}

/// Minimum `t` with `M = Σ_{k<t} ε_k R_k`, by iterative deepening on `t`
/// from the exact rank. Terms are chosen in non-decreasing
/// `(row mask, column mask, sign)` order; a branch is cut when the residual
/// has an entry larger in magnitude than the number of terms left or rank
/// exceeding it. The constructive decomposition and the row/column
/// partitions seed the upper bound.
pub fn exact_signed_rank(matrix: &BoolMatrix, budget: SearchBudget) -> Result<OracleResult> {
    let (m, n) = (matrix.rows(), matrix.cols());
    let count = if m >= 63 || n >= 63 {
        usize::MAX
    } else {
        ((1usize << m) - 1).saturating_mul((1usize << n) - 1)
    };
    if count > SIGNED_CANDIDATE_CAP {
        return Err(Error::ResourceLimit {
            what: "rectangle count for exact signed search",
            actual: count,
            cap: SIGNED_CANDIDATE_CAP,
        });
    }

    let mut upper = row_partition(matrix);
    let by_cols = row_partition(&matrix.transpose());
    if by_cols.len() < upper.len() {
        let terms = by_cols
            .terms()
            .iter()
            .map(|t| {
                SignedTerm::new(
                    t.sign,
                    Rectangle::new(t.rect.cols().to_vec(), t.rect.rows().to_vec())
                        .expect("nonempty"),
                )
            })
            .collect();
        upper = SignedDecomposition::new(m, n, terms)?;
    }
    if let Ok(constructive) = signed_rectangle_decomposition(matrix) {
        if constructive.len() < upper.len() {
            upper = constructive;
        }
    }

    let rank = exact_rank(matrix);
    let mut candidates = Vec::with_capacity(2 * count);
    for rows in 1u64..(1 << m) {
        for cols in 1u64..(1 << n) {
            candidates.push(Candidate { rows, cols, sign: 1 });
            candidates.push(Candidate { rows, cols, sign: -1 });
        }
    }
    let mut search = SignedSearch {
        m,
        n,
        candidates,
        residual: matrix.entries().iter().map(|&v| i64::from(v)).collect(),
        stack: Vec::new(),
        counter: NodeCounter::new(budget),
        aborted: false,
    };

    for t in rank..upper.len() {
        search.stack.clear();
        if let Outcome::Found = search.dfs(t, 0) {
            let witness = to_decomposition(m, n, &search.stack)?;
            debug_assert!(witness.verify(matrix).unwrap_or(false));
            return Ok(OracleResult {
                value: witness.len(),
                lower_bound: witness.len(),
                witness,
                exhausted: true,
                nodes: search.counter.used(),
            });
        }
        if search.aborted {
            return Ok(OracleResult {
                value: upper.len(),
                witness: upper,
                exhausted: false,
                lower_bound: t,
                nodes: search.counter.used(),
            });
        }
    }
    Ok(OracleResult {
        value: upper.len(),
        lower_bound: upper.len(),
        witness: upper,
        exhausted: true,
        nodes: search.counter.used(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ur(m: &BoolMatrix) -> OracleResult {
        let r = exact_signed_rank(m, SearchBudget::default()).unwrap();
        assert!(r.witness.verify(m).unwrap());
        assert_eq!(r.witness.len(), r.value);
        r
    }

    #[test]
    fn examples() {
        assert_eq!(ur(&BoolMatrix::ones(2, 2).unwrap()).value, 1);
        let l = BoolMatrix::from_rows(&[[1, 1], [1, 0]]).unwrap();
        assert_eq!(ur(&l).value, 2);
        assert_eq!(ur(&BoolMatrix::identity(2).unwrap()).value, 2);
        let z = BoolMatrix::zeros(2, 3).unwrap();
        let r = ur(&z);
        assert_eq!((r.value, r.exhausted), (0, true));
    }

    #[test]
    fn identity_four() {
        let r = ur(&BoolMatrix::identity(4).unwrap());
        assert_eq!((r.value, r.exhausted), (4, true));
    }

    #[test]
    fn complement_identity_three() {
        // Rank 3 meets the three-row partition.
        let m = BoolMatrix::from_fn(3, 3, |i, j| i != j).unwrap();
        let r = ur(&m);
        assert_eq!(r.value, 3);
    }

    #[test]
    fn budget_exhaustion_keeps_bounds() {
        let m = BoolMatrix::parse_text("1100\n0110\n0011\n1001\n").unwrap();
        let r = exact_signed_rank(&m, SearchBudget::nodes(3)).unwrap();
        assert!(!r.exhausted);
        assert!(r.lower_bound <= r.value);
        assert!(r.witness.verify(&m).unwrap());
    }

    #[test]
    fn oversized_input_is_rejected() {
        let m = BoolMatrix::ones(9, 9).unwrap();
        assert!(matches!(
            exact_signed_rank(&m, SearchBudget::default()),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
