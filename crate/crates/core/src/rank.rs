//! Exact rank over the rationals via fraction-free (Bareiss) elimination.
//!
//! Elimination runs in `i128` with checked arithmetic and restarts in
//! arbitrary precision if any intermediate overflows. Every intermediate
//! value is a minor of the input, so divisions are exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::{BoolMatrix, IntMatrix};

/// Matrices whose rank can be computed exactly.
pub trait ExactRank {
    fn exact_rank(&self) -> usize;
}

impl ExactRank for BoolMatrix {
    fn exact_rank(&self) -> usize {
        let entries: Vec<i64> = self.entries().iter().map(|&v| i64::from(v)).collect();
        rank_of_entries(&entries, self.rows(), self.cols())
    }
}

impl ExactRank for IntMatrix {
    fn exact_rank(&self) -> usize {
        rank_of_entries(self.entries(), self.rows(), self.cols())
    }
}

pub fn exact_rank<M: ExactRank + ?Sized>(matrix: &M) -> usize {
    matrix.exact_rank()
}

/// Rank of a row-major `m x n` integer matrix.
pub fn rank_of_entries(entries: &[i64], m: usize, n: usize) -> usize {
    debug_assert_eq!(entries.len(), m * n);
    let mut work: Vec<i128> = entries.iter().map(|&v| i128::from(v)).collect();
    match bareiss_i128(&mut work, m, n) {
        Some(r) => r,
        None => {
            let mut big: Vec<BigInt> = entries.iter().map(|&v| BigInt::from(v)).collect();
            bareiss_big(&mut big, m, n)
        }
    }
}

fn bareiss_i128(a: &mut [i128], m: usize, n: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| a[r * n + col] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..n {
                a.swap(p * n + j, rank * n + j);
            }
        }
        let pivot = a[rank * n + col];
        for i in rank + 1..m {
            let lead = a[i * n + col];
            for j in col + 1..n {
                let x = pivot.checked_mul(a[i * n + j])?;
                let y = lead.checked_mul(a[rank * n + j])?;
                let num = x.checked_sub(y)?;
                debug_assert_eq!(num % prev, 0);
                a[i * n + j] = num / prev;
            }
            a[i * n + col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_big(a: &mut [BigInt], m: usize, n: usize) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !a[r * n + col].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..n {
                a.swap(p * n + j, rank * n + j);
            }
        }
        let pivot = a[rank * n + col].clone();
        for i in rank + 1..m {
            let lead = a[i * n + col].clone();
            for j in col + 1..n {
                let num = &pivot * &a[i * n + j] - &lead * &a[rank * n + j];
                a[i * n + j] = num / &prev;
            }
            a[i * n + col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
