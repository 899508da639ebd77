//! Exact brute-force values on small matrices: partitioning number,
//! signed rectangle rank and the largest monochromatic rectangle.
//!
//! Both minimisation searches count nodes against a [`SearchBudget`] rather
//! than wall-clock time, so results are reproducible. When the budget runs
//! out the result carries the best decomposition found and the proven
//! lower bound, with `exhausted == false`.

mod monochromatic;
mod partition;
mod signed;

pub use monochromatic::{max_monochromatic_rectangle, MonochromaticRectangle, MONO_SIDE_CAP};
pub use partition::{exact_partition_number, row_partition};
pub use signed::{exact_signed_rank, SIGNED_CANDIDATE_CAP};

use crate::rect::SignedDecomposition;

/// Node budget for the exact searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub nodes: u64,
}

impl SearchBudget {
    pub const fn nodes(nodes: u64) -> Self {
        Self { nodes }
    }

    pub const fn unlimited() -> Self {
        Self { nodes: u64::MAX }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { nodes: 20_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// The optimum when `exhausted`, otherwise the best upper bound found.
    pub value: usize,
    /// A decomposition of length `value`. Partition witnesses are all positive.
    pub witness: SignedDecomposition,
    /// `true` when `value` is proven optimal.
    pub exhausted: bool,
    /// Proven lower bound; equals `value` when exhausted.
    pub lower_bound: usize,
    /// Search nodes visited.
    pub nodes: u64,
}

pub(crate) struct NodeCounter {
    used: u64,
    limit: u64,
}

impl NodeCounter {
    pub(crate) fn new(budget: SearchBudget) -> Self {
        Self {
            used: 0,
            limit: budget.nodes,
        }
    }

    /// Counts one node; `false` once the budget is spent.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }
}
