//! Signed rectangle decompositions of Boolean matrices and tensors.
//!
//! Every Boolean matrix of rank `r` is a `±1` combination of `O(r log r)`
//! all-ones rectangles. [`decompose`] builds such a decomposition from a
//! maximal independent column set, [`tensor`] extends it to higher-order
//! tensors, [`oracles`] computes exact signed rectangle rank, partition
//! number and largest monochromatic rectangle on small instances, and
//! [`setsys`] moves between signed decompositions and cross-intersecting
//! set families.

pub mod colsum;
pub mod decompose;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod io;
pub mod matrix;
pub mod oracles;
pub mod rank;
pub mod rect;
pub mod setsys;
pub mod tensor;

pub use colsum::{column_sum, is_independent, is_independent_with, ColumnSum, IndependenceConfig};
pub use decompose::{
    decompose_with, express_column, find_equal_sum_subsets, independent_set_bound_check,
    maximal_independent_columns, maximal_independent_columns_with, signed_rectangle_decomposition,
    CoefficientVector, ConstructiveDecomposition, DecomposeOptions, IndependentSet,
};
pub use error::{Error, Result};
pub use matrix::{BoolMatrix, IntMatrix};
pub use oracles::{
    exact_partition_number, exact_signed_rank, max_monochromatic_rectangle,
    MonochromaticRectangle, OracleResult, SearchBudget,
};
pub use rank::{exact_rank, ExactRank};
pub use rect::{
    evaluate_decomposition, rect_to_matrix, verify_decomposition, Rectangle, Sign,
    SignedDecomposition, SignedTerm,
};
pub use setsys::{
    ab_to_boolean, best_monochromatic_subfamilies, check_cross_intersecting, element_rectangles,
    family_to_matrix, rectangles_to_family, signed_to_cross_intersecting, IntersectionSpec,
    SetFamilyPair,
};
pub use tensor::{
    evaluate_tensor_decomposition, flatten, flattening_rank, maximal_independent_slices, slice,
    tensor_signed_decomposition, BoolTensor, PrimitiveTensor, SignedTensorDecomposition,
};
