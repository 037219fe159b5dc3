//! Exact scalars and linear algebra.

pub mod fp;
pub mod matrix;
pub mod reduce;
pub mod scalar;

pub use matrix::{invert, nullspace, solve_linear, LinearSolution, Matrix};
pub use reduce::{RowReducer, SparseVec, Subspace};
pub use scalar::{FieldSpec, Scalar};
