//! Exact rational linear algebra.

mod complex;
mod echelon;
mod forms;
mod matrix;

pub type Rational = num_rational::BigRational;

pub use complex::{homology_dims, CochainComplex, Cohomology, DegreeCohomology, GradedDims};
pub use echelon::{inverse, kernel, rank, rref, solve, Rref, Subspace};
pub use forms::{diagonalize, lagrangian_search, signature, LagrangianOutcome, DEFAULT_HEIGHT_BOUND};
pub use matrix::{axpy, q, q_frac, sparse_dot, to_dense, to_sparse, RationalMatrix, SparseVec};
