//! Exact integer Laurent polynomials and sparse containers over them.

mod int;
mod poly;
mod sparse;

pub use int::Int;
pub use poly::LaurentPoly;
pub use sparse::{axpy, collect_column, Column, SparseMatrix, SparseVector};
