//! Exact canonical and dual canonical bases on tensor and wedge modules of the
//! infinite-rank quantum groups of types A, B and C, with the character and
//! Grothendieck-group layer built on top of them.
//!
//! Everything is exact: coefficients live in `Z[q, q^-1]`, half-integers are
//! stored doubled, and infinite expansions are computed inside a finite
//! window `|entries| < k` and certified by comparing windows `k` and `k + 1`.

pub mod barinv;
pub mod canbasis;
pub mod error;
pub mod exactpoly;
pub mod grothendieck;
pub mod par;
pub mod quantumrep;
pub mod superchar;
pub mod wedge;
pub mod weights;

pub use error::{Error, Result};
pub use exactpoly::{Int, LaurentPoly, SparseMatrix, SparseVector};
pub use par::Exec;
pub use weights::{Lattice, WeightTuple};
