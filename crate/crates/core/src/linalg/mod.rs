//! Exact linear algebra over ℚ.
//!
//! Systems with rational coefficients have the same rank over ℚ and ℂ, so a
//! rational kernel basis is also a basis of the complex solution space.
//! Nothing here needs an algebraically closed field.

mod echelon;
mod sparse;
mod vector;

pub use echelon::{nullspace_basis, rank, rref, solve_affine, Echelon};
pub use sparse::SparseMatrix;
pub use vector::Vector;
