//! Exact computations on finite-dimensional Lie algebras given by structure
//! constants: δ-derivation spaces, graded decompositions, transposed Poisson
//! structures and Hom-Lie checks, all over ℚ.
//!
//! The built-in catalog covers the Schrödinger algebra 𝒮ₙ and its
//! subalgebras 𝔰𝔩₂, 𝔥ₙ and 𝔰𝔬ₙ. Other algebras can be loaded from the text
//! format in [`format`].

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod derivation;
pub mod error;
pub mod format;
pub mod grading;
pub mod lie;
pub mod linalg;
pub mod map;
pub mod poisson;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod search;

pub use catalog::{build_catalog, build_schrodinger, standard_grading};
pub use derivation::{
    decompose_derivation_space, derivation_constraints, derivation_space, graded_components, is_delta_derivation,
    DerivationSpace,
};
pub use error::{Error, ParseError, Result};
pub use grading::{check_grading, Degree, Grading, GradingGroup};
pub use lie::LieAlgebra;
pub use linalg::{nullspace_basis, rref, solve_affine, SparseMatrix, Vector};
pub use map::LinearMap;
pub use poisson::{check_hom_lie, check_transposed_poisson, left_multiplication, Product, TransposedPoissonReport};
pub use report::{CheckReport, Violation};
pub use scalar::{format_scalar, parse_scalar, Scalar};
pub use search::{search_structures, ProductFamily, SearchResult, SearchStatus};
