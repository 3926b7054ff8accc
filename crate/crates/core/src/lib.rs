//! Exact second cohomology of integer-graded Lie algebras with polynomial
//! structure constants.
//!
//! The pipeline: an [`AlgebraSpec`] (hand-built or parsed from `.lie` text)
//! is bound to rational parameters as an [`Algebra`]; the cocycle engine
//! truncates the basis to an index window, assembles the cocycle
//! constraints degree by degree as a sparse rational system, and compares
//! the cocycle space with the coboundary space on core coordinates.

pub mod algebra;
pub mod arith;
pub mod cocycle;
pub mod dsl;
pub mod linalg;

pub use algebra::{Algebra, AlgebraError, AlgebraSpec, BasisElement, FamilyId, Parameters};
pub use arith::{ArithError, IndexPolynomial, Rational};
pub use cocycle::{
    h2, known_registry, predicted_dim, CocycleAssignment, CocycleError, H2Report, KnownCocycle, Window,
};
pub use linalg::{SparseMatrix, VectorBasis};
