//! Windowed second cohomology: cocycle unknowns on weight-matched pairs, the
//! cocycle identity as a sparse system per degree, coboundaries, core
//! projection with a stabilization check, and closed-form cocycles.

mod assignment;
mod known;
mod pairs;
mod report;
mod system;
mod verify;
mod window;

pub use assignment::{pair_key, parse_pair_key, CocycleAssignment, LinearFunctional};
pub use known::{find_known, known_registry, KnownCocycle, COEFFICIENT_VARIABLES};
pub use pairs::{enumerate_pairs, enumerate_triples, PairIndexing};
pub use report::{applicable_known, h2, match_known, predicted_dim, H2Report, KnownMatch, WindowDims};
pub use system::{
    assemble_constraints, coboundary_generators, coboundary_space, cocycle_space, constraint_row,
    ConstraintSystem, DegreeSystem,
};
pub use verify::{
    degree_reduce, grading_element, identity_residual, is_coboundary, nonzero_degree_triviality, verify_cocycle, verify_known,
    CocycleWitness, VerifyReport,
};
pub use window::Window;

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("degree must be nonzero")]
    DegreeZero,
    #[error("cocycle `{cocycle}` {condition}")]
    Integrality { cocycle: String, condition: String },
    #[error("cocycle `{cocycle}` not applicable: {reason}")]
    NotApplicable { cocycle: String, reason: String },
    #[error("not a cocycle: identity fails on ({triple}) with residual {residual}")]
    NotACocycle { triple: String, residual: String },
    #[error("no weight-0 element acts diagonally by weight")]
    NoGradingElement,
    #[error("assignment is not supported in a single degree")]
    NotHomogeneous,
    #[error("psi(x, x) must vanish")]
    DiagonalValue,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{0}")]
    Json(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[cfg(test)]
mod tests;
