//! Integer-graded Lie algebras with polynomial structure constants:
//! presentations, bracket evaluation and Jacobi verification.

mod bound;
mod jacobi;
mod spec;

pub use bound::{Algebra, LinearCombination, MuClass, Parameters};
pub use jacobi::{
    check_jacobi_symbolic, check_jacobi_window, jacobiator, JacobiWindowReport, JacobiWitness,
    SymbolicJacobiReport, SymbolicResidual,
};
pub use spec::{
    AlgebraSpec, BasisElement, BracketRule, Family, FamilyId, INDEX_FIRST, INDEX_SECOND, INDEX_THIRD,
    RESERVED_NAMES,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("`{0}` is reserved for index symbols")]
    ReservedName(String),
    #[error("parameter `{0}` declared twice")]
    DuplicateParameter(String),
    #[error("family `{0}` declared twice")]
    DuplicateFamily(String),
    #[error("undeclared family `{0}`")]
    UnknownFamily(String),
    #[error("undeclared variable `{0}`")]
    UnknownVariable(String),
    #[error("rule [{left}, {right}] must be written in declaration order")]
    ReversedRule { left: String, right: String },
    #[error("rule [{left}, {right}] given twice")]
    DuplicateRule { left: String, right: String },
    #[error("rule [{0}, {0}] is not antisymmetric in its indices")]
    NotAntisymmetric(String),
    #[error("rule [{left}, {right}] does not preserve weights")]
    NotGraded { left: String, right: String },
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("unexpected parameter `{0}`")]
    UnexpectedParameter(String),
    #[error("mu=0 out of scope")]
    MuZeroOutOfScope,
    #[error("{0}")]
    Arith(String),
}
