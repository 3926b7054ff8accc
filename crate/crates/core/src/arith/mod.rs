//! Exact rational numbers and multivariate polynomials over them.

mod poly;
mod rational;

pub use poly::{Assignment, IndexPolynomial, Monomial};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("invalid rational literal `{0}` (expected p or p/q)")]
    Parse(String),
}
