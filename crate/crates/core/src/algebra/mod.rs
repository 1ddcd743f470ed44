//! Exact arithmetic: scalars in ℚ(√5), sparse multivariate polynomials,
//! univariate polynomials, matrices and linear solving.

mod linsolve;
mod matrix;
mod parse;
mod poly;
mod scalar;
mod unipoly;

pub use linsolve::{row_echelon, solve, LinSolution};
pub use matrix::{PolyMatrix, ScalarMatrix};
pub use parse::{parse_poly, poly, ParseError};
pub use poly::{var_order, Monomial, MultiPoly};
pub use scalar::ExactScalar;
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("divisor does not divide the dividend exactly")]
    NotDivisible,
    #[error("relation is not monic in {0}")]
    NotMonic(String),
}
