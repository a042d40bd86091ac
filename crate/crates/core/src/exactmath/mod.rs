//! Exact arithmetic over the Gaussian rationals: scalars, sparse multivariate
//! polynomials and reduced rational functions in a fixed variable set.

mod gcd;
mod parse;
mod poly;
mod ratfunc;
mod scalar;
mod serde_impls;
mod unipoly;
mod var;

pub use gcd::{gcd, gcd_many, lcm};
pub use parse::{parse_poly, parse_ratfunc};
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use scalar::Scalar;
pub use unipoly::UniPoly;
pub use var::{Var, NVARS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the given point")]
    DenominatorVanishes,
    #[error("no finite limit")]
    NoFiniteLimit,
    #[error("variable `{0}` has no value")]
    MissingVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input too large: {0}")]
    TooLarge(String),
}
