//! Exact scalars: rationals, multivariate polynomials, rational functions and
//! matrices over them.

mod matrix;
mod parse;
pub mod poly;
mod rat;
mod ratfunc;

pub use matrix::{linear_solve, FracMatrix, LinearSolveError};
pub use parse::{parse_poly, parse_ratfunc};
pub use poly::{gcd, resultant, Poly};
pub use rat::Rat;
pub use ratfunc::RatFunc;

use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MathError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable {0} has no assigned value")]
    Unassigned(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Evaluates a polynomial at a full rational assignment.
pub fn poly_eval(p: &Poly, at: &BTreeMap<String, Rat>) -> Result<Rat, MathError> {
    p.eval(at)
}

/// Convenience: `name -> value` map from string pairs.
pub fn assignment<'a>(pairs: impl IntoIterator<Item = (&'a str, Rat)>) -> BTreeMap<String, Rat> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
