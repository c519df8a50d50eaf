//! Exact arithmetic substrate: rationals, parameter polynomials, fractions
//! and fraction-free linear solving.

mod fraction;
mod param_poly;
pub mod rational;
mod ring;
mod solve;

pub use fraction::{Fraction, ParamFraction};
pub use param_poly::{poly_gcd, poly_normalize, Monomial, ParamPoly, Symbol, SYMBOL_COUNT};
pub use rational::parse_rational;
pub use ring::{Coeff, Ring};
pub use solve::{solve_fraction_free, Solution};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("gcd undefined")]
    GcdUndefined,
    #[error("polynomial is not univariate in a single symbol")]
    NotUnivariate,
    #[error("no solution")]
    NoSolution,
    #[error("matrix is not square ({rows}x{cols}) or right-hand side has wrong length")]
    NotSquare { rows: usize, cols: usize },
    #[error("inexact division")]
    InexactDivision,
    #[error("zero denominator")]
    ZeroDenominator,
}
