use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::BigRat;

/// Commutative ring arithmetic needed by the polynomial and series containers.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// An exact integral domain containing the rationals.
///
/// Implemented for [`BigRat`] (numeric path) and
/// [`ParamPoly`](super::ParamPoly) (symbolic path). Every construction in
/// the crate is written once against this trait.
pub trait Ring: Coeff + Send + Sync {
    fn from_rat(r: &BigRat) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&BigRat::from_integer(n.into()))
    }

    /// The rational value of a constant element.
    fn to_rat(&self) -> Option<BigRat>;

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;

    fn scale(&self, r: &BigRat) -> Self {
        self.clone() * Self::from_rat(r)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero for the zero element.
    fn rational_content(&self) -> BigRat;

    /// Whether the greatest term (graded-lex) has a positive coefficient.
    fn leading_positive(&self) -> bool;

    /// Rough size used to pick cheap pivots.
    fn weight(&self) -> usize {
        1
    }

    /// A non-constant common factor of all `items`, when one can be found
    /// without full multivariate factorization.
    fn common_factor(items: &[Self]) -> Option<Self> {
        let _ = items;
        None
    }

    /// GCD of two univariate polynomials (ascending coefficients) over this
    /// ring, if the ring is a field where Euclid applies.
    fn poly_gcd(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
        let _ = (a, b);
        None
    }
}

impl Ring for BigRat {
    fn from_rat(r: &BigRat) -> Self {
        r.clone()
    }

    fn to_rat(&self) -> Option<BigRat> {
        Some(self.clone())
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(self / divisor)
        }
    }

    fn scale(&self, r: &BigRat) -> Self {
        self * r
    }

    fn rational_content(&self) -> BigRat {
        self.abs()
    }

    fn leading_positive(&self) -> bool {
        self.is_positive()
    }

    fn poly_gcd(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
        Some(super::rational::univariate_gcd(a, b))
    }
}
