use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::ring::Ring;
use super::{BigRat, ExactError, ParamPoly};

/// Quotient of two ring elements with a nonzero denominator.
///
/// Equality is decided by cross-multiplication, so unreduced forms compare
/// equal to their reduced counterparts.
#[derive(Clone, Debug)]
pub struct Fraction<R> {
    num: R,
    den: R,
}

pub type ParamFraction = Fraction<ParamPoly>;

impl<R: Ring> Fraction<R> {
    pub fn new(num: R, den: R) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Fraction { num, den })
    }

    pub fn from_ring(num: R) -> Self {
        Fraction { num, den: R::one() }
    }

    pub fn num(&self) -> &R {
        &self.num
    }

    pub fn den(&self) -> &R {
        &self.den
    }

    pub fn into_parts(self) -> (R, R) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels rational content and any univariate common factor, and makes
    /// the denominator's greatest term positive.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return Fraction::from_ring(R::zero());
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if let Some(g) = R::common_factor(&[num.clone(), den.clone()]) {
            if let (Some(n), Some(d)) = (num.exact_div(&g), den.exact_div(&g)) {
                num = n;
                den = d;
            }
        }
        let mut c = den.rational_content();
        if !den.leading_positive() {
            c = -c;
        }
        let inv = c.recip();
        Fraction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// The ring element when the denominator divides the numerator.
    pub fn to_ring(&self) -> Option<R> {
        self.num.exact_div(&self.den)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Fraction::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        Fraction {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }
}

impl<R: Ring> PartialEq for Fraction<R> {
    fn eq(&self, other: &Self) -> bool {
        self.num.clone() * other.den.clone() == other.num.clone() * self.den.clone()
    }
}

impl<R: Ring> Add for Fraction<R> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Fraction {
                num: self.num + rhs.num,
                den: self.den,
            };
        }
        Fraction {
            num: self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            den: self.den * rhs.den,
        }
    }
}

impl<R: Ring> Sub for Fraction<R> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for Fraction<R> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Fraction {
            num: self.num * rhs.num,
            den: self.den * rhs.den,
        }
    }
}

impl<R: Ring> Div for Fraction<R> {
    type Output = Self;

    /// Panics on division by zero; use [`Fraction::recip`] to handle it.
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.num.is_zero(), "fraction division by zero");
        Fraction {
            num: self.num * rhs.den,
            den: self.den * rhs.num,
        }
    }
}

impl<R: Ring> Neg for Fraction<R> {
    type Output = Self;

    fn neg(self) -> Self {
        Fraction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<R: Ring> Zero for Fraction<R> {
    fn zero() -> Self {
        Fraction::from_ring(R::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<R: Ring> One for Fraction<R> {
    fn one() -> Self {
        Fraction::from_ring(R::one())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Fraction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
