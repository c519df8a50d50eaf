//! Truncated formal power series over an exact ring.

use num_traits::One;

use crate::exact::rational::{int, rat};
use crate::exact::{BigRat, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("no inverse: constant term is not invertible")]
    NoInverse,
    #[error("composition undefined: inner series has a nonzero constant term")]
    CompositionUndefined,
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
}

/// Coefficients `c_0 ..= c_n` of a series truncated at order `n`.
///
/// The order is explicit: trailing zeros are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<R> {
    coeffs: Vec<R>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    /// `1 / a`; `b` only fixes the order.
    Reciprocal,
    /// `a(b(w))`.
    Compose,
}

impl<R: Ring> PowerSeries<R> {
    /// Builds a series from at least one coefficient.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least c_0");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::new(vec![R::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = R::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, R::zero());
        PowerSeries::new(c)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> PowerSeries<S> {
        PowerSeries::new(self.coeffs.iter().map(f).collect())
    }

    /// Coefficient-wise multiplication by `r^k`, i.e. the series in `r·w`.
    pub fn rescale(&self, r: &R) -> Self {
        let mut pow = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * pow.clone());
            pow = pow * r.clone();
        }
        PowerSeries::new(out)
    }

    pub fn scale(&self, r: &R) -> Self {
        self.map(|c| c.clone() * r.clone())
    }

    fn check_order(&self, other: &Self) -> Result<usize, SeriesError> {
        if self.order() == other.order() {
            Ok(self.order())
        } else {
            Err(SeriesError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(PowerSeries::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.check_order(other)?;
        Ok(self.mul_trunc(other, n))
    }

    fn mul_trunc(&self, other: &Self, n: usize) -> Self {
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        PowerSeries::new(out)
    }

    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        let inv0 = R::one().exact_div(a0).ok_or(SeriesError::NoInverse)?;
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = R::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc + self.coeffs[j].clone() * out[k - j].clone();
                }
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(PowerSeries::new(out))
    }

    /// `self(inner(w))` truncated to the common order.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        let n = self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::CompositionUndefined);
        }
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_trunc(inner, n);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }
}

pub fn series_combine<R: Ring>(
    a: &PowerSeries<R>,
    b: &PowerSeries<R>,
    op: SeriesOp,
) -> Result<PowerSeries<R>, SeriesError> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Reciprocal => {
            a.check_order(b)?;
            a.reciprocal()
        }
        SeriesOp::Compose => a.compose(b),
    }
}

/// Generalized binomial series of `(1 + w)^exponent`.
pub fn binomial_series<R: Ring>(exponent: &R, n: usize) -> PowerSeries<R> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(R::one());
    for k in 1..=n {
        let factor = exponent.clone() - R::from_int(k as i64 - 1);
        let next = (out[k - 1].clone() * factor).scale(&rat(1, k as i64));
        out.push(next);
    }
    PowerSeries::new(out)
}

/// `exp(w)`: coefficients `1/k!`.
pub fn exp_series<R: Ring>(n: usize) -> PowerSeries<R> {
    let mut c = BigRat::one();
    let mut out = vec![R::one()];
    for k in 1..=n {
        c /= int(k as i64);
        out.push(R::from_rat(&c));
    }
    PowerSeries::new(out)
}

/// `log(1 + w)`: coefficients `(-1)^(k+1)/k`.
pub fn log1p_series<R: Ring>(n: usize) -> PowerSeries<R> {
    let mut out = vec![R::zero()];
    for k in 1..=n {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out.push(R::from_rat(&rat(sign, k as i64)));
    }
    PowerSeries::new(out)
}

/// Series of `((1 + w) / (1 + x w))^alpha`, built as
/// `exp(alpha (log(1 + w) - log(1 + x w)))`.
pub fn leadlag_kernel_series<R: Ring>(alpha: &R, x: &R, n: usize) -> PowerSeries<R> {
    let log = log1p_series::<R>(n);
    let diff = log
        .add(&log.rescale(x).scale(&-R::one()))
        .expect("equal orders");
    let inner = diff.scale(alpha);
    exp_series::<R>(n).compose(&inner).expect("inner has zero constant term")
}
