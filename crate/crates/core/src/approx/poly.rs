use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::exact::{BigRat, Ring};

/// Dense univariate polynomial with ascending coefficients. Trailing zeros
/// are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// `c · s^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `g + h·s`.
    pub fn affine(g: R, h: R) -> Self {
        Poly::new(vec![g, h])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    /// Ascending coefficients padded with zeros to `len`.
    pub fn padded(&self, len: usize) -> Vec<R> {
        let mut v = self.coeffs.clone();
        if v.len() < len {
            v.resize(len, R::zero());
        }
        v
    }

    /// `s^n · p(1/s)` for `n >= degree`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v = self.padded(n + 1);
        v.reverse();
        Poly::new(v)
    }

    /// `p(r·s)`: coefficient `k` times `r^k`.
    pub fn scale_variable(&self, r: &R) -> Self {
        let mut pow = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * pow.clone());
            pow = pow * r.clone();
        }
        Poly::new(out)
    }

    /// `b^n · p((a/b)·s)`: coefficient `k` times `a^k b^(n-k)`.
    pub fn homogenize(&self, a: &R, b: &R, n: usize) -> Self {
        assert!(n >= self.degree() || self.is_zero());
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c.clone() * pow(a, k as u32) * pow(b, (n - k) as u32));
        }
        Poly::new(out)
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.scale(r)).collect())
    }

    pub fn mul_scalar(&self, r: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * r.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::constant(R::one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Number of trailing-zero coefficients at the low end (power of `s`
    /// dividing the polynomial).
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub(crate) fn shift_down(&self, k: usize) -> Self {
        Poly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }
}

fn pow<R: Ring>(r: &R, e: u32) -> R {
    (0..e).fold(R::one(), |acc, _| acc * r.clone())
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;

    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;

    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;

    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Poly::new(out)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;

    fn neg(self) -> Poly<R> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;

            fn $f(self, rhs: Poly<R>) -> Poly<R> {
                (&self).$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;

    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl<R: Ring + fmt::Display> Poly<R> {
    /// Descending-power rendering in the given variable.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains([' ', '+']) || (cs[1..].contains('-')) {
                format!("({cs})")
            } else {
                cs
            };
            parts.push(match k {
                0 => cs,
                1 if c.is_one() => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if c.is_one() => format!("{var}^{k}"),
                _ => format!("{cs}*{var}^{k}"),
            });
        }
        parts.join(" + ")
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("s"))
    }
}
