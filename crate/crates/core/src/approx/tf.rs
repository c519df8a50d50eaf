use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::ApproxError;
use crate::exact::{BigRat, Fraction, ParamPoly, Ring, Symbol};

/// Ratio of two polynomials in `s` with a nonzero denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferFunction<R> {
    num: Poly<R>,
    den: Poly<R>,
}

impl<R: Ring> TransferFunction<R> {
    pub fn new(num: Poly<R>, den: Poly<R>) -> Result<Self, ApproxError> {
        if den.is_zero() {
            return Err(ApproxError::ZeroDenominator);
        }
        Ok(TransferFunction { num, den })
    }

    pub fn from_coeffs(num: Vec<R>, den: Vec<R>) -> Result<Self, ApproxError> {
        Self::new(Poly::new(num), Poly::new(den))
    }

    pub fn constant(c: R) -> Self {
        TransferFunction {
            num: Poly::constant(c),
            den: Poly::constant(R::one()),
        }
    }

    pub fn num(&self) -> &Poly<R> {
        &self.num
    }

    pub fn den(&self) -> &Poly<R> {
        &self.den
    }

    pub fn into_parts(self) -> (Poly<R>, Poly<R>) {
        (self.num, self.den)
    }

    /// Equality as rational functions.
    pub fn equivalent(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn reciprocal(&self) -> Result<Self, ApproxError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        TransferFunction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return TransferFunction {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        TransferFunction {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn scale_gain(&self, r: &R) -> Self {
        TransferFunction {
            num: self.num.mul_scalar(r),
            den: self.den.clone(),
        }
    }

    /// `H(r·s)`.
    pub fn scale_variable(&self, r: &R) -> Self {
        TransferFunction {
            num: self.num.scale_variable(r),
            den: self.den.scale_variable(r),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Result<TransferFunction<S>, ApproxError> {
        TransferFunction::new(self.num.map(&f), self.den.map(&f))
    }

    /// Value at `s = x` as a fraction over the coefficient ring.
    pub fn evaluate(&self, x: &R) -> Result<Fraction<R>, ApproxError> {
        Fraction::new(self.num.eval(x), self.den.eval(x)).map_err(|_| ApproxError::PoleAt)
    }

    /// Cancels common powers of `s`, common factors the coefficient ring
    /// can find, and rational content; then makes the leading denominator
    /// coefficient positive.
    pub fn normalize(&self) -> Self {
        if self.num.is_zero() {
            return TransferFunction::constant(R::zero());
        }
        let shift = self.num.low_order().min(self.den.low_order());
        let mut num = self.num.shift_down(shift);
        let mut den = self.den.shift_down(shift);

        if let Some(g) = R::poly_gcd(num.coeffs(), den.coeffs()) {
            if g.len() > 1 {
                let g = Poly::new(g);
                num = poly_div_exact(&num, &g).unwrap_or(num);
                den = poly_div_exact(&den, &g).unwrap_or(den);
            }
        }

        loop {
            let all: Vec<R> = num.coeffs().iter().chain(den.coeffs()).cloned().collect();
            let Some(f) = R::common_factor(&all) else { break };
            let divided: Option<(Vec<R>, Vec<R>)> = (|| {
                let n = num.coeffs().iter().map(|c| c.exact_div(&f)).collect::<Option<_>>()?;
                let d = den.coeffs().iter().map(|c| c.exact_div(&f)).collect::<Option<_>>()?;
                Some((n, d))
            })();
            match divided {
                Some((n, d)) => {
                    num = Poly::new(n);
                    den = Poly::new(d);
                }
                None => break,
            }
        }

        while let Some(f) = whole_coefficient_factor(&num, &den) {
            let divide = |p: &Poly<R>| Poly::new(p.coeffs().iter().map(|c| c.exact_div(&f).unwrap()).collect());
            num = divide(&num);
            den = divide(&den);
        }

        let all: Vec<R> = num.coeffs().iter().chain(den.coeffs()).cloned().collect();
        let mut content = combined_content(&all);
        if !den.leading().leading_positive() {
            content = -content;
        }
        let inv = content.recip();
        TransferFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

/// A non-constant coefficient (primitive part) dividing every coefficient.
fn whole_coefficient_factor<R: Ring>(num: &Poly<R>, den: &Poly<R>) -> Option<R> {
    let all: Vec<&R> = num.coeffs().iter().chain(den.coeffs()).collect();
    let mut candidates: Vec<&R> = all
        .iter()
        .copied()
        .filter(|c| !c.is_zero() && c.to_rat().is_none())
        .collect();
    if candidates.len() < all.iter().filter(|c| !c.is_zero()).count() {
        return None;
    }
    candidates.sort_by_key(|c| c.weight());
    candidates.into_iter().find_map(|c| {
        let prim = c.scale(&c.rational_content().recip());
        all.iter()
            .all(|x| x.is_zero() || x.exact_div(&prim).is_some())
            .then_some(prim)
    })
}

fn combined_content<R: Ring>(items: &[R]) -> BigRat {
    use num_integer::Integer;
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for c in items {
        let r = c.rational_content();
        if r.is_zero() {
            continue;
        }
        num = num.gcd(r.numer());
        den = den.lcm(r.denom());
    }
    if num.is_zero() {
        BigRat::one()
    } else {
        BigRat::new(num, den)
    }
}

/// Exact polynomial division over the coefficient ring, `None` when it
/// leaves a remainder.
pub(crate) fn poly_div_exact<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Option<Poly<R>> {
    if b.is_zero() {
        return None;
    }
    let db = b.degree();
    let lead = b.leading();
    let mut r = a.coeffs().to_vec();
    if r.len() < b.coeffs().len() {
        return a.is_zero().then(Poly::zero);
    }
    let mut q = vec![R::zero(); r.len() - db];
    for shift in (0..q.len()).rev() {
        let top = r[shift + db].clone();
        if top.is_zero() {
            continue;
        }
        let f = top.exact_div(&lead)?;
        for (i, bi) in b.coeffs().iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - f.clone() * bi.clone();
        }
        q[shift] = f;
    }
    r.iter().all(Zero::is_zero).then(|| Poly::new(q))
}

impl TransferFunction<BigRat> {
    /// Scales so the leading denominator coefficient is 1.
    pub fn monic(&self) -> Self {
        let inv = self.den.leading().recip();
        TransferFunction {
            num: self.num.scale(&inv),
            den: self.den.scale(&inv),
        }
    }

    pub fn eval_rat(&self, x: &BigRat) -> Option<BigRat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn num_f64(&self) -> Vec<f64> {
        self.num.coeffs().iter().map(crate::exact::rational::to_f64).collect()
    }

    pub fn den_f64(&self) -> Vec<f64> {
        self.den.coeffs().iter().map(crate::exact::rational::to_f64).collect()
    }
}

impl TransferFunction<ParamPoly> {
    /// Substitutes the listed symbols with rationals. The result is numeric
    /// when every occurring symbol is covered.
    pub fn substitute(&self, assignment: &[(Symbol, BigRat)]) -> Self {
        TransferFunction {
            num: self.num.map(|c| c.evaluate(assignment)),
            den: self.den.map(|c| c.evaluate(assignment)),
        }
    }

    /// Numeric form once every symbol is substituted.
    pub fn to_numeric(&self) -> Option<TransferFunction<BigRat>> {
        let conv = |p: &Poly<ParamPoly>| -> Option<Poly<BigRat>> {
            Some(Poly::new(
                p.coeffs().iter().map(ParamPoly::constant_value).collect::<Option<_>>()?,
            ))
        };
        TransferFunction::new(conv(&self.num)?, conv(&self.den)?).ok()
    }

    pub fn from_numeric(tf: &TransferFunction<BigRat>) -> Self {
        TransferFunction {
            num: tf.num.map(|c| ParamPoly::constant(c.clone())),
            den: tf.den.map(|c| ParamPoly::constant(c.clone())),
        }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Vec::new();
        for c in self.num.coeffs().iter().chain(self.den.coeffs()) {
            for s in c.symbols() {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TransferFunction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
