//! Helpers around [`BigRat`]: parsing, conversion and dense univariate
//! Euclid over the rationals.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{BigRat, ExactError};

/// Parses `"p/q"`, integers, and decimals with an optional exponent
/// (`"0.6404"`, `"-2.5e-3"`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRat, ExactError> {
    let t = text.trim();
    let bad = || ExactError::Parse(format!("not a rational number: {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(ExactError::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRat::new(p, q));
    }

    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRat::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRat::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(n.into())
}

pub fn to_f64(r: &BigRat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double.
pub fn from_f64(x: f64) -> Option<BigRat> {
    BigRat::from_float(x)
}

fn trim(v: &mut Vec<BigRat>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Quotient and remainder of dense ascending polynomials over Q.
pub(crate) fn div_rem(a: &[BigRat], b: &[BigRat]) -> (Vec<BigRat>, Vec<BigRat>) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRat::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let factor = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &factor * bi;
        }
        q[shift] = factor;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

/// Monic GCD of two dense ascending polynomials over Q. Zero when both are
/// zero.
pub(crate) fn univariate_gcd(a: &[BigRat], b: &[BigRat]) -> Vec<BigRat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}

/// Renders a rational with about `digits` significant digits, plain
/// notation for moderate magnitudes and scientific otherwise.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    if (-4..15).contains(&magnitude) {
        let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
        let s = format!("{value:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".to_string()
        } else {
            s
        }
    } else {
        format!("{:.*e}", digits.saturating_sub(1), value)
    }
}
