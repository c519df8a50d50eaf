#![allow(dead_code)]

use foreal_core::approx::Poly;
use foreal_core::exact::parse_rational;
use foreal_core::{BigRat, ParamPoly, TransferFunction};

pub fn pp(s: &str) -> ParamPoly {
    s.parse().unwrap_or_else(|e| panic!("{s:?}: {e}"))
}

/// Polynomial in `s` from coefficients listed highest power first.
pub fn spoly(desc: &[&str]) -> Poly<ParamPoly> {
    Poly::new(desc.iter().rev().map(|c| pp(c)).collect())
}

pub fn rpoly(desc: &[&str]) -> Poly<BigRat> {
    Poly::new(desc.iter().rev().map(|c| parse_rational(c).unwrap()).collect())
}

pub fn q(s: &str) -> BigRat {
    parse_rational(s).unwrap()
}

/// `a/b == c/d` by cross-multiplication.
pub fn cross_equal(tf: &TransferFunction<ParamPoly>, num: &Poly<ParamPoly>, den: &Poly<ParamPoly>) -> bool {
    tf.num() * den == num * tf.den()
}

/// The rational `c` with `a == c * b`, if there is one.
pub fn scaled_equal(a: &Poly<ParamPoly>, b: &Poly<ParamPoly>) -> Option<BigRat> {
    let k = (0..=b.degree()).find(|&k| b.coeff(k).term_count() > 0)?;
    let c = a.coeff(k).div_exact(&b.coeff(k))?.constant_value()?;
    (a.degree() == b.degree() && (0..=a.degree()).all(|i| a.coeff(i) == b.coeff(i).scale(&c))).then_some(c)
}

/// Coefficient indices where `a` and `b` differ.
pub fn mismatches(a: &Poly<ParamPoly>, b: &Poly<ParamPoly>) -> Vec<usize> {
    (0..=a.degree().max(b.degree())).filter(|&k| a.coeff(k) != b.coeff(k)).collect()
}

pub fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    if want == 0.0 {
        got == 0.0
    } else {
        ((got - want) / want).abs() <= tol
    }
}

pub const LOW4_NUM: [&str; 5] = [
    "1680",
    "840*lambda + 3360",
    "180*lambda^2 + 1260*lambda + 2160",
    "20*lambda^3 + 180*lambda^2 + 520*lambda + 480",
    "lambda^4 + 10*lambda^3 + 35*lambda^2 + 50*lambda + 24",
];

pub const LOW4_DEN: [&str; 5] = [
    "1680",
    "-840*lambda + 3360",
    "180*lambda^2 - 1260*lambda + 2160",
    "-20*lambda^3 + 180*lambda^2 - 520*lambda + 480",
    "lambda^4 - 10*lambda^3 + 35*lambda^2 - 50*lambda + 24",
];

pub const LOW4_NUM_PREFACTOR: &str = "lambda^3 - 9*lambda^2 + 26*lambda - 24";
pub const LOW4_DEN_PREFACTOR: &str = "(lambda - 4)*(lambda^2 - 5*lambda + 6)";

pub const HIGH4_NUM: [&str; 5] = [
    "lambda^4 - 10*lambda^3 + 35*lambda^2 - 50*lambda + 24",
    "-20*lambda^3 + 180*lambda^2 - 520*lambda + 480",
    "180*lambda^2 - 1260*lambda + 2160",
    "-840*lambda + 3360",
    "1680",
];

pub const LOW5_NUM: [&str; 6] = [
    "30240",
    "15120*lambda + 75600",
    "3360*lambda^2 + 30240*lambda + 67200",
    "420*lambda^3 + 5040*lambda^2 + 19740*lambda + 25200",
    "30*lambda^4 + 420*lambda^3 + 2130*lambda^2 + 4620*lambda + 3600",
    "lambda^5 + 15*lambda^4 + 85*lambda^3 + 225*lambda^2 + 274*lambda + 120",
];

/// Leading `s^5` coefficients of the order-5 high-range form, which is
/// given with an overall minus sign.
pub const HIGH5_LEADING: (&str, &str) = (
    "lambda^5 - 15*lambda^4 + 85*lambda^3 - 225*lambda^2 + 274*lambda - 120",
    "lambda^5 + 15*lambda^4 + 85*lambda^3 + 225*lambda^2 + 274*lambda + 120",
);

pub const FOPD4_NUM: [&str; 5] = [
    "(mu^4 + 10*mu^3 + 35*mu^2 + 50*mu + 24)*Kd^4",
    "(20*mu^3 + 180*mu^2 + 520*mu + 480)*Kd^3*Kp",
    "(180*mu^2 + 1260*mu + 2160)*Kd^2*Kp^2",
    "(840*mu + 3360)*Kd*Kp^3",
    "1680*Kp^4",
];

pub const FOPD5_NUM: [&str; 6] = [
    "(mu^5 + 15*mu^4 + 85*mu^3 + 225*mu^2 + 274*mu + 120)*Kd^5",
    "(30*mu^4 + 420*mu^3 + 2130*mu^2 + 4620*mu + 3600)*Kd^4*Kp",
    "(420*mu^3 + 5040*mu^2 + 19740*mu + 25200)*Kd^3*Kp^2",
    "(3360*mu^2 + 30240*mu + 67200)*Kd^2*Kp^3",
    "(15120*mu + 75600)*Kd*Kp^4",
    "30240*Kp^5",
];

/// As given, this is the negation of the approximant's denominator.
pub const FOPD5_DEN: [&str; 6] = [
    "(mu^5 - 15*mu^4 + 85*mu^3 - 225*mu^2 + 274*mu - 120)*Kd^5",
    "-(30*mu^4 - 420*mu^3 + 2130*mu^2 - 4620*mu + 3600)*Kd^4*Kp",
    "(420*mu^3 - 5040*mu^2 + 19740*mu - 25200)*Kd^3*Kp^2",
    "-(3360*mu^2 - 30240*mu + 67200)*Kd^2*Kp^3",
    "(15120*mu - 75600)*Kd*Kp^4",
    "-30240*Kp^5",
];

pub const LEADLAG4_NUM: [&str; 5] = [
    "lambda^4*(alpha^4*x^4 - 50*alpha*x^4 - 10*alpha^3*x^4 + 24*x^4 + 35*alpha^2*x^4 + 384*x^3 \
     + 20*alpha^3*x^3 - 320*alpha*x^3 + 40*alpha^2*x^3 - 4*alpha^4*x^3 - 150*alpha^2*x^2 \
     + 6*alpha^4*x^2 + 864*x^2 - 4*alpha^4*x + 40*alpha^2*x + 320*alpha*x - 20*alpha^3*x \
     + 384*x + alpha^4 + 24 + 10*alpha^3 + 50*alpha + 35*alpha^2)",
    "lambda^3*(480*x^3 + 180*alpha^2*x^3 - 20*alpha^3*x^3 - 520*alpha*x^3 + 60*alpha^3*x^2 + 2880*x^2 \
     - 960*alpha*x^2 - 180*alpha^2*x^2 - 60*alpha^3*x - 180*alpha^2*x + 960*alpha*x + 2880*x)",
    "lambda^2*(180*alpha^2*x^2 - 1260*alpha*x^2 + 2160*x^2 - 360*alpha^2*x + 5760*x)",
    "lambda*(-840*alpha*x + 3360*x + 840*alpha + 3360)",
    "1680",
];

pub const LEADLAG4_DEN: [&str; 5] = [
    "lambda^4*(alpha^4*x^4 + 50*alpha*x^4 + 10*alpha^3*x^4 + 24*x^4 + 35*alpha^2*x^4 + 384*x^3 \
     + 40*alpha^2*x^3 + 320*alpha*x^3 - 4*alpha^4*x^3 - 20*alpha^3*x^3 + 6*alpha^4*x^2 - 150*alpha^2*x^2 \
     + 864*x^2 - 320*alpha*x + 384*x + 20*alpha^3*x + 40*alpha^2*x - 4*alpha^4*x \
     + 35*alpha^2 + alpha^4 - 50*alpha - 10*alpha^3 + 24)",
    "lambda^3*(480*x^3 + 180*alpha^2*x^3 + 20*alpha^3*x^3 + 520*alpha*x^3 - 60*alpha^3*x^2 + 2880*x^2 \
     + 960*alpha*x^2 - 180*alpha^2*x^2 + 60*alpha^3*x - 180*alpha^2*x - 960*alpha*x + 2880*x)",
    "lambda^2*(180*alpha^2*x^2 + 1260*alpha*x^2 + 2160*x^2 - 360*alpha^2*x + 5760*x)",
    "lambda*(840*alpha*x + 3360*x - 840*alpha + 3360)",
    "1680",
];

/// Terms missing from the reference order-4 lead-lag coefficients of
/// `s^3` and `s^2`: the `x`-free part.
pub const LEADLAG4_NUM_X_FREE: [&str; 2] = [
    "lambda^3*(20*alpha^3 + 180*alpha^2 + 520*alpha + 480)",
    "lambda^2*(180*alpha^2 + 1260*alpha + 2160)",
];
pub const LEADLAG4_DEN_X_FREE: [&str; 2] = [
    "lambda^3*(-20*alpha^3 + 180*alpha^2 - 520*alpha + 480)",
    "lambda^2*(180*alpha^2 - 1260*alpha + 2160)",
];

/// Numerator of the order-5 lead-lag approximant, up to a constant.
pub const LEADLAG5_NUM: [&str; 6] = [
    "lambda^5*(alpha^5*x^5 + 274*alpha*x^5 + 85*alpha^3*x^5 - 120*x^5 - 225*alpha^2*x^5 - 15*alpha^4*x^5 \
     - 1005*alpha^2*x^4 - 5*alpha^3*x^4 - 3000*x^4 - 5*alpha^5*x^4 + 45*alpha^4*x^4 + 3250*alpha*x^4 \
     + 4000*alpha*x^3 + 1230*alpha^2*x^3 - 30*alpha^4*x^3 - 12000*x^3 + 10*alpha^5*x^3 - 410*alpha^3*x^3 \
     + 1230*alpha^2*x^2 - 4000*alpha*x^2 - 10*alpha^5*x^2 - 30*alpha^4*x^2 - 12000*x^2 + 410*alpha^3*x^2 \
     - 3000*x - 3250*alpha*x + 45*alpha^4*x + 5*alpha^5*x - 1005*alpha^2*x + 5*alpha^3*x \
     - 120 - 85*alpha^3 - 225*alpha^2 - alpha^5 - 15*alpha^4 - 274*alpha)",
    "lambda^4*(420*alpha^3*x^4 - 3600*x^4 - 2130*alpha^2*x^4 - 30*alpha^4*x^4 + 4620*alpha*x^4 - 36000*x^3 \
     + 120*alpha^4*x^3 - 1560*alpha^2*x^3 - 840*alpha^3*x^3 + 21000*alpha*x^3 - 180*alpha^4*x^2 \
     + 7380*alpha^2*x^2 - 72000*x^2 - 1560*alpha^2*x + 840*alpha^3*x - 36000*x - 21000*alpha*x \
     + 120*alpha^4*x - 420*alpha^3 - 3600 - 4620*alpha - 2130*alpha^2 - 30*alpha^4)",
    "lambda^3*(420*alpha^3*x^3 - 25200*x^3 + 19740*alpha*x^3 - 5040*alpha^2*x^3 + 5040*alpha^2*x^2 \
     - 1260*alpha^3*x^2 - 126000*x^2 + 31500*alpha*x^2 + 5040*alpha^2*x - 31500*alpha*x - 126000*x \
     + 1260*alpha^3*x - 25200 - 420*alpha^3 - 5040*alpha^2 - 19740*alpha)",
    "lambda^2*(30240*alpha*x^2 - 3360*alpha^2*x^2 - 67200*x^2 - 168000*x + 6720*alpha^2*x - 30240*alpha \
     - 3360*alpha^2 - 67200)",
    "lambda*(-75600*x + 15120*alpha*x - 15120*alpha - 75600)",
    "-30240",
];

/// Rounded order-3 fractional part of the FO[PD] example.
pub const FOPD_EXAMPLE_TF: ([&str; 4], [&str; 4]) = (
    ["2.92", "30.82", "74.09", "49.00"],
    ["1", "15.99", "47.23", "35.82"],
);

/// `(g, h)` per element, four significant digits.
pub const FOPD_EXAMPLE_LADDER: [(f64, f64); 4] = [
    (2.9208, 0.0),
    (-0.7536, -0.0629),
    (9.5151, 3.6189),
    (-2.5622, -1.8466),
];

pub const LEADLAG_EXAMPLE_TF: ([&str; 4], [&str; 4]) = (
    ["64.88", "798.69", "2478.46", "2203.66"],
    ["1", "34.68", "177.63", "220.36"],
);

pub const LEADLAG_EXAMPLE_LADDER: [(f64, f64); 4] = [
    (64.8883, 0.0),
    (-0.0196, -6.8879e-4),
    (752.7414, 181.3516),
    (-0.0372, -0.0179),
];
