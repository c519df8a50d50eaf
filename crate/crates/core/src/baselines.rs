//! Reference approximations of `s^λ` from the literature: Oustaloup's
//! recursive filter, its modified form, and Carlson's iteration.
//!
//! Oustaloup, for `k = -N..=N` over `[ω_b, ω_h]`:
//!
//! ```text
//! ω'_k = ω_b (ω_h/ω_b)^((k + N + (1-λ)/2) / (2N+1))     (zeros)
//! ω_k  = ω_b (ω_h/ω_b)^((k + N + (1+λ)/2) / (2N+1))     (poles)
//! H(s) = K ∏ (s + ω'_k)/(s + ω_k),   |H(jω_u)| = ω_u^λ,  ω_u = √(ω_b ω_h)
//! ```
//!
//! Modified Oustaloup multiplies the same product by
//! `(dω_h/b)^λ (d s² + bω_h s) / (d(1-λ) s² + bω_h s + dλ)`.
//!
//! Carlson iterates `H ← H ((q-1)H^q + (q+1)s^m) / ((q+1)H^q + (q-1)s^m)`
//! from `H = 1` for `λ = m/q`.
//!
//! Zeros, poles and gains are computed in double precision and converted
//! exactly, so the products themselves are exact.

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::approx::{Poly, TransferFunction};
use crate::controllers::Sign;
use crate::exact::rational::to_f64;
use crate::exact::BigRat;
use crate::freqresp::FloatTf;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaselineError {
    #[error("invalid baseline configuration: {0}")]
    InvalidConfig(String),
    #[error("Carlson requires rational order m/q with q <= 4, got {0}")]
    CarlsonOrder(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineConfig {
    pub lambda: f64,
    /// `(ω_b, ω_h)` in rad/s.
    pub band: (f64, f64),
    pub n: usize,
    pub b: f64,
    pub d: f64,
    pub sign: Sign,
}

impl BaselineConfig {
    /// Differentiator over `[ω_b, ω_h]` with `b = 10`, `d = 9`.
    pub fn new(lambda: f64, band: (f64, f64), n: usize) -> Self {
        BaselineConfig {
            lambda,
            band,
            n,
            b: 10.0,
            d: 9.0,
            sign: Sign::Differentiator,
        }
    }

    pub fn integrator(mut self) -> Self {
        self.sign = Sign::Integrator;
        self
    }

    pub fn validate(&self) -> Result<(), BaselineError> {
        let bad = |m: &str| Err(BaselineError::InvalidConfig(m.to_string()));
        let (wb, wh) = self.band;
        if !(self.lambda.is_finite() && self.lambda >= 0.0 && self.lambda <= 1.0) {
            return bad("lambda must lie in [0, 1]");
        }
        if !(wb > 0.0 && wh > wb && wh.is_finite()) {
            return bad("band must satisfy 0 < w_b < w_h");
        }
        if self.n < 1 {
            return bad("recursion depth N must be >= 1");
        }
        if !(self.b > 0.0 && self.d > 0.0) {
            return bad("b and d must be positive");
        }
        Ok(())
    }
}

fn exact(x: f64) -> BigRat {
    BigRat::from_float(x).expect("finite value")
}

/// Zero and pole corner frequencies of the recursive filter.
fn corners(cfg: &BaselineConfig) -> Vec<(f64, f64)> {
    let (wb, wh) = cfg.band;
    let n = cfg.n as f64;
    let g = cfg.lambda;
    let ratio = wh / wb;
    (-(cfg.n as i64)..=cfg.n as i64)
        .map(|k| {
            let k = k as f64;
            let zero = wb * ratio.powf((k + n + (1.0 - g) / 2.0) / (2.0 * n + 1.0));
            let pole = wb * ratio.powf((k + n + (1.0 + g) / 2.0) / (2.0 * n + 1.0));
            (zero, pole)
        })
        .collect()
}

fn corner_product(cfg: &BaselineConfig) -> (Poly<BigRat>, Poly<BigRat>) {
    let one = BigRat::one();
    corners(cfg).into_iter().fold(
        (Poly::constant(one.clone()), Poly::constant(one.clone())),
        |(num, den), (z, p)| {
            (
                &num * &Poly::affine(exact(z), one.clone()),
                &den * &Poly::affine(exact(p), one.clone()),
            )
        },
    )
}

fn oriented(tf: TransferFunction<BigRat>, sign: Sign) -> TransferFunction<BigRat> {
    match sign {
        Sign::Differentiator => tf,
        Sign::Integrator => tf.reciprocal().expect("nonzero numerator"),
    }
}

pub fn oustaloup(cfg: &BaselineConfig) -> Result<TransferFunction<BigRat>, BaselineError> {
    cfg.validate()?;
    let (num, den) = corner_product(cfg);
    let core = TransferFunction::new(num, den).expect("monic denominator");
    let wu = (cfg.band.0 * cfg.band.1).sqrt();
    let at = FloatTf::from(&core).eval(Complex64::new(0.0, wu)).norm();
    let k = exact(wu.powf(cfg.lambda) / at);
    Ok(oriented(core.scale_gain(&k), cfg.sign))
}

pub fn modified_oustaloup(cfg: &BaselineConfig) -> Result<TransferFunction<BigRat>, BaselineError> {
    cfg.validate()?;
    let (num, den) = corner_product(cfg);
    let (b, d, g, wh) = (cfg.b, cfg.d, cfg.lambda, cfg.band.1);
    let bq_num = Poly::new(vec![BigRat::zero(), exact(b * wh), exact(d)]);
    let bq_den = Poly::new(vec![exact(d * g), exact(b * wh), exact(d * (1.0 - g))]);
    let k = exact((d * wh / b).powf(g));
    let tf = TransferFunction::new(&num * &bq_num, &den * &bq_den)
        .expect("nonzero denominator")
        .scale_gain(&k);
    Ok(oriented(tf, cfg.sign))
}

/// Carlson's iteration for `s^λ`, `λ = m/q` in lowest terms.
pub fn carlson(lambda: &BigRat, iterations: usize, sign: Sign) -> Result<TransferFunction<BigRat>, BaselineError> {
    let order_err = || BaselineError::CarlsonOrder(lambda.to_string());
    if !lambda.is_positive() || *lambda > BigRat::one() {
        return Err(order_err());
    }
    if iterations < 1 {
        return Err(BaselineError::InvalidConfig("iterations must be >= 1".into()));
    }
    let m = lambda.numer().to_usize().ok_or_else(order_err)?;
    let q = lambda.denom().to_usize().ok_or_else(order_err)?;
    if q > 4 {
        return Err(order_err());
    }
    let one = BigRat::one();
    let qm1 = BigRat::from_integer((q as i64 - 1).into());
    let qp1 = BigRat::from_integer((q as i64 + 1).into());
    let sm = Poly::monomial(one.clone(), m);
    let mut h = TransferFunction::constant(one);
    for _ in 0..iterations {
        let (n, d) = (h.num().clone(), h.den().clone());
        let nq = n.pow(q as u32);
        let dq_sm = &d.pow(q as u32) * &sm;
        let upper = &nq.mul_scalar(&qm1) + &dq_sm.mul_scalar(&qp1);
        let lower = &nq.mul_scalar(&qp1) + &dq_sm.mul_scalar(&qm1);
        h = TransferFunction::new(&n * &upper, &d * &lower)
            .expect("positive iterates")
            .normalize();
    }
    Ok(oriented(h, sign))
}

/// Distance `|H(jω)^q - (jω)^m|` used to check Carlson's contraction.
pub fn carlson_residual(h: &TransferFunction<BigRat>, lambda: &BigRat, w: f64) -> f64 {
    let m = to_f64(&BigRat::from_integer(lambda.numer().clone()));
    let q = to_f64(&BigRat::from_integer(lambda.denom().clone()));
    let jw = Complex64::new(0.0, w);
    let v = FloatTf::from(h).eval(jw);
    (v.powf(q) - jw.powf(m)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use std::f64::consts::PI;

    fn wide_band() -> (f64, f64) {
        (2.0 * PI * 1e-3, 2.0 * PI * 1e3)
    }

    fn phase_at(tf: &TransferFunction<BigRat>, w: f64) -> f64 {
        FloatTf::from(tf).eval(Complex64::new(0.0, w)).arg().to_degrees()
    }

    #[test]
    fn oustaloup_order_and_gain() {
        let cfg = BaselineConfig::new(0.5, wide_band(), 3);
        let tf = oustaloup(&cfg).unwrap();
        assert_eq!(tf.num().degree(), 7);
        assert_eq!(tf.den().degree(), 7);
        let wu = (cfg.band.0 * cfg.band.1).sqrt();
        let mag = FloatTf::from(&tf).eval(Complex64::new(0.0, wu)).norm();
        assert!((mag / wu.powf(0.5) - 1.0).abs() < 1e-9);
        let p = phase_at(&tf, wu);
        assert!((p - 45.0).abs() < 1.0, "{p}");
    }

    #[test]
    fn oustaloup_zero_order_is_unity() {
        let tf = oustaloup(&BaselineConfig::new(0.0, wide_band(), 3)).unwrap();
        assert_eq!(tf.num(), tf.den());
        let m = modified_oustaloup(&BaselineConfig::new(0.0, wide_band(), 3)).unwrap();
        assert!(m.equivalent(&TransferFunction::constant(int(1))));
    }

    #[test]
    fn modified_order_and_boundary() {
        let cfg = BaselineConfig::new(0.5, wide_band(), 3);
        let m = modified_oustaloup(&cfg).unwrap();
        assert_eq!(m.num().degree(), 9);
        assert_eq!(m.den().degree(), 9);
        let o = oustaloup(&cfg).unwrap();
        let wb = cfg.band.0;
        assert!((phase_at(&m, wb) - 45.0).abs() < (phase_at(&o, wb) - 45.0).abs());
    }

    #[test]
    fn integrator_is_reciprocal() {
        let cfg = BaselineConfig::new(0.5, wide_band(), 2);
        let d = oustaloup(&cfg).unwrap();
        let i = oustaloup(&cfg.clone().integrator()).unwrap();
        assert!(i.equivalent(&d.reciprocal().unwrap()));
    }

    #[test]
    fn carlson_first_iteration() {
        let h = carlson(&rat(1, 2), 1, Sign::Differentiator).unwrap();
        let expected = TransferFunction::from_coeffs(vec![int(1), int(3)], vec![int(3), int(1)]).unwrap();
        assert!(h.equivalent(&expected));
    }

    #[test]
    fn carlson_degrees() {
        for (q, degs) in [(2, [1, 4, 13]), (3, [1, 5, 21]), (4, [1, 6, 31])] {
            for (k, deg) in degs.into_iter().enumerate() {
                let h = carlson(&rat(1, q), k + 1, Sign::Differentiator).unwrap();
                assert_eq!(h.num().degree(), deg, "q={q} k={}", k + 1);
            }
        }
    }

    #[test]
    fn carlson_integer_order() {
        let h = carlson(&int(1), 3, Sign::Differentiator).unwrap();
        assert!(h.equivalent(&TransferFunction::from_coeffs(vec![int(0), int(1)], vec![int(1)]).unwrap()));
    }

    #[test]
    fn carlson_rejects_large_denominators() {
        assert!(matches!(carlson(&rat(1, 5), 2, Sign::Differentiator), Err(BaselineError::CarlsonOrder(_))));
        assert!(matches!(carlson(&rat(3, 2), 2, Sign::Differentiator), Err(BaselineError::CarlsonOrder(_))));
    }

    #[test]
    fn carlson_contracts() {
        let l = rat(1, 2);
        let errs: Vec<f64> = (1..=3)
            .map(|k| carlson_residual(&carlson(&l, k, Sign::Differentiator).unwrap(), &l, 1.0))
            .collect();
        assert!(errs[0] >= errs[1] && errs[1] >= errs[2], "{errs:?}");
    }

    #[test]
    fn config_validation() {
        assert!(BaselineConfig::new(0.5, (1.0, 1.0), 3).validate().is_err());
        assert!(BaselineConfig::new(1.5, (1.0, 2.0), 3).validate().is_err());
        assert!(BaselineConfig::new(0.5, (1.0, 2.0), 0).validate().is_err());
    }
}
