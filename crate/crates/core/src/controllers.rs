//! Rational realizations of fractional-order differintegrators and
//! controllers, on the numeric (`BigRat`) and symbolic (`ParamPoly`) paths.
//!
//! Every family is written once against [`Ring`]; the public entry points
//! only choose the coefficient ring and build the gain tag.
//!
//! * Differintegrator, low range: `(1 + 1/s)^λ`, Padé in `v = 1/s`, then
//!   `s^n` is cleared by reversing coefficients.
//! * Differintegrator, high range: `(1 + sT)^(-λ)`, Padé in `u = sT`.
//! * FOPID: `Kp + Ki·Q_int(λ) + Kd·Q_diff(μ)` over one common denominator.
//! * FO[PD]: `Kp^μf · (1 + (Kd/Kp)s)^μf · (Kp + Kd s)^⌊μ⌋`.
//! * Lead-lag: `Kc x^α · ((1 + w)/(1 + x w))^α` with `w = λs`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::approx::{pade, ApproxError, Poly, TransferFunction};
use crate::exact::rational::{int, to_f64};
use crate::exact::{BigRat, ParamPoly, Ring, Symbol};
use crate::series::{binomial_series, leadlag_kernel_series};

/// Highest order checked against published symbolic forms.
pub const VALIDATED_ORDER: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ControllerError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not expandable about s=0: Kp must be nonzero")]
    NotExpandable,
    #[error(transparent)]
    Approx(#[from] ApproxError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Range {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Integrator,
    Differentiator,
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Range::Low => "low",
            Range::High => "high",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ControllerSpec {
    Differintegrator {
        lambda: BigRat,
        sign: Sign,
        range: Range,
        t: BigRat,
    },
    Fopid {
        kp: BigRat,
        ki: BigRat,
        kd: BigRat,
        lambda: BigRat,
        mu: BigRat,
        range: Range,
    },
    FopdBracket {
        kp: BigRat,
        kd: BigRat,
        mu: BigRat,
    },
    LeadLag {
        kc: BigRat,
        lambda: BigRat,
        x: BigRat,
        alpha: BigRat,
    },
}

fn require(ok: bool, what: &str) -> Result<(), ControllerError> {
    if ok {
        Ok(())
    } else {
        Err(ControllerError::InvalidParameter(what.to_string()))
    }
}

impl ControllerSpec {
    pub fn family(&self) -> &'static str {
        match self {
            ControllerSpec::Differintegrator { .. } => "diffint",
            ControllerSpec::Fopid { .. } => "fopid",
            ControllerSpec::FopdBracket { .. } => "fopd",
            ControllerSpec::LeadLag { .. } => "leadlag",
        }
    }

    /// Checks the parameter ranges. Lead-lag accepts the degenerate edges
    /// `x = 1` and `alpha = 0`, which realize as the constant `Kc`.
    pub fn validate(&self) -> Result<(), ControllerError> {
        let two = int(2);
        let in_0_2 = |r: &BigRat| r.is_positive() && *r < two;
        match self {
            ControllerSpec::Differintegrator { lambda, t, .. } => {
                require(lambda.is_positive() && *lambda <= BigRat::one(), "lambda must lie in (0, 1]")?;
                require(t.is_positive(), "T must be positive")
            }
            ControllerSpec::Fopid { kp, ki, kd, lambda, mu, .. } => {
                require(!kp.is_negative(), "Kp must be >= 0")?;
                require(!ki.is_negative(), "Ki must be >= 0")?;
                require(!kd.is_negative(), "Kd must be >= 0")?;
                require(in_0_2(lambda), "lambda must lie in (0, 2)")?;
                require(in_0_2(mu), "mu must lie in (0, 2)")
            }
            ControllerSpec::FopdBracket { kp, kd, mu } => {
                require(kp.is_positive(), "Kp must be > 0")?;
                require(kd.is_positive(), "Kd must be > 0")?;
                require(in_0_2(mu), "mu must lie in (0, 2)")
            }
            ControllerSpec::LeadLag { kc, lambda, x, alpha } => {
                require(kc.is_positive(), "Kc must be > 0")?;
                require(lambda.is_positive(), "lambda must be > 0")?;
                require(x.is_positive() && *x <= BigRat::one(), "x must lie in (0, 1)")?;
                require(!alpha.is_negative() && *alpha <= BigRat::one(), "alpha must lie in (0, 1]")
            }
        }
    }
}

/// Irrational scalar prefactor kept outside the rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct GainTag {
    pub label: String,
    /// Numeric value when every parameter in the label is numeric.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Realization<R> {
    pub tf: TransferFunction<R>,
    pub gain: Option<GainTag>,
    /// Rank defect of the underlying Padé system(s); nonzero means a
    /// reduced-order approximant was returned.
    pub defect: usize,
    /// Order exceeds [`VALIDATED_ORDER`].
    pub beyond_validation: bool,
}

impl Realization<BigRat> {
    /// Transfer function with the numeric gain multiplied into the
    /// numerator. The gain is irrational in general, so this is exact only
    /// up to the double-precision value of the gain.
    pub fn folded(&self) -> TransferFunction<BigRat> {
        match self.gain.as_ref().and_then(|g| g.value) {
            Some(v) => {
                let g = BigRat::from_float(v).expect("finite gain");
                self.tf.scale_gain(&g)
            }
            None => self.tf.clone(),
        }
    }
}

fn check_order(order: usize) -> Result<(), ControllerError> {
    require(order >= 1, "order must be >= 1")
}

struct Raw<R> {
    tf: TransferFunction<R>,
    defect: usize,
}

fn diffint_raw<R: Ring>(
    lambda: &R,
    sign: Sign,
    range: Range,
    t: &R,
    n: usize,
) -> Result<Raw<R>, ApproxError> {
    let integ = match range {
        Range::Low => {
            let p = pade(&binomial_series(lambda, 2 * n), n, n)?;
            let (num, den) = p.tf.into_parts();
            Raw {
                tf: TransferFunction::new(num.reversed(n), den.reversed(n))?.normalize(),
                defect: p.defect,
            }
        }
        Range::High => {
            let p = pade(&binomial_series(&-lambda.clone(), 2 * n), n, n)?;
            let tf = if t.to_rat().is_some_and(|v| v.is_one()) {
                p.tf
            } else {
                p.tf.scale_variable(t).normalize()
            };
            Raw { tf, defect: p.defect }
        }
    };
    Ok(match sign {
        Sign::Integrator => integ,
        Sign::Differentiator => Raw {
            tf: integ.tf.reciprocal()?.normalize(),
            defect: integ.defect,
        },
    })
}

/// Integrator and differentiator parts of a FOPID controller.
pub struct FopidParts<R> {
    pub integrator: TransferFunction<R>,
    pub differentiator: TransferFunction<R>,
}

fn fopid_parts_raw<R: Ring>(
    lambda: &R,
    mu: &R,
    range: Range,
    n: usize,
) -> Result<(FopidParts<R>, usize), ApproxError> {
    let one = R::one();
    let qi = diffint_raw(lambda, Sign::Integrator, range, &one, n)?;
    let qd = diffint_raw(mu, Sign::Differentiator, range, &one, n)?;
    Ok((
        FopidParts {
            integrator: qi.tf,
            differentiator: qd.tf,
        },
        qi.defect + qd.defect,
    ))
}

fn fopid_raw<R: Ring>(
    kp: &R,
    ki: &R,
    kd: &R,
    lambda: &R,
    mu: &R,
    range: Range,
    n: usize,
) -> Result<Raw<R>, ApproxError> {
    let (parts, defect) = fopid_parts_raw(lambda, mu, range, n)?;
    let mut g = TransferFunction::constant(kp.clone());
    if !ki.is_zero() {
        g = g.add(&parts.integrator.scale_gain(ki));
    }
    if !kd.is_zero() {
        g = g.add(&parts.differentiator.scale_gain(kd));
    }
    Ok(Raw {
        tf: g.normalize(),
        defect,
    })
}

fn fopd_raw<R: Ring>(
    kp: &R,
    kd: &R,
    mu_int: u32,
    mu_frac: &R,
    n: usize,
) -> Result<Raw<R>, ControllerError> {
    if kp.is_zero() {
        return Err(ControllerError::NotExpandable);
    }
    let p = pade(&binomial_series(mu_frac, 2 * n), n, n)?;
    let mut num = p.tf.num().homogenize(kd, kp, n);
    let den = p.tf.den().homogenize(kd, kp, n);
    if mu_int > 0 {
        num = &num * &Poly::affine(kp.clone(), kd.clone()).pow(mu_int);
    }
    Ok(Raw {
        tf: TransferFunction::new(num, den)?.normalize(),
        defect: p.defect,
    })
}

fn leadlag_raw<R: Ring>(alpha: &R, x: &R, lambda: &R, n: usize) -> Result<Raw<R>, ApproxError> {
    let p = pade(&leadlag_kernel_series(alpha, x, 2 * n), n, n)?;
    Ok(Raw {
        tf: p.tf.scale_variable(lambda).normalize(),
        defect: p.defect,
    })
}

fn finish<R>(raw: Raw<R>, gain: Option<GainTag>, n: usize) -> Realization<R> {
    Realization {
        tf: raw.tf,
        gain,
        defect: raw.defect,
        beyond_validation: n > VALIDATED_ORDER,
    }
}

/// Splits a positive rational into integer and fractional parts.
fn split_exponent(mu: &BigRat) -> (u32, BigRat) {
    let whole = mu.floor();
    let k: u32 = whole.to_integer().try_into().unwrap_or(0);
    (k, mu - whole)
}

fn fopd_gain(kp: Option<f64>, mu_frac: Option<f64>, label: &str) -> Option<GainTag> {
    if mu_frac == Some(0.0) {
        return None;
    }
    Some(GainTag {
        label: label.to_string(),
        value: kp.zip(mu_frac).map(|(k, m)| k.powf(m)),
    })
}

fn leadlag_gain(kc: Option<f64>, x: Option<f64>, alpha: Option<f64>) -> GainTag {
    GainTag {
        label: "Kc*x^alpha".to_string(),
        value: match (kc, x, alpha) {
            (Some(k), Some(x), Some(a)) => Some(k * x.powf(a)),
            _ => None,
        },
    }
}

fn as_f64(r: &ParamPoly) -> Option<f64> {
    r.constant_value().map(|v| to_f64(&v))
}

/// Numeric differintegrator realization of order `n`.
pub fn realize_differintegrator(
    lambda: &BigRat,
    sign: Sign,
    range: Range,
    t: &BigRat,
    n: usize,
) -> Result<Realization<BigRat>, ControllerError> {
    ControllerSpec::Differintegrator {
        lambda: lambda.clone(),
        sign,
        range,
        t: t.clone(),
    }
    .validate()?;
    check_order(n)?;
    Ok(finish(diffint_raw(lambda, sign, range, t, n)?, None, n))
}

/// Differintegrator with symbolic `λ` and `T = 1`.
pub fn symbolic_differintegrator(
    range: Range,
    n: usize,
    sign: Sign,
) -> Result<Realization<ParamPoly>, ControllerError> {
    symbolic_differintegrator_with(&ParamPoly::var(Symbol::Lambda), &ParamPoly::one(), range, n, sign)
}

/// Differintegrator with arbitrary (possibly constant) `λ` and `T`.
pub fn symbolic_differintegrator_with(
    lambda: &ParamPoly,
    t: &ParamPoly,
    range: Range,
    n: usize,
    sign: Sign,
) -> Result<Realization<ParamPoly>, ControllerError> {
    check_order(n)?;
    Ok(finish(diffint_raw(lambda, sign, range, t, n)?, None, n))
}

pub fn realize_fopid(
    kp: &BigRat,
    ki: &BigRat,
    kd: &BigRat,
    lambda: &BigRat,
    mu: &BigRat,
    range: Range,
    n: usize,
) -> Result<Realization<BigRat>, ControllerError> {
    ControllerSpec::Fopid {
        kp: kp.clone(),
        ki: ki.clone(),
        kd: kd.clone(),
        lambda: lambda.clone(),
        mu: mu.clone(),
        range,
    }
    .validate()?;
    check_order(n)?;
    Ok(finish(fopid_raw(kp, ki, kd, lambda, mu, range, n)?, None, n))
}

#[allow(clippy::too_many_arguments)]
pub fn symbolic_fopid(
    kp: &ParamPoly,
    ki: &ParamPoly,
    kd: &ParamPoly,
    lambda: &ParamPoly,
    mu: &ParamPoly,
    range: Range,
    n: usize,
) -> Result<Realization<ParamPoly>, ControllerError> {
    check_order(n)?;
    Ok(finish(fopid_raw(kp, ki, kd, lambda, mu, range, n)?, None, n))
}

/// The two fractional parts of a FOPID before they are combined; useful
/// for term-by-term comparison.
pub fn fopid_parts<R: Ring>(
    lambda: &R,
    mu: &R,
    range: Range,
    n: usize,
) -> Result<FopidParts<R>, ControllerError> {
    check_order(n)?;
    Ok(fopid_parts_raw(lambda, mu, range, n)?.0)
}

/// Numeric FO[PD]. `μ` is split into integer and fractional parts; the
/// integer part multiplies the numerator exactly.
pub fn realize_fopd_bracket(
    kp: &BigRat,
    kd: &BigRat,
    mu: &BigRat,
    n: usize,
) -> Result<Realization<BigRat>, ControllerError> {
    if kp.is_zero() {
        return Err(ControllerError::NotExpandable);
    }
    ControllerSpec::FopdBracket {
        kp: kp.clone(),
        kd: kd.clone(),
        mu: mu.clone(),
    }
    .validate()?;
    check_order(n)?;
    let (k, frac) = split_exponent(mu);
    let label = if k == 0 { "Kp^mu".to_string() } else { format!("Kp^(mu-{k})") };
    let gain = fopd_gain(Some(to_f64(kp)), Some(to_f64(&frac)), &label);
    Ok(finish(fopd_raw(kp, kd, k, &frac, n)?, gain, n))
}

/// FO[PD] with ParamPoly parameters. A constant `μ` is split as on the
/// numeric path; a symbolic `μ` is expanded whole.
pub fn symbolic_fopd_bracket(
    kp: &ParamPoly,
    kd: &ParamPoly,
    mu: &ParamPoly,
    n: usize,
) -> Result<Realization<ParamPoly>, ControllerError> {
    check_order(n)?;
    let (k, frac) = match mu.constant_value() {
        Some(m) => {
            let (k, f) = split_exponent(&m);
            (k, ParamPoly::constant(f))
        }
        None => (0, mu.clone()),
    };
    let label = if k == 0 { "Kp^mu".to_string() } else { format!("Kp^(mu-{k})") };
    let gain = fopd_gain(as_f64(kp), as_f64(&frac), &label);
    Ok(finish(fopd_raw(kp, kd, k, &frac, n)?, gain, n))
}

/// Numeric lead-lag compensator. `x = 1` or `α = 0` collapse to the
/// constant `Kc`.
pub fn realize_leadlag(
    kc: &BigRat,
    lambda: &BigRat,
    x: &BigRat,
    alpha: &BigRat,
    n: usize,
) -> Result<Realization<BigRat>, ControllerError> {
    ControllerSpec::LeadLag {
        kc: kc.clone(),
        lambda: lambda.clone(),
        x: x.clone(),
        alpha: alpha.clone(),
    }
    .validate()?;
    check_order(n)?;
    if x.is_one() || alpha.is_zero() {
        return Ok(finish(
            Raw {
                tf: TransferFunction::constant(kc.clone()),
                defect: 0,
            },
            None,
            n,
        ));
    }
    let gain = leadlag_gain(Some(to_f64(kc)), Some(to_f64(x)), Some(to_f64(alpha)));
    Ok(finish(leadlag_raw(alpha, x, lambda, n)?, Some(gain), n))
}

pub fn symbolic_leadlag(
    kc: &ParamPoly,
    lambda: &ParamPoly,
    x: &ParamPoly,
    alpha: &ParamPoly,
    n: usize,
) -> Result<Realization<ParamPoly>, ControllerError> {
    check_order(n)?;
    let gain = leadlag_gain(as_f64(kc), as_f64(x), as_f64(alpha));
    Ok(finish(leadlag_raw(alpha, x, lambda, n)?, Some(gain), n))
}

/// Dispatches a validated spec to its numeric builder.
pub fn realize(spec: &ControllerSpec, n: usize) -> Result<Realization<BigRat>, ControllerError> {
    match spec {
        ControllerSpec::Differintegrator { lambda, sign, range, t } => {
            realize_differintegrator(lambda, *sign, *range, t, n)
        }
        ControllerSpec::Fopid { kp, ki, kd, lambda, mu, range } => {
            realize_fopid(kp, ki, kd, lambda, mu, *range, n)
        }
        ControllerSpec::FopdBracket { kp, kd, mu } => realize_fopd_bracket(kp, kd, mu, n),
        ControllerSpec::LeadLag { kc, lambda, x, alpha } => realize_leadlag(kc, lambda, x, alpha, n),
    }
}
