//! Frequency-response evaluation, ideal fractional references and fit
//! metrics.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::approx::TransferFunction;
use crate::controllers::{ControllerSpec, Sign};
use crate::exact::rational::to_f64;
use crate::exact::BigRat;

pub const DEFAULT_POINTS_PER_DECADE: usize = 50;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FreqError {
    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),
    #[error("sweeps are evaluated on different grids")]
    GridMismatch,
    #[error("band [{0}, {1}] lies outside the evaluated grid")]
    BandOutsideGrid(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FreqUnit {
    Hertz,
    RadPerSec,
}

impl FreqUnit {
    pub fn label(self) -> &'static str {
        match self {
            FreqUnit::Hertz => "hz",
            FreqUnit::RadPerSec => "rad/s",
        }
    }

    pub fn to_rad(self, f: f64) -> f64 {
        match self {
            FreqUnit::Hertz => 2.0 * PI * f,
            FreqUnit::RadPerSec => f,
        }
    }
}

/// Log-spaced frequencies `lo · 10^(i/ppd)` up to `hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    pub freqs: Vec<f64>,
    pub unit: FreqUnit,
}

impl FrequencyGrid {
    pub fn log(lo: f64, hi: f64, points_per_decade: usize, unit: FreqUnit) -> Result<Self, FreqError> {
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
            return Err(FreqError::InvalidGrid(format!(
                "need 0 < fmin < fmax, got [{lo}, {hi}]"
            )));
        }
        if points_per_decade == 0 {
            return Err(FreqError::InvalidGrid("points per decade must be >= 1".into()));
        }
        let start = lo.log10();
        let span = hi.log10() - start;
        let steps = (span * points_per_decade as f64 + 1e-9).floor() as usize;
        let freqs = (0..=steps)
            .map(|i| 10f64.powf(start + i as f64 / points_per_decade as f64))
            .collect();
        Ok(FrequencyGrid { freqs, unit })
    }

    pub fn omegas(&self) -> Vec<f64> {
        self.freqs.iter().map(|&f| self.unit.to_rad(f)).collect()
    }
}

/// Double-precision copy of a transfer function for evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatTf {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
}

impl FloatTf {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        horner(&self.num, s) / horner(&self.den, s)
    }

    fn den_at(&self, s: Complex64) -> Complex64 {
        horner(&self.den, s)
    }
}

fn horner(coeffs: &[f64], s: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
}

impl From<&TransferFunction<BigRat>> for FloatTf {
    fn from(tf: &TransferFunction<BigRat>) -> Self {
        FloatTf {
            num: tf.num().coeffs().iter().map(to_f64).collect(),
            den: tf.den().coeffs().iter().map(to_f64).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BodeSweep {
    pub freqs: Vec<f64>,
    pub unit: FreqUnit,
    pub mag_db: Vec<f64>,
    pub phase_deg: Vec<f64>,
    /// Grid indices where the denominator vanished; their samples are NaN.
    pub pole_hits: Vec<usize>,
}

impl BodeSweep {
    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    fn grid(&self) -> FrequencyGrid {
        FrequencyGrid {
            freqs: self.freqs.clone(),
            unit: self.unit,
        }
    }
}

/// Shifts each phase by a multiple of 360° to stay within 180° of the
/// previous finite sample.
fn unwrap(phases: &mut [f64]) {
    let mut prev: Option<f64> = None;
    for p in phases.iter_mut() {
        if !p.is_finite() {
            continue;
        }
        if let Some(q) = prev {
            *p -= 360.0 * ((*p - q) / 360.0).round();
        }
        prev = Some(*p);
    }
}

pub fn bode(tf: &TransferFunction<BigRat>, grid: &FrequencyGrid) -> BodeSweep {
    bode_float(&FloatTf::from(tf), grid)
}

pub fn bode_float(tf: &FloatTf, grid: &FrequencyGrid) -> BodeSweep {
    let mut mag_db = Vec::with_capacity(grid.freqs.len());
    let mut phase_deg = Vec::with_capacity(grid.freqs.len());
    let mut pole_hits = Vec::new();
    for (i, w) in grid.omegas().into_iter().enumerate() {
        let s = Complex64::new(0.0, w);
        if tf.den_at(s) == Complex64::new(0.0, 0.0) {
            pole_hits.push(i);
            mag_db.push(f64::NAN);
            phase_deg.push(f64::NAN);
            continue;
        }
        let h = tf.eval(s);
        mag_db.push(20.0 * h.norm().log10());
        phase_deg.push(h.arg().to_degrees());
    }
    unwrap(&mut phase_deg);
    BodeSweep {
        freqs: grid.freqs.clone(),
        unit: grid.unit,
        mag_db,
        phase_deg,
        pole_hits,
    }
}

/// Magnitude (dB) and phase (degrees) of the ideal fractional controller
/// at angular frequency `w`, with analytic phase.
pub fn ideal_point(spec: &ControllerSpec, w: f64) -> (f64, f64) {
    let f = |r: &BigRat| to_f64(r);
    match spec {
        ControllerSpec::Differintegrator { lambda, sign, .. } => {
            let e = match sign {
                Sign::Integrator => -f(lambda),
                Sign::Differentiator => f(lambda),
            };
            (20.0 * e * w.log10(), 90.0 * e)
        }
        ControllerSpec::FopdBracket { kp, kd, mu } => {
            let z = Complex64::new(f(kp), w * f(kd));
            let m = f(mu);
            (20.0 * m * z.norm().log10(), m * z.arg().to_degrees())
        }
        ControllerSpec::LeadLag { kc, lambda, x, alpha } => {
            let (a, l, x) = (f(alpha), f(lambda), f(x));
            let lead = Complex64::new(1.0, w * l);
            let lag = Complex64::new(1.0, w * x * l);
            let mag = f(kc) * x.powf(a) * (lead.norm() / lag.norm()).powf(a);
            (20.0 * mag.log10(), a * (lead.arg() - lag.arg()).to_degrees())
        }
        ControllerSpec::Fopid { kp, ki, kd, lambda, mu, .. } => {
            let jw = Complex64::new(0.0, w);
            let h = Complex64::new(f(kp), 0.0) + f(ki) * jw.powf(-f(lambda)) + f(kd) * jw.powf(f(mu));
            (20.0 * h.norm().log10(), h.arg().to_degrees())
        }
    }
}

pub fn ideal_response(spec: &ControllerSpec, grid: &FrequencyGrid) -> BodeSweep {
    let (mag_db, phase_deg) = grid.omegas().into_iter().map(|w| ideal_point(spec, w)).unzip();
    BodeSweep {
        freqs: grid.freqs.clone(),
        unit: grid.unit,
        mag_db,
        phase_deg,
        pole_hits: Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub band: (f64, f64),
    pub unit: FreqUnit,
    pub max_phase_err_deg: f64,
    pub mean_phase_err_deg: f64,
    pub max_mag_err_db: f64,
    pub mean_mag_err_db: f64,
    pub tolerance_deg: f64,
    /// Widest contiguous run where the phase tracks the ideal phase within
    /// `tolerance_deg`.
    pub constant_phase_band: Option<(f64, f64)>,
}

/// Difference wrapped into (-180, 180].
fn phase_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

/// Widest run of consecutive indices where `ok` holds.
fn widest_run(ok: impl Iterator<Item = bool>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut start: Option<usize> = None;
    let mut last = 0;
    for (i, good) in ok.enumerate() {
        last = i;
        match (good, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if best.is_none_or(|(b0, b1)| i - s > b1 - b0 + 1) {
                    best = Some((s, i - 1));
                }
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        if best.is_none_or(|(b0, b1)| last + 1 - s > b1 - b0 + 1) {
            best = Some((s, last));
        }
    }
    best
}

pub fn fit_report(
    approx: &BodeSweep,
    ideal: &BodeSweep,
    band: (f64, f64),
    tolerance_deg: f64,
) -> Result<FitReport, FreqError> {
    if approx.grid() != ideal.grid() {
        return Err(FreqError::GridMismatch);
    }
    let (lo, hi) = band;
    let first = approx.freqs.first().copied().unwrap_or(f64::NAN);
    let last = approx.freqs.last().copied().unwrap_or(f64::NAN);
    let rel = 1e-9;
    if !(lo <= hi && lo >= first * (1.0 - rel) && hi <= last * (1.0 + rel)) {
        return Err(FreqError::BandOutsideGrid(lo, hi));
    }
    let inside: Vec<usize> = (0..approx.len())
        .filter(|&i| approx.freqs[i] >= lo * (1.0 - rel) && approx.freqs[i] <= hi * (1.0 + rel))
        .filter(|&i| approx.phase_deg[i].is_finite() && approx.mag_db[i].is_finite())
        .collect();
    if inside.is_empty() {
        return Err(FreqError::BandOutsideGrid(lo, hi));
    }
    let perr: Vec<f64> = inside
        .iter()
        .map(|&i| phase_diff(approx.phase_deg[i], ideal.phase_deg[i]).abs())
        .collect();
    let merr: Vec<f64> = inside
        .iter()
        .map(|&i| (approx.mag_db[i] - ideal.mag_db[i]).abs())
        .collect();
    let n = inside.len() as f64;
    let tracks = (0..approx.len()).map(|i| {
        approx.phase_deg[i].is_finite()
            && phase_diff(approx.phase_deg[i], ideal.phase_deg[i]).abs() <= tolerance_deg
    });
    Ok(FitReport {
        band,
        unit: approx.unit,
        max_phase_err_deg: perr.iter().copied().fold(0.0, f64::max),
        mean_phase_err_deg: perr.iter().sum::<f64>() / n,
        max_mag_err_db: merr.iter().copied().fold(0.0, f64::max),
        mean_mag_err_db: merr.iter().sum::<f64>() / n,
        tolerance_deg,
        constant_phase_band: widest_run(tracks).map(|(a, b)| (approx.freqs[a], approx.freqs[b])),
    })
}

/// Widest contiguous grid interval with `|phase - target| <= tol`, or
/// `None` when no sample qualifies.
pub fn constant_phase_band(sweep: &BodeSweep, target_deg: f64, tol_deg: f64) -> Option<(f64, f64)> {
    widest_run(
        sweep
            .phase_deg
            .iter()
            .map(|p| p.is_finite() && (p - target_deg).abs() <= tol_deg),
    )
    .map(|(a, b)| (sweep.freqs[a], sweep.freqs[b]))
}
