//! Exact rational realizations of fractional-order controllers.
//!
//! Controllers are built by Padé approximation of binomial-type series,
//! optionally kept symbolic in their parameters, and synthesized into
//! continued-fraction ladder networks. Numeric baselines and Bode tooling
//! support comparison against the ideal response.

pub mod approx;
pub mod baselines;
pub mod controllers;
pub mod exact;
pub mod freqresp;
pub mod ladder;
pub mod series;

pub use approx::{ApproxError, Poly, TransferFunction};
pub use baselines::{BaselineConfig, BaselineError};
pub use controllers::{ControllerError, ControllerSpec, GainTag, Range, Realization, Sign};
pub use exact::{BigRat, ExactError, ParamPoly, Ring, Symbol};
pub use freqresp::{BodeSweep, FitReport, FreqError, FreqUnit, FrequencyGrid};
pub use ladder::{LadderError, LadderNetwork, Role};
pub use series::{PowerSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error(transparent)]
    Controller(#[from] ControllerError),
    #[error(transparent)]
    Ladder(#[from] LadderError),
    #[error(transparent)]
    Freq(#[from] FreqError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
}

impl Error {
    /// True for rejected inputs, false for algebra that broke down on
    /// well-formed inputs.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::Exact(e) => exact_is_validation(e),
            Error::Series(e) => matches!(e, SeriesError::OrderMismatch(..)),
            Error::Approx(e) => approx_is_validation(e),
            Error::Controller(ControllerError::InvalidParameter(_)) => true,
            Error::Controller(ControllerError::Approx(e)) => approx_is_validation(e),
            Error::Controller(ControllerError::NotExpandable) => false,
            Error::Ladder(LadderError::Approx(e)) => approx_is_validation(e),
            Error::Ladder(_) => false,
            Error::Freq(e) => !matches!(e, FreqError::GridMismatch),
            Error::Baseline(_) => true,
        }
    }
}

fn exact_is_validation(e: &ExactError) -> bool {
    matches!(e, ExactError::Parse(_) | ExactError::NotSquare { .. })
}

fn approx_is_validation(e: &ApproxError) -> bool {
    match e {
        ApproxError::InsufficientOrder { .. } => true,
        ApproxError::Exact(e) => exact_is_validation(e),
        _ => false,
    }
}
