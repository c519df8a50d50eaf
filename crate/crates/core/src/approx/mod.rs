//! Padé approximants and continued-fraction expansion.

mod cfe;
mod pade;
mod poly;
mod tf;

pub use cfe::{rational_to_cfe, Affine, ContinuedFraction};
pub use pade::{cfe_order_to_pade, convergent_order, pade, PadeApproximant};
pub use poly::Poly;
pub use tf::TransferFunction;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApproxError {
    #[error("series of order {have} is too short for a Padé approximant needing order {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("no solution: the [{m}/{k}] Padé system is inconsistent")]
    NoPadeSolution { m: usize, k: usize },
    #[error("transfer function denominator is zero")]
    ZeroDenominator,
    #[error("evaluation point is a pole")]
    PoleAt,
    #[error("degenerate expansion: division by the zero polynomial")]
    DegenerateExpansion,
    #[error("partial quotient {index} has degree {degree}; only affine quotients are supported")]
    NonAffineQuotient { index: usize, degree: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}
