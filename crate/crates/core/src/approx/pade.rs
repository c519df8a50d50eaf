use super::poly::Poly;
use super::tf::TransferFunction;
use super::ApproxError;
use crate::exact::{solve_fraction_free, ExactError, Ring};
use crate::series::PowerSeries;

/// An [m/k] Padé approximant. `defect` is nonzero when the linear system
/// was rank-deficient and a lower-order approximant was returned.
#[derive(Clone, Debug, PartialEq)]
pub struct PadeApproximant<R> {
    pub tf: TransferFunction<R>,
    pub defect: usize,
}

/// [m/k] Padé approximant of `series` in its own expansion variable.
///
/// The denominator coefficients solve the Hankel system
/// `sum_j c(m+i-j) q_j = -c(m+i+1)`; the numerator follows by truncated
/// convolution. Output is normalized.
pub fn pade<R: Ring>(
    series: &PowerSeries<R>,
    m: usize,
    k: usize,
) -> Result<PadeApproximant<R>, ApproxError> {
    if series.order() < m + k {
        return Err(ApproxError::InsufficientOrder {
            have: series.order(),
            need: m + k,
        });
    }
    let c = |i: isize| -> R {
        if i < 0 {
            R::zero()
        } else {
            series.coeff(i as usize).clone()
        }
    };
    let a: Vec<Vec<R>> = (0..k)
        .map(|r| (0..k).map(|j| c(m as isize + r as isize - j as isize)).collect())
        .collect();
    let b: Vec<R> = (0..k).map(|r| -c((m + 1 + r) as isize)).collect();
    let sol = solve_fraction_free(&a, &b).map_err(|e| match e {
        ExactError::NoSolution => ApproxError::NoPadeSolution { m, k },
        other => ApproxError::Exact(other),
    })?;

    let mut q = Vec::with_capacity(k + 1);
    q.push(sol.denominator.clone());
    q.extend(sol.numerators.iter().cloned());
    let p: Vec<R> = (0..=m)
        .map(|i| {
            (0..=i.min(k)).fold(R::zero(), |acc, j| {
                if q[j].is_zero() {
                    acc
                } else {
                    acc + c((i - j) as isize) * q[j].clone()
                }
            })
        })
        .collect();
    let tf = TransferFunction::new(Poly::new(p), Poly::new(q))?.normalize();
    Ok(PadeApproximant {
        tf,
        defect: sol.defect,
    })
}

/// Padé degree pair of an order-`n` realization: the 2n-th convergent of
/// the continued fraction is the [n/n] approximant.
pub fn cfe_order_to_pade(order: usize) -> (usize, usize) {
    (order, order)
}

/// Order realized by the `index`-th convergent.
pub fn convergent_order(index: usize) -> usize {
    index / 2
}
