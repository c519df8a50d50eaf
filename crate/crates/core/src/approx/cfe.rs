use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::tf::TransferFunction;
use super::ApproxError;
use crate::exact::rational::div_rem;
use crate::exact::BigRat;

/// `g + h·s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub g: BigRat,
    pub h: BigRat,
}

impl Affine {
    pub fn poly(&self) -> Poly<BigRat> {
        Poly::affine(self.g.clone(), self.h.clone())
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.h.is_zero(), self.g.is_zero()) {
            (true, _) => write!(f, "{}", self.g),
            (false, true) => write!(f, "{}*s", self.h),
            (false, false) if self.g < BigRat::zero() => write!(f, "{}*s - {}", self.h, -&self.g),
            (false, false) => write!(f, "{}*s + {}", self.h, self.g),
        }
    }
}

/// Simple continued fraction `q0 + 1/(q1 + 1/(q2 + ...))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub quotients: Vec<Affine>,
}

impl ContinuedFraction {
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// Folds the expansion back into a rational function.
    pub fn reconstruct(&self) -> TransferFunction<BigRat> {
        let mut iter = self.quotients.iter().rev();
        let Some(last) = iter.next() else {
            return TransferFunction::constant(BigRat::zero());
        };
        let mut num = last.poly();
        let mut den = Poly::constant(BigRat::one());
        for q in iter {
            let next_num = &(&q.poly() * &num) + &den;
            den = num;
            num = next_num;
        }
        TransferFunction::new(num, den).expect("continued fraction denominators are nonzero")
    }
}

/// Euclidean expansion of a numeric rational function into affine partial
/// quotients.
pub fn rational_to_cfe(tf: &TransferFunction<BigRat>) -> Result<ContinuedFraction, ApproxError> {
    if tf.num().is_zero() {
        return Err(ApproxError::DegenerateExpansion);
    }
    let mut num = tf.num().coeffs().to_vec();
    let mut den = tf.den().coeffs().to_vec();
    let mut quotients = Vec::new();
    loop {
        let (q, r) = div_rem(&num, &den);
        if q.len() > 2 {
            return Err(ApproxError::NonAffineQuotient {
                index: quotients.len(),
                degree: q.len() - 1,
            });
        }
        let q = Poly::new(q);
        quotients.push(Affine {
            g: q.coeff(0),
            h: q.coeff(1),
        });
        if r.is_empty() {
            break;
        }
        num = den;
        den = r;
    }
    Ok(ContinuedFraction { quotients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn tf(num: &[i64], den: &[i64]) -> TransferFunction<BigRat> {
        TransferFunction::from_coeffs(
            num.iter().map(|&x| int(x)).collect(),
            den.iter().map(|&x| int(x)).collect(),
        )
        .unwrap()
    }

    fn aff(g: BigRat, h: BigRat) -> Affine {
        Affine { g, h }
    }

    #[test]
    fn low_range_semi_integrator() {
        let t = tf(&[7, 56, 112, 64], &[1, 24, 80, 64]);
        let cf = rational_to_cfe(&t).unwrap();
        assert_eq!(
            cf.quotients,
            vec![
                aff(int(1), int(0)),
                aff(rat(1, 2), int(2)),
                aff(int(-4), int(-8)),
                aff(int(1), int(2)),
            ]
        );
        assert!(cf.reconstruct().equivalent(&t));
    }

    #[test]
    fn high_range_semi_integrator() {
        let t = tf(&[64, 80, 24, 1], &[64, 112, 56, 7]);
        let cf = rational_to_cfe(&t).unwrap();
        assert_eq!(
            cf.quotients,
            vec![
                aff(rat(1, 7), int(0)),
                aff(rat(7, 4), rat(7, 16)),
                aff(rat(-16, 9), rat(-2, 3)),
                aff(rat(63, 4), rat(189, 16)),
            ]
        );
        assert!(cf.reconstruct().equivalent(&t));
    }

    #[test]
    fn affine_input_is_single_quotient() {
        let cf = rational_to_cfe(&tf(&[1, 1], &[1])).unwrap();
        assert_eq!(cf.quotients, vec![aff(int(1), int(1))]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            rational_to_cfe(&tf(&[0], &[1])).unwrap_err(),
            ApproxError::DegenerateExpansion
        );
        assert!(matches!(
            rational_to_cfe(&tf(&[1, 0, 1], &[1])),
            Err(ApproxError::NonAffineQuotient { index: 0, degree: 2 })
        ));
    }
}
