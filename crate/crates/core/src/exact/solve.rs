use super::fraction::Fraction;
use super::ring::Ring;
use super::{BigRat, ExactError};
use num_traits::{One, Zero};

/// Solution of `A y = b` with a shared denominator: `y_i = numerators[i] /
/// denominator`.
///
/// For a rank-deficient but consistent system, `defect` counts the free
/// variables; those are set to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<R> {
    pub numerators: Vec<R>,
    pub denominator: R,
    pub defect: usize,
}

impl<R: Ring> Solution<R> {
    pub fn values(&self) -> Vec<Fraction<R>> {
        self.numerators
            .iter()
            .map(|n| {
                Fraction::new(n.clone(), self.denominator.clone())
                    .expect("pivot is nonzero")
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.numerators.len() - self.defect
    }
}

/// Fraction-free (Bareiss) elimination over an exact domain.
///
/// Every intermediate division is exact, so the entries stay in `R`. The
/// returned denominator is the final Bareiss pivot, i.e. the determinant of
/// the pivot submatrix up to sign.
/// Scales a row to coprime integer content so that elimination runs over
/// integer coefficients. The solution set is unchanged.
fn primitive_row<R: Ring>(row: Vec<R>) -> Vec<R> {
    use num_integer::Integer;
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for c in &row {
        let r = c.rational_content();
        if !r.is_zero() {
            num = num.gcd(r.numer());
            den = den.lcm(r.denom());
        }
    }
    if num.is_zero() {
        return row;
    }
    let inv = BigRat::new(den, num);
    row.iter().map(|c| c.scale(&inv)).collect()
}

pub fn solve_fraction_free<R: Ring>(a: &[Vec<R>], b: &[R]) -> Result<Solution<R>, ExactError> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(ExactError::NotSquare {
            rows: n,
            cols: a.first().map_or(0, Vec::len),
        });
    }
    let mut m: Vec<Vec<R>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            primitive_row(r)
        })
        .collect();

    let mut prev = R::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == n {
            break;
        }
        let Some(p) = (r..n)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].weight())
        else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..n {
            for j in c + 1..=n {
                let t = m[r][c].clone() * m[i][j].clone() - m[i][c].clone() * m[r][j].clone();
                m[i][j] = t.exact_div(&prev).ok_or(ExactError::InexactDivision)?;
            }
            m[i][c] = R::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[n].is_zero()) {
        return Err(ExactError::NoSolution);
    }

    let d = prev;
    let mut y = vec![R::zero(); n];
    for (k, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = d.clone() * m[k][n].clone();
        for j in pc + 1..n {
            if !y[j].is_zero() {
                acc = acc - m[k][j].clone() * y[j].clone();
            }
        }
        y[pc] = acc.exact_div(&m[k][pc]).ok_or(ExactError::InexactDivision)?;
    }
    Ok(Solution {
        numerators: y,
        denominator: d,
        defect: n - rank,
    })
}
