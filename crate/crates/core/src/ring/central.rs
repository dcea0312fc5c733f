use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::DivisionRing;

/// A polynomial whose coefficients lie in the center, stored low degree
/// first. Evaluation at a matrix is well defined because central
/// coefficients commute with every entry.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralPolynomial<R> {
    coeffs: Vec<R>,
}

impl<R: DivisionRing> CentralPolynomial<R> {
    pub fn new(mut coeffs: Vec<R>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_central()) {
            return Err(Error::NonCentralRoot);
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(CentralPolynomial { coeffs })
    }

    /// `∏ (z − λᵢ)`.
    pub fn from_roots(roots: &[R]) -> Result<Self> {
        let mut c = vec![R::one()];
        for r in roots {
            let mut next = vec![R::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + ci.clone();
                next[i] = next[i].clone() - ci.clone() * r.clone();
            }
            c = next;
        }
        Self::new(c)
    }

    /// `z² + s·z`.
    pub fn quadratic(s: R) -> Result<Self> {
        Self::new(vec![R::zero(), s, R::one()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_matrix(&self, m: &Matrix<R>) -> Matrix<R> {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::scalar(n, c.clone());
        }
        acc
    }
}

/// `count` pairwise distinct central elements avoiding `forbidden`, in
/// the ring's fixed enumeration order.
pub fn central_sample<R: DivisionRing>(count: usize, forbidden: &[R]) -> Result<Vec<R>> {
    central_sample_skip(count, forbidden, 0)
}

/// Like [`central_sample`] but discards the first `skip` admissible
/// candidates. Used to retry a construction with fresh choices.
pub fn central_sample_skip<R: DivisionRing>(
    count: usize,
    forbidden: &[R],
    skip: usize,
) -> Result<Vec<R>> {
    let mut out: Vec<R> = Vec::with_capacity(count);
    let mut skipped = 0;
    // Infinite centers are enumerated lazily; the bound only matters for
    // floating rings where `separated` could in principle reject forever.
    for c in R::central_candidates().take(10_000) {
        if out.len() == count {
            break;
        }
        if forbidden.iter().chain(out.iter()).any(|f| !c.separated(f)) {
            continue;
        }
        if skipped < skip {
            skipped += 1;
            continue;
        }
        out.push(c);
    }
    if out.len() == count {
        Ok(out)
    } else {
        Err(Error::CenterTooSmall { needed: count })
    }
}
