//! Gaussian elimination with row operations applied from the left.
//!
//! Left row operations preserve the right kernel `{x : A·x = 0}` and all
//! right-linear relations among columns, which is what the rest of the
//! crate relies on.


use crate::error::{Error, Result};
use crate::ring::DivisionRing;

use super::Matrix;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<R> {
    pub rref: Matrix<R>,
    pub pivots: Vec<usize>,
}

impl<R: DivisionRing> Matrix<R> {
    /// Reduced row echelon form. Pivots are chosen by largest
    /// [`DivisionRing::approx_abs`], which is partial pivoting for HF and
    /// harmless elsewhere.
    pub fn echelon(&self) -> Echelon<R> {
        self.echelon_limited(self.cols)
    }

    /// Echelon form where only the first `limit` columns may hold pivots;
    /// the remaining columns are carried along (an augmented system).
    fn echelon_limited(&self, limit: usize) -> Echelon<R> {
        let mut m = self.clone();
        let scale = self.max_abs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == m.rows {
                break;
            }
            let (best, size) = (r..m.rows)
                .map(|i| (i, m.get(i, c).approx_abs()))
                .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if m.get(best, c).is_negligible(scale) || size <= 0.0 {
                for i in r..m.rows {
                    m.set(i, c, R::zero());
                }
                continue;
            }
            m.swap_rows(r, best);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = inv.clone() * m.get(r, j).clone();
                m.set(r, j, v);
            }
            m.set(r, c, R::one());
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
                m.set(i, c, R::zero());
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Indices of columns that form a basis of the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// Basis of the right kernel, one column vector per free column.
    pub fn kernel(&self) -> Vec<Matrix<R>> {
        let Echelon { rref, pivots } = self.echelon();
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = Matrix::zeros(self.cols, 1);
            v.set(f, 0, R::one());
            for (row, &p) in pivots.iter().enumerate() {
                v.set(p, 0, -rref.get(row, f).clone());
            }
            out.push(v);
        }
        out
    }

    /// Two-sided inverse by Gauss–Jordan on `[A | I]`.
    pub fn inverse(&self) -> Result<Matrix<R>> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n));
        let e = aug.echelon_limited(n);
        if e.pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(e.rref.block(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Some `X` with `A·X = B`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix<R>) -> Option<Matrix<R>> {
        assert_eq!(self.rows, b.rows, "solve row mismatch");
        let n = self.cols;
        let aug = self.hstack(b);
        let Echelon { rref, pivots } = aug.echelon_limited(n);
        let scale = aug.max_abs();
        for i in pivots.len()..rref.rows {
            if (n..rref.cols).any(|j| !rref.get(i, j).is_negligible(scale)) {
                return None;
            }
        }
        let mut x = Matrix::zeros(n, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, rref.get(row, n + j).clone());
            }
        }
        Some(x)
    }

    /// Spectral-norm-free condition estimate `‖A‖_F·‖A⁻¹‖_F`.
    pub fn condition(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.frobenius() * inv.frobenius(),
            Err(_) => f64::INFINITY,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Fp, Quaternion, Q};
    use num_traits::{One, Zero};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Hq = Quaternion<Q>;

    #[test]
    fn inverse_examples() {
        assert_eq!(Matrix::<Q>::identity(3).inverse().unwrap(), Matrix::identity(3));
        let (i, j) = (Hq::unit_i(), Hq::unit_j());
        let d = Matrix::diag(&[i.clone(), j.clone()]);
        assert_eq!(d.inverse().unwrap(), Matrix::diag(&[-i.clone(), -j]));
        let u = Matrix::from_rows(vec![vec![Hq::one(), i.clone()], vec![Hq::zero(), Hq::one()]]);
        let ui = Matrix::from_rows(vec![vec![Hq::one(), -i], vec![Hq::zero(), Hq::one()]]);
        assert_eq!(u.inverse().unwrap(), ui);
        assert!(Matrix::<Q>::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn kernel_is_right_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let b = Matrix::<Hq>::random(&mut rng, 3, 2, 4);
            let c = Matrix::<Hq>::random(&mut rng, 2, 4, 4);
            let a = &b * &c;
            let ker = a.kernel();
            assert_eq!(ker.len(), 4 - a.rank());
            for v in ker {
                assert!((&a * &v).is_zero());
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Matrix::<Fp<3>>::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(a.solve(&Matrix::from_i64(&[&[1], &[0]])).is_none());
        let x = a.solve(&Matrix::from_i64(&[&[1], &[2]])).unwrap();
        assert_eq!(&a * &x, Matrix::from_i64(&[&[1], &[2]]));
    }

    #[test]
    fn float_inverse_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let a = Matrix::<Quaternion<f64>>::random(&mut rng, 4, 4, 2);
            let ai = a.inverse().unwrap();
            assert!((&a * &ai).matches(&Matrix::identity(4)));
        }
    }
}
