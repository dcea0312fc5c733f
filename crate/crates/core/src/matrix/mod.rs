//! Dense matrices over a division ring.
//!
//! Matrices act on column vectors and scalars act on vectors from the
//! right. Similarity is `A ↦ P·A·P⁻¹`. The operator impls on references
//! panic on shape mismatch; the `try_*` methods report it instead.

mod cert;
mod elim;

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::ring::DivisionRing;

pub use cert::{conjugate, DiagCertificate, Decomposition, Mode, VerifyReport};
pub use elim::Echelon;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: DivisionRing> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| R::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, R::one())
    }

    pub fn scalar(n: usize, c: R) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { c.clone() } else { R::zero() })
    }

    pub fn diag(entries: &[R]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                R::zero()
            }
        })
    }

    pub fn column(entries: &[R]) -> Self {
        Matrix {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    /// Unit column vector `e_i` of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        Self::from_fn(n, 1, |r, _| if r == i { R::one() } else { R::zero() })
    }

    /// The `n×n` matrix with ones on the anti-diagonal.
    pub fn reversal(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i + j + 1 == n {
                R::one()
            } else {
                R::zero()
            }
        })
    }

    /// The `n×n` nilpotent shift with ones on the subdiagonal.
    pub fn shift(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j + 1 { R::one() } else { R::zero() })
    }

    pub fn random<G: Rng + ?Sized>(rng: &mut G, rows: usize, cols: usize, size: u32) -> Self {
        Self::from_fn(rows, cols, |_, _| R::random(rng, size))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Matrix<R> {
        Self::from_fn(self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn diagonal(&self) -> Vec<R> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix<R>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix<R>) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn from_columns(cols: &[Matrix<R>], rows: usize) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j].get(i, 0).clone())
    }

    pub fn block_diag(blocks: &[Matrix<R>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// `c·A`, scaling every entry from the left.
    pub fn scale_left(&self, c: &R) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    /// `A·c`, scaling every entry from the right.
    pub fn scale_right(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn try_add(&self, o: &Matrix<R>) -> Result<Self> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(self.shape_err("add", o));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn try_sub(&self, o: &Matrix<R>) -> Result<Self> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &Matrix<R>) -> Result<Self> {
        if self.cols != o.rows {
            return Err(self.shape_err("multiply", o));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn shape_err(&self, op: &str, o: &Matrix<R>) -> Error {
        Error::ShapeMismatch(format!(
            "cannot {op} {}x{} and {}x{}",
            self.rows, self.cols, o.rows, o.cols
        ))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Frobenius norm, with `approx_abs` as the entry size (the quaternion
    /// length for HF).
    pub fn frobenius(&self) -> f64 {
        self.data
            .iter()
            .map(|x| {
                let a = x.approx_abs();
                a * a
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.approx_abs()).fold(0.0, f64::max)
    }

    /// Whether `self` equals `target`: exactly for exact rings, within
    /// `1e-9·(1 + ‖target‖_F)` for floating rings.
    pub fn matches(&self, target: &Matrix<R>) -> bool {
        self.residual(target)
            .is_some_and(|r| r <= Self::tolerance(target))
    }

    /// `‖self − target‖_F`, or `None` on shape mismatch. Exact rings
    /// report 0 or infinity.
    pub fn residual(&self, target: &Matrix<R>) -> Option<f64> {
        if (self.rows, self.cols) != (target.rows, target.cols) {
            return None;
        }
        if R::TAG.is_exact() {
            Some(if self == target { 0.0 } else { f64::INFINITY })
        } else {
            Some((self - target).frobenius())
        }
    }

    pub fn tolerance(target: &Matrix<R>) -> f64 {
        if R::TAG.is_exact() {
            0.0
        } else {
            1e-9 * (1.0 + target.frobenius())
        }
    }

    /// Commutator-free check that all entries are central.
    pub fn is_central(&self) -> bool {
        self.data.iter().all(|x| x.is_central())
    }
}

impl<R: DivisionRing> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        self.get(i, j)
    }
}

impl<R: DivisionRing> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: DivisionRing> Add for &Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, o: &Matrix<R>) -> Matrix<R> {
        self.try_add(o).unwrap()
    }
}

impl<R: DivisionRing> Sub for &Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, o: &Matrix<R>) -> Matrix<R> {
        self.try_sub(o).unwrap()
    }
}

impl<R: DivisionRing> Mul for &Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, o: &Matrix<R>) -> Matrix<R> {
        self.try_mul(o).unwrap()
    }
}

impl<R: DivisionRing> Neg for &Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        self.map(|x| -x.clone())
    }
}

impl<R: DivisionRing> Add for Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, o: Matrix<R>) -> Matrix<R> {
        &self + &o
    }
}

impl<R: DivisionRing> Sub for Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, o: Matrix<R>) -> Matrix<R> {
        &self - &o
    }
}

impl<R: DivisionRing> Mul for Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, o: Matrix<R>) -> Matrix<R> {
        &self * &o
    }
}

impl<R: DivisionRing> Neg for Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Quaternion, Q};

    type Hq = Quaternion<Q>;

    #[test]
    fn scalar_actions_are_sided() {
        let i = Hq::unit_i();
        let j = Hq::unit_j();
        let k = Hq::unit_k();
        let mj = Matrix::from_rows(vec![vec![j.clone()]]);
        let mi = Matrix::from_rows(vec![vec![i.clone()]]);
        assert_eq!(mj.scale_left(&i), Matrix::from_rows(vec![vec![k.clone()]]));
        assert_eq!(mi.scale_right(&j), Matrix::from_rows(vec![vec![k.clone()]]));
        assert_eq!(mi.scale_left(&j), Matrix::from_rows(vec![vec![-k]]));
    }

    #[test]
    fn identity_is_neutral() {
        let a = Matrix::<Q>::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(&Matrix::identity(2) * &a, a);
        assert!(a.try_mul(&Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn block_diag_of_scalars() {
        let d = Matrix::<Q>::block_diag(&[Matrix::from_i64(&[&[1]]), Matrix::from_i64(&[&[2]])]);
        assert_eq!(d, Matrix::from_i64(&[&[1, 0], &[0, 2]]));
    }

    #[test]
    fn shift_and_reversal() {
        let s = Matrix::<Q>::shift(3);
        assert!(s.pow(3).is_zero());
        assert!(!s.pow(2).is_zero());
        let r = Matrix::<Q>::reversal(4);
        assert!(r.pow(2).is_identity());
    }
}
