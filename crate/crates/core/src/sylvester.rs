//! Sylvester equations `A·X − X·B = C` under a central annihilator, and
//! the corner elimination built on them.

use crate::error::{Error, Result};
use crate::matrix::{DiagCertificate, Matrix};
use crate::ring::{CentralPolynomial, DivisionRing};

/// An instance with `p(A) = 0` and `p(B)` invertible, checked on
/// construction.
#[derive(Clone, Debug)]
pub struct SylvesterInstance<R> {
    a: Matrix<R>,
    b: Matrix<R>,
    c: Matrix<R>,
    p: CentralPolynomial<R>,
    p_b_inv: Matrix<R>,
}

impl<R: DivisionRing> SylvesterInstance<R> {
    pub fn new(
        a: Matrix<R>,
        b: Matrix<R>,
        c: Matrix<R>,
        p: CentralPolynomial<R>,
    ) -> Result<Self> {
        if !a.is_square() || !b.is_square() || c.rows() != a.rows() || c.cols() != b.rows() {
            return Err(Error::ShapeMismatch("Sylvester instance shapes".into()));
        }
        if !p.eval_matrix(&a).matches(&Matrix::zeros(a.rows(), a.rows())) {
            return Err(Error::AnnihilatorFails);
        }
        let p_b_inv = p
            .eval_matrix(&b)
            .inverse()
            .map_err(|_| Error::NotInvertible)?;
        Ok(SylvesterInstance { a, b, c, p, p_b_inv })
    }
}

/// The unique `X` with `A·X − X·B = C`:
/// `X = −(Σ_{k≥1} p_k Σ_{i+j=k−1} Aⁱ·C·Bʲ)·p(B)⁻¹`.
pub fn solve_sylvester<R: DivisionRing>(inst: &SylvesterInstance<R>) -> Result<Matrix<R>> {
    let SylvesterInstance { a, b, c, p, p_b_inv } = inst;
    let t = p.degree();
    // a_pows[i] = Aⁱ·C; terms with the same j share the right factor Bʲ.
    let mut a_pows = vec![c.clone()];
    for i in 1..t {
        a_pows.push(a * &a_pows[i - 1]);
    }
    let mut sum = Matrix::zeros(c.rows(), c.cols());
    let mut b_pow = Matrix::identity(b.rows());
    for j in 0..t {
        // Σ_{k>j} p_k A^{k−1−j}
        let mut inner = Matrix::zeros(c.rows(), c.cols());
        for k in (j + 1)..=t {
            inner = &inner + &a_pows[k - 1 - j].scale_left(&p.coeffs()[k]);
        }
        sum = &sum + &(&inner * &b_pow);
        b_pow = &b_pow * b;
    }
    let x = -&(&sum * p_b_inv);
    let check = &(a * &x) - &(&x * b);
    if !check.matches(c) {
        return Err(Error::NotFound("Sylvester substitution check failed".into()));
    }
    Ok(x)
}

/// For `M = [[B, α], [0, a]]` returns `T = [[I, y], [0, 1]]` with
/// `B·y − y·a = α` and `T·M·T⁻¹ = B ⊕ (a)`, together with `B ⊕ (a)`.
pub fn eliminate_corner<R: DivisionRing>(
    b: &Matrix<R>,
    alpha: &Matrix<R>,
    a: &R,
    p: &CentralPolynomial<R>,
) -> Result<(Matrix<R>, Matrix<R>)> {
    let n = b.rows();
    let inst = SylvesterInstance::new(
        b.clone(),
        Matrix::scalar(1, a.clone()),
        alpha.clone(),
        p.clone(),
    )?;
    let y = solve_sylvester(&inst)?;
    let mut t = Matrix::identity(n + 1);
    t.set_block(0, n, &y);
    let bd = Matrix::block_diag(&[b.clone(), Matrix::scalar(1, a.clone())]);
    let mut m = bd.clone();
    m.set_block(0, n, alpha);
    let ti = corner_inverse(&t, n);
    if !(&(&t * &m) * &ti).matches(&bd) {
        return Err(Error::NotFound("corner elimination check failed".into()));
    }
    Ok((t, bd))
}

fn corner_inverse<R: DivisionRing>(t: &Matrix<R>, n: usize) -> Matrix<R> {
    let mut ti = t.clone();
    ti.set_block(0, n, &-&t.block(0, n, n, n + 1));
    ti
}

/// Lifts a certificate for `B` to one for `[[B, α], [0, a]]`.
pub fn certify_corner<R: DivisionRing>(
    b_cert: &DiagCertificate<R>,
    alpha: &Matrix<R>,
    a: &R,
    p: &CentralPolynomial<R>,
) -> Result<DiagCertificate<R>> {
    let n = b_cert.size();
    let (t, _) = eliminate_corner(&b_cert.target, alpha, a, p)?;
    let inner = DiagCertificate::block_diag(&[
        b_cert.clone(),
        DiagCertificate::of_diagonal(&Matrix::scalar(1, a.clone())),
    ]);
    let ti = corner_inverse(&t, n);
    let mut target = inner.target.clone();
    target.set_block(0, n, alpha);
    Ok(DiagCertificate {
        p: &ti * &inner.p,
        diag: inner.diag,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, Quaternion, Q};
    use num_traits::{One, Zero};

    fn poly(c: &[i64]) -> CentralPolynomial<Q> {
        CentralPolynomial::new(c.iter().map(|&v| q(v, 1)).collect()).unwrap()
    }

    #[test]
    fn scalar_example() {
        let inst = SylvesterInstance::new(
            Matrix::<Q>::zeros(1, 1),
            Matrix::from_i64(&[&[1]]),
            Matrix::from_i64(&[&[5]]),
            poly(&[0, 1]),
        )
        .unwrap();
        assert_eq!(solve_sylvester(&inst).unwrap(), Matrix::from_i64(&[&[-5]]));
    }

    #[test]
    fn quadratic_example() {
        let inst = SylvesterInstance::new(
            Matrix::<Q>::from_i64(&[&[0, 0], &[1, -1]]),
            Matrix::from_i64(&[&[1]]),
            Matrix::from_i64(&[&[1], &[0]]),
            poly(&[0, 1, 1]),
        )
        .unwrap();
        let x = solve_sylvester(&inst).unwrap();
        assert_eq!(x, Matrix::column(&[q(-1, 1), q(-1, 2)]));
    }

    #[test]
    fn zero_rhs_and_errors() {
        let a = Matrix::<Q>::from_i64(&[&[0, 0], &[1, -1]]);
        let inst = SylvesterInstance::new(
            a.clone(),
            Matrix::from_i64(&[&[1]]),
            Matrix::zeros(2, 1),
            poly(&[0, 1, 1]),
        )
        .unwrap();
        assert!(solve_sylvester(&inst).unwrap().is_zero());
        let bad = SylvesterInstance::new(
            a.clone(),
            Matrix::from_i64(&[&[1]]),
            Matrix::zeros(2, 1),
            poly(&[0, 1]),
        );
        assert_eq!(bad.unwrap_err(), Error::AnnihilatorFails);
        let sing = SylvesterInstance::new(
            a,
            Matrix::from_i64(&[&[-1]]),
            Matrix::zeros(2, 1),
            poly(&[0, 1, 1]),
        );
        assert_eq!(sing.unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn corner_examples() {
        let (t, bd) = eliminate_corner(
            &Matrix::<Q>::zeros(1, 1),
            &Matrix::from_i64(&[&[5]]),
            &Q::one(),
            &poly(&[0, 1]),
        )
        .unwrap();
        assert_eq!(t, Matrix::from_i64(&[&[1, -5], &[0, 1]]));
        assert_eq!(bd, Matrix::from_i64(&[&[0, 0], &[0, 1]]));
        let (t, _) = eliminate_corner(
            &Matrix::<Q>::zeros(1, 1),
            &Matrix::zeros(1, 1),
            &Q::one(),
            &poly(&[0, 1]),
        )
        .unwrap();
        assert!(t.is_identity());
    }

    #[test]
    fn corner_on_g_block() {
        type Hq = Quaternion<Q>;
        let x = Hq::from_i64(2);
        let g = Matrix::from_rows(vec![vec![Hq::zero(), Hq::zero()], vec![Hq::one(), -x.clone()]]);
        let alpha = Matrix::column(&[Hq::unit_i(), Hq::unit_j()]);
        let p = CentralPolynomial::quadratic(x).unwrap();
        let (t, bd) = eliminate_corner(&g, &alpha, &-Hq::one(), &p).unwrap();
        let mut m = bd.clone();
        m.set_block(0, 2, &alpha);
        assert_eq!(&(&t * &m) * &t.inverse().unwrap(), bd);
    }
}
