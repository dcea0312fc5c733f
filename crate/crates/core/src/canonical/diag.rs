use crate::error::{Error, Result};
use crate::matrix::{DiagCertificate, Matrix};
use crate::ring::{CentralPolynomial, DivisionRing};

use super::Companion;

fn require_char_ne2<R: DivisionRing>() -> Result<()> {
    if R::TAG.characteristic() == 2 {
        Err(Error::CharTwo)
    } else {
        Ok(())
    }
}

/// Scales a column from the right so its first nonzero entry is 1.
fn normalize<R: DivisionRing>(v: &Matrix<R>) -> Matrix<R> {
    let scale = v.max_abs();
    match v.entries().iter().find(|x| !x.is_negligible(scale)) {
        Some(f) => v.scale_right(&f.inv().expect("nonzero")),
        None => v.clone(),
    }
}

/// Diagonalizes `M` with `M² = I` (characteristic ≠ 2) from bases of the
/// images of `(I ± M)/2`.
pub fn diagonalize_involution<R: DivisionRing>(m: &Matrix<R>) -> Result<DiagCertificate<R>> {
    require_char_ne2::<R>()?;
    if !m.is_square() {
        return Err(Error::ShapeMismatch("involution must be square".into()));
    }
    let n = m.rows();
    let id = Matrix::identity(n);
    if !(m * m).matches(&id) {
        return Err(Error::NotInvolution);
    }
    let half = R::from_i64(2).inv().expect("characteristic is not 2");
    let plus = (&id + m).scale_right(&half);
    let minus = (&id - m).scale_right(&half);
    let mut cols = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for (e, sign) in [(&plus, 1), (&minus, -1)] {
        for j in e.pivot_columns() {
            cols.push(normalize(&e.col(j)));
            diag.push(R::from_i64(sign));
        }
    }
    let p = Matrix::from_columns(&cols, n);
    if p.cols() != n {
        return Err(Error::Singular);
    }
    Ok(DiagCertificate {
        p,
        diag,
        target: m.clone(),
    })
}

/// The anti-diagonal matrix with top-right corner `w` and all other
/// anti-diagonal entries 1.
pub fn weighted_reversal<R: DivisionRing>(n: usize, w: &R) -> Matrix<R> {
    let mut m = Matrix::reversal(n);
    m.set(0, n - 1, w.clone());
    m
}

/// Diagonalizes [`weighted_reversal`]`(n, a²)` for central `a`.
///
/// The corner pair `e₀ ± a⁻¹e_{n−1}` gives eigenvalues `±a`; every inner
/// pair `eᵢ ± e_{n−1−i}` gives `±1`, and the middle vector of odd `n`
/// gives 1.
pub fn diagonalize_weighted_reversal<R: DivisionRing>(
    n: usize,
    w: &R,
    a: &R,
) -> Result<DiagCertificate<R>> {
    require_char_ne2::<R>()?;
    if !a.is_central() || !w.is_central() {
        return Err(Error::NonCentralRoot);
    }
    if a.clone() * a.clone() != *w {
        return Err(Error::RootMismatch);
    }
    let target = weighted_reversal(n, w);
    if n == 1 {
        return Ok(DiagCertificate::of_diagonal(&target));
    }
    let ai = a.inv().ok_or(Error::DivisionByZero)?;
    let one = R::one();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut dplus = Vec::new();
    let mut dminus = Vec::new();
    let pair = |i: usize, j: usize, c: &R, sign: i64| {
        let mut v = Matrix::zeros(n, 1);
        v.set(i, 0, one.clone());
        v.set(j, 0, c.clone() * R::from_i64(sign));
        v
    };
    plus.push(pair(0, n - 1, &ai, 1));
    dplus.push(a.clone());
    minus.push(pair(0, n - 1, &ai, -1));
    dminus.push(-a.clone());
    for i in 1..n / 2 {
        plus.push(pair(i, n - 1 - i, &one, 1));
        dplus.push(one.clone());
        minus.push(pair(i, n - 1 - i, &one, -1));
        dminus.push(-one.clone());
    }
    if n % 2 == 1 {
        plus.push(Matrix::unit(n, n / 2));
        dplus.push(one.clone());
    }
    plus.extend(minus);
    dplus.extend(dminus);
    Ok(DiagCertificate {
        p: Matrix::from_columns(&plus, n),
        diag: dplus,
        target,
    })
}

/// Diagonalizes a companion matrix whose polynomial splits into distinct
/// central roots. `P⁻¹` is the row Vandermonde matrix of the roots.
pub fn diagonalize_central_companion<R: DivisionRing>(
    c: &Companion<R>,
    roots: &[R],
) -> Result<DiagCertificate<R>> {
    let n = c.size();
    if roots.len() != n || roots.iter().any(|r| !r.is_central()) {
        return Err(Error::RootMismatch);
    }
    for i in 0..n {
        for j in 0..i {
            if !roots[i].separated(&roots[j]) {
                return Err(Error::RepeatedRoot);
            }
        }
    }
    let poly = CentralPolynomial::from_roots(roots)?;
    // ∏(z − λᵢ) = zⁿ − Σ aᵢ zⁱ
    let consistent = poly.coeffs()[..n]
        .iter()
        .zip(&c.coeffs)
        .all(|(p, a)| !(-p.clone()).separated(a));
    if !consistent {
        return Err(Error::RootMismatch);
    }
    let vander = Matrix::from_fn(n, n, |i, j| roots[i].pow(j as u32));
    Ok(DiagCertificate {
        p: vander.inverse()?,
        diag: roots.to_vec(),
        target: c.to_matrix(),
    })
}

fn require_finite<R: DivisionRing>() -> Result<Vec<R>> {
    if R::TAG.is_finite() {
        Ok(R::central_candidates().collect())
    } else {
        Err(Error::UnsupportedRing(R::TAG))
    }
}

/// Eigenspace diagonalization over a finite field, or `None` when the
/// eigenspaces do not span.
pub fn diagonalize_field<R: DivisionRing>(a: &Matrix<R>) -> Result<Option<DiagCertificate<R>>> {
    let elems = require_finite::<R>()?;
    let n = a.rows();
    let mut cols = Vec::new();
    let mut diag = Vec::new();
    for l in elems {
        for v in (a - &Matrix::scalar(n, l.clone())).kernel() {
            cols.push(v);
            diag.push(l.clone());
        }
    }
    if cols.len() < n {
        return Ok(None);
    }
    Ok(Some(DiagCertificate {
        p: Matrix::from_columns(&cols, n),
        diag,
        target: a.clone(),
    }))
}

/// Diagonalizability over a finite field from eigenspace dimensions:
/// `Σ_λ dim ker(A − λI) = n`.
pub fn is_diagonalizable_bruteforce<R: DivisionRing>(a: &Matrix<R>) -> Result<bool> {
    let elems = require_finite::<R>()?;
    let n = a.rows();
    let total: usize = elems
        .into_iter()
        .map(|l| n - (a - &Matrix::scalar(n, l)).rank())
        .sum();
    Ok(total == n)
}

/// Diagonalizability by exhaustive search for `P` invertible and `Δ`
/// diagonal with `A·P = P·Δ`. Independent of the rank-based test; only
/// meant for tiny cases.
pub fn is_diagonalizable_search<R: DivisionRing>(a: &Matrix<R>) -> Result<bool> {
    let elems = require_finite::<R>()?;
    let n = a.rows();
    let q = elems.len();
    let space = (q as u64).checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if space > 1 << 16 {
        return Err(Error::TooLarge(format!("{space} candidate conjugators")));
    }
    let decode = |mut code: u64| {
        Matrix::from_fn(n, n, |_, _| {
            let e = elems[(code % q as u64) as usize].clone();
            code /= q as u64;
            e
        })
    };
    let mut diags = Vec::new();
    multisets(q, n, 0, &mut Vec::new(), &mut diags);
    for idx in diags {
        let d = Matrix::diag(&idx.iter().map(|&i| elems[i].clone()).collect::<Vec<_>>());
        for code in 0..space {
            let p = decode(code);
            if &p * &d == a * &p && p.is_invertible() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn multisets(q: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for i in start..q {
        cur.push(i);
        multisets(q, n, i, cur, out);
        cur.pop();
    }
}
