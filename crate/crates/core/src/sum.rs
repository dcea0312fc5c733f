//! Sums of two (or three, over GF(2)) diagonalizable matrices.

use crate::canonical::{is_nilpotent, jordan_nilpotent, rcf_seeded, Companion};
use crate::error::{Error, Result};
use crate::matrix::{DiagCertificate, Decomposition, Matrix, Mode};
use crate::options::Options;
use crate::ring::{central_sample_skip, CenterClass, CentralPolynomial, DivisionRing};
use crate::sylvester::certify_corner;

/// A diagonalizable building block with a closed-form certificate.
#[derive(Clone, Debug)]
enum Piece<R> {
    /// `(a)`.
    Scalar(R),
    /// `[[0, 0], [1, −x]] = P·diag(0, −x)·P⁻¹`, `P = [[x, 0], [1, 1]]`.
    G(R),
    /// `[[x, 0], [1, 0]] = P·diag(0, x)·P⁻¹`, `P = [[0, x], [1, 1]]`.
    H(R),
    /// `[[x, 0], [1, 1]] = P·diag(1, x)·P⁻¹`, `P = [[0, x − 1], [1, 1]]`.
    HOne(R),
}

impl<R: DivisionRing> Piece<R> {
    fn cert(&self) -> Result<DiagCertificate<R>> {
        let (o, z) = (R::one(), R::zero());
        let two = |p: [[R; 2]; 2], d: [R; 2], t: [[R; 2]; 2]| {
            let p = Matrix::from_rows(p.into_iter().map(Vec::from).collect());
            if !p.is_invertible() {
                return Err(Error::Singular);
            }
            Ok(DiagCertificate {
                p,
                diag: d.to_vec(),
                target: Matrix::from_rows(t.into_iter().map(Vec::from).collect()),
            })
        };
        match self {
            Piece::Scalar(a) => Ok(DiagCertificate::of_diagonal(&Matrix::scalar(1, a.clone()))),
            Piece::G(x) => two(
                [[x.clone(), z.clone()], [o.clone(), o.clone()]],
                [z.clone(), -x.clone()],
                [[z.clone(), z.clone()], [o.clone(), -x.clone()]],
            ),
            Piece::H(x) => two(
                [[z.clone(), x.clone()], [o.clone(), o.clone()]],
                [z.clone(), x.clone()],
                [[x.clone(), z.clone()], [o.clone(), z.clone()]],
            ),
            Piece::HOne(x) => two(
                [[z.clone(), x.clone() - o.clone()], [o.clone(), o.clone()]],
                [o.clone(), x.clone()],
                [[x.clone(), z.clone()], [o.clone(), o]],
            ),
        }
    }
}

fn pieces_cert<R: DivisionRing>(pieces: &[Piece<R>]) -> Result<DiagCertificate<R>> {
    let certs = pieces.iter().map(|p| p.cert()).collect::<Result<Vec<_>>>()?;
    Ok(DiagCertificate::block_diag(&certs))
}

fn g_pieces<R: DivisionRing>(n: usize, x: &R) -> Vec<Piece<R>> {
    let mut v = vec![Piece::G(x.clone()); n / 2];
    if n % 2 == 1 {
        v.push(Piece::Scalar(R::zero()));
    }
    v
}

fn h_pieces<R: DivisionRing>(n: usize, x: &R) -> Vec<Piece<R>> {
    let mut v = vec![Piece::Scalar(R::zero())];
    if n.is_multiple_of(2) {
        v.extend(vec![Piece::H(x.clone()); (n - 2) / 2]);
        v.push(Piece::Scalar(x.clone()));
    } else {
        v.extend(vec![Piece::H(x.clone()); (n - 1) / 2]);
    }
    v
}

/// `G_n(x)`, `H_n(x)` and the row `u = (0, …, 0, 1)`.
#[derive(Clone, Debug)]
pub struct SummandTemplate<R> {
    pub n: usize,
    pub x: R,
    pub g: Matrix<R>,
    pub h: Matrix<R>,
    pub u: Matrix<R>,
}

/// `G_n(x) + H_n(x)` is the subdiagonal shift.
pub fn build_gh<R: DivisionRing>(n: usize, x: &R) -> Result<SummandTemplate<R>> {
    if x.is_zero() {
        return Err(Error::ZeroX);
    }
    let g = pieces_cert(&g_pieces(n, x))?.target;
    let h = pieces_cert(&h_pieces(n, x))?.target;
    let mut u = Matrix::zeros(1, n);
    u.set(0, n - 1, R::one());
    Ok(SummandTemplate {
        n,
        x: x.clone(),
        g,
        h,
        u,
    })
}

fn sum_of<R: DivisionRing>(parts: Vec<DiagCertificate<R>>, target: Matrix<R>) -> Decomposition<R> {
    Decomposition {
        mode: Mode::Sum,
        parts,
        target,
    }
}

fn pick_x<R: DivisionRing>(forbidden: &[R], opts: &Options) -> Result<R> {
    Ok(central_sample_skip(1, forbidden, opts.central_skip)?.remove(0))
}

fn split_last<R: DivisionRing>(c: &Companion<R>) -> (Matrix<R>, R) {
    let n = c.size();
    (Matrix::column(&c.coeffs[..n - 1]), c.coeffs[n - 1].clone())
}

/// Two-summand decomposition of a companion matrix; needs a center with
/// at least three elements once `n ≥ 3`.
pub fn sum_two_companion<R: DivisionRing>(
    c: &Companion<R>,
    opts: &Options,
) -> Result<Decomposition<R>> {
    let n = c.size();
    let target = c.to_matrix();
    let (zero, one) = (R::zero(), R::one());
    if n == 1 {
        return Ok(sum_of(
            vec![DiagCertificate::of_diagonal(&target), DiagCertificate::zero(1)],
            target,
        ));
    }
    if n == 2 {
        let (a0, a1) = (c.coeffs[0].clone(), c.coeffs[1].clone());
        let d = pick_x(&[zero.clone(), a1.clone()], opts)?;
        let e = (d.clone() - a1.clone()).inv().ok_or(Error::DivisionByZero)?;
        let first = DiagCertificate {
            p: Matrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![e, one.clone()]]),
            diag: vec![zero.clone(), a1.clone() - d.clone()],
            target: Matrix::from_rows(vec![
                vec![zero.clone(), zero.clone()],
                vec![one.clone(), a1 - d.clone()],
            ]),
        };
        let f = a0.clone() * d.inv().ok_or(Error::DivisionByZero)?;
        let second = DiagCertificate {
            p: Matrix::from_rows(vec![vec![one.clone(), f], vec![zero.clone(), one]]),
            diag: vec![zero.clone(), d.clone()],
            target: Matrix::from_rows(vec![vec![zero.clone(), a0], vec![zero, d]]),
        };
        return Ok(sum_of(vec![first, second], target));
    }
    let m = n - 1;
    let (v, a) = split_last(c);
    let odd = n % 2 == 1;
    let parts = match (odd, a.is_zero()) {
        (true, true) => {
            let x = pick_x(&[zero.clone(), one.clone()], opts)?;
            let p = CentralPolynomial::quadratic(x.clone())?;
            let first = certify_corner(&pieces_cert(&g_pieces(m, &x))?, &v, &-one.clone(), &p)?;
            let mut hp = vec![Piece::Scalar(zero.clone())];
            hp.extend(vec![Piece::H(x.clone()); (m - 2) / 2]);
            hp.push(Piece::HOne(x));
            vec![first, pieces_cert(&hp)?]
        }
        (true, false) => {
            let x = pick_x(&[zero.clone(), -a.clone()], opts)?;
            let p = CentralPolynomial::quadratic(x.clone())?;
            let first = certify_corner(&pieces_cert(&g_pieces(m, &x))?, &v, &a, &p)?;
            let mut hp = vec![Piece::Scalar(zero.clone())];
            hp.extend(vec![Piece::H(x); m / 2]);
            vec![first, pieces_cert(&hp)?]
        }
        (false, true) => {
            let x = pick_x(&[zero.clone(), one.clone()], opts)?;
            let p = CentralPolynomial::quadratic(-x.clone())?;
            let mut gp = vec![Piece::G(x.clone()); (m - 1) / 2];
            gp.push(Piece::G(one.clone()));
            let second = certify_corner(&pieces_cert(&h_pieces(m, &x))?, &v, &one, &p)?;
            vec![pieces_cert(&gp)?, second]
        }
        (false, false) => {
            let x = pick_x(&[zero.clone(), -a.clone()], opts)?;
            let p = CentralPolynomial::quadratic(-x.clone())?;
            let first = pieces_cert(&vec![Piece::G(x.clone()); n / 2])?;
            let second =
                certify_corner(&pieces_cert(&h_pieces(m, &x))?, &v, &(a + x.clone()), &p)?;
            vec![first, second]
        }
    };
    Ok(sum_of(parts, target))
}

/// Three-summand decomposition of a companion matrix in characteristic 2,
/// using `x = 1`.
pub fn sum_three_char2_companion<R: DivisionRing>(c: &Companion<R>) -> Result<Decomposition<R>> {
    if R::TAG.characteristic() != 2 {
        return Err(Error::NotCharTwo);
    }
    let n = c.size();
    let target = c.to_matrix();
    if n == 1 {
        return Ok(sum_of(vec![DiagCertificate::of_diagonal(&target)], target).pad_to(3));
    }
    if n == 2 && R::TAG.center_class() == CenterClass::Infinite {
        return Ok(sum_two_companion(c, &Options::default())?.pad_to(3));
    }
    let (zero, one) = (R::zero(), R::one());
    let m = n - 1;
    let (v, a) = split_last(c);
    let third = certify_corner(
        &DiagCertificate::zero(m),
        &v,
        &one,
        &CentralPolynomial::new(vec![zero.clone(), one.clone()])?,
    )?;
    let (first, second) = if n % 2 == 1 {
        let mut gp = g_pieces(m, &one);
        gp.push(Piece::Scalar(one.clone() + a));
        let mut hp = vec![Piece::Scalar(zero)];
        hp.extend(vec![Piece::H(one); m / 2]);
        (gp, hp)
    } else {
        let gp = vec![Piece::G(one.clone()); n / 2];
        let mut hp = h_pieces(m, &one);
        hp.push(Piece::Scalar(a));
        (gp, hp)
    };
    Ok(sum_of(
        vec![pieces_cert(&first)?, pieces_cert(&second)?, third],
        target,
    ))
}

/// Two summands for a nilpotent matrix: each Jordan block `J_m(0)` is
/// `G_m(x) + H_m(x)`.
pub fn sum_two_nilpotent<R: DivisionRing>(
    nm: &Matrix<R>,
    opts: &Options,
) -> Result<Decomposition<R>> {
    let jp = jordan_nilpotent(nm)?;
    // G and H pieces only need x ≠ 0; prefer x ∉ {0, 1} when available.
    let x = pick_x(&[R::zero(), R::one()], opts).unwrap_or_else(|_| R::one());
    let mut gs = Vec::new();
    let mut hs = Vec::new();
    for &m in &jp.parts {
        gs.push(pieces_cert(&g_pieces(m, &x))?);
        hs.push(pieces_cert(&h_pieces(m, &x))?);
    }
    let parts = vec![
        DiagCertificate::block_diag(&gs).transport(&jp.q)?,
        DiagCertificate::block_diag(&hs).transport(&jp.q)?,
    ];
    Ok(sum_of(parts, nm.clone()))
}

/// Sum dispatcher: two parts whenever the center has at least three
/// elements or the input is nilpotent or diagonal, otherwise three.
pub fn sum_decompose<R: DivisionRing>(a: &Matrix<R>, opts: &Options) -> Result<Decomposition<R>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("sum decomposition of a non-square matrix".into()));
    }
    let n = a.rows();
    if a.is_diagonal() {
        return Ok(sum_of(
            vec![DiagCertificate::of_diagonal(a), DiagCertificate::zero(n)],
            a.clone(),
        ));
    }
    if is_nilpotent(a) {
        return sum_two_nilpotent(a, opts);
    }
    let r = rcf_seeded(a, opts.seed);
    let mut blocks = Vec::with_capacity(r.blocks.len());
    for b in &r.blocks {
        let d = match sum_two_companion(b, opts) {
            Err(Error::CenterTooSmall { .. }) => sum_three_char2_companion(b)?,
            other => other?,
        };
        blocks.push(d);
    }
    let merged = Decomposition::block_diag(Mode::Sum, &blocks).pad_to(2);
    let mut out = merged.transport(&r.q)?;
    out.target = a.clone();
    Ok(out)
}
