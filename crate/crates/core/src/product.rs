//! Products of two (or at most four) diagonalizable matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::{
    diagonalize_central_companion, diagonalize_field, diagonalize_involution, diagonalize_weighted_reversal,
    is_nilpotent, jordan_nilpotent, rcf_seeded, weighted_reversal, Companion,
};
use crate::error::{Error, Result};
use crate::matrix::{DiagCertificate, Decomposition, Matrix, Mode};
use crate::options::{Options, Strategy};
use crate::ring::{central_sample_skip, CenterClass, CentralPolynomial, DivisionRing, RingTag};
use crate::sharpness::cached_closure;
use crate::sylvester::{certify_corner, eliminate_corner};

fn product_of<R: DivisionRing>(parts: Vec<DiagCertificate<R>>, target: Matrix<R>) -> Decomposition<R> {
    Decomposition {
        mode: Mode::Product,
        parts,
        target,
    }
}

fn trivial<R: DivisionRing>(c: &Companion<R>) -> Decomposition<R> {
    let t = c.to_matrix();
    product_of(vec![DiagCertificate::of_diagonal(&t), DiagCertificate::identity(1)], t)
}

/// First central `a` (after `skip` admissible ones) satisfying `ok`.
fn central_find<R: DivisionRing>(skip: usize, ok: impl Fn(&R) -> bool) -> Option<R> {
    R::central_candidates()
        .take(10_000)
        .filter(|a| ok(a))
        .nth(skip)
}

/// `[[R_{n−1}, α], [0, corner]]` with `αⱼ = a_{n−1−j}`: the factor left
/// after peeling a (weighted) reversal off a companion matrix.
fn flipped<R: DivisionRing>(c: &Companion<R>) -> Matrix<R> {
    Matrix::column(&c.coeffs[1..].iter().rev().cloned().collect::<Vec<_>>())
}

/// `C = W·F` with `W` a reversal (or weighted reversal when `a₀ = ±1`) and
/// `F` flipped; requires characteristic ≠ 2.
pub fn product_two_char_ne2<R: DivisionRing>(
    c: &Companion<R>,
    opts: &Options,
) -> Result<Decomposition<R>> {
    if R::TAG.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    let n = c.size();
    if n == 1 {
        return Ok(trivial(c));
    }
    let one = R::one();
    let a0 = c.coeffs[0].clone();
    let alpha = flipped(c);
    let inner = diagonalize_involution(&Matrix::reversal(n - 1))?;
    let z2 = CentralPolynomial::new(vec![-one.clone(), R::zero(), one.clone()])?;
    let unit = a0.separated(&one) && a0.separated(&-one.clone());
    let (w, corner) = if unit {
        (diagonalize_involution(&Matrix::reversal(n))?, a0)
    } else {
        let a = central_find(opts.central_skip, |a: &R| {
            let s = a.clone() * a.clone();
            !a.is_zero() && s.separated(&one) && s.separated(&-one.clone())
        })
        .ok_or(if R::TAG == RingTag::Gf3 {
            Error::Gf3Unsupported
        } else {
            Error::CenterTooSmall { needed: 1 }
        })?;
        let sq = a.clone() * a.clone();
        let corner = sq.inv().ok_or(Error::DivisionByZero)? * a0;
        (diagonalize_weighted_reversal(n, &sq, &a)?, corner)
    };
    let f = certify_corner(&inner, &alpha, &corner, &z2)?;
    Ok(product_of(vec![w, f], c.to_matrix()))
}

/// Coefficients `b` (companion of `∏(z − λᵢ)`) and `c` with
/// `C = companion(b)·[[I, c′], [0, c_{n−1}]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductFactors<R> {
    pub lambdas: Vec<R>,
    pub b: Vec<R>,
    pub c: Vec<R>,
}

impl<R: DivisionRing> ProductFactors<R> {
    pub fn new(target: &Companion<R>, lambdas: &[R]) -> Result<Self> {
        let n = target.size();
        if lambdas.len() != n || lambdas.iter().any(|l| l.is_zero()) {
            return Err(Error::RootMismatch);
        }
        let poly = CentralPolynomial::from_roots(lambdas)?;
        let b: Vec<R> = poly.coeffs()[..n].iter().map(|x| -x.clone()).collect();
        let a = &target.coeffs;
        if !b[0].separated(&a[0]) {
            return Err(Error::RootMismatch);
        }
        let last = b[0].inv().ok_or(Error::DivisionByZero)? * a[0].clone();
        let mut c: Vec<R> = (1..n).map(|i| a[i].clone() - b[i].clone() * last.clone()).collect();
        c.push(last);
        Ok(ProductFactors {
            lambdas: lambdas.to_vec(),
            b,
            c,
        })
    }
}

/// Two factors from a spectrum of `n` distinct nonzero central elements.
pub fn product_two_central_rich<R: DivisionRing>(
    c: &Companion<R>,
    opts: &Options,
) -> Result<Decomposition<R>> {
    let n = c.size();
    if n == 1 {
        return Ok(trivial(c));
    }
    let mut attempt = 0;
    loop {
        let lambdas = central_sample_skip(n, &[R::zero()], opts.central_skip + attempt)?;
        match product_two_central_rich_with(c, &lambdas) {
            Err(Error::RootMismatch) if attempt < n + 8 => attempt += 1,
            other => return other,
        }
    }
}

/// [`product_two_central_rich`] with a prescribed spectrum.
pub fn product_two_central_rich_with<R: DivisionRing>(
    c: &Companion<R>,
    lambdas: &[R],
) -> Result<Decomposition<R>> {
    let n = c.size();
    let pf = ProductFactors::new(c, lambdas)?;
    let first = diagonalize_central_companion(&Companion::new(pf.b.clone()), lambdas)?;
    let one = R::one();
    let tail = Matrix::column(&pf.c[..n - 1]);
    let second = certify_corner(
        &DiagCertificate::identity(n - 1),
        &tail,
        &pf.c[n - 1],
        &CentralPolynomial::new(vec![-one.clone(), one])?,
    )?;
    Ok(product_of(vec![first, second], c.to_matrix()))
}

/// Pads every part of `d` with a trailing `1 × 1` block: the first part gets
/// `corner`, the others 1.
fn extend_by<R: DivisionRing>(d: &Decomposition<R>, corner: &R) -> Decomposition<R> {
    let parts = d
        .parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let s = if i == 0 { corner.clone() } else { R::one() };
            DiagCertificate::block_diag(&[p.clone(), DiagCertificate::of_diagonal(&Matrix::scalar(1, s))])
        })
        .collect();
    product_of(
        parts,
        Matrix::block_diag(&[d.target.clone(), Matrix::scalar(1, corner.clone())]),
    )
}

fn central_rich_matrix<R: DivisionRing>(m: &Matrix<R>, opts: &Options) -> Result<Decomposition<R>> {
    let o = Options {
        strategy: Strategy::CentralRich,
        ..*opts
    };
    product_decompose(m, &o)
}

/// At most four factors in characteristic 2 over a noncommutative ring
/// with infinite center: the (weighted) reversal and the reversal core of
/// the flipped factor have central entries, and each is split into two.
pub fn product_char2<R: DivisionRing>(c: &Companion<R>, opts: &Options) -> Result<Decomposition<R>> {
    if R::TAG.characteristic() != 2 {
        return Err(Error::NotCharTwo);
    }
    let n = c.size();
    if n == 1 {
        return Ok(trivial(c).pad_to(2));
    }
    let one = R::one();
    let target = c.to_matrix();
    let a0 = c.coeffs[0].clone();
    let (w, corner) = if a0 != one {
        (Matrix::reversal(n), a0)
    } else {
        let a = central_find(opts.central_skip, |a: &R| !a.is_zero() && *a != one)
            .ok_or(Error::CenterTooSmall { needed: 1 })?;
        let sq = a.clone() * a;
        let corner = sq.inv().ok_or(Error::DivisionByZero)? * a0;
        (weighted_reversal(n, &sq), corner)
    };
    let mut parts = central_rich_matrix(&w, opts)?.parts;
    // (z − 1)² kills the reversal core; p(corner) is invertible as corner ≠ 1.
    let p = CentralPolynomial::new(vec![one.clone(), R::zero(), one.clone()])?;
    let core = Matrix::reversal(n - 1);
    let (t, _) = eliminate_corner(&core, &flipped(c), &corner, &p)?;
    let ti = t.inverse()?;
    let core_parts = if n == 2 {
        product_of(vec![DiagCertificate::identity(1)], core)
    } else {
        central_rich_matrix(&core, opts)?
    };
    for part in extend_by(&core_parts, &corner).parts {
        parts.push(part.transport(&ti)?);
    }
    Ok(product_of(parts, target))
}

/// Decomposition of a single companion block following `opts.strategy`.
fn product_block<R: DivisionRing>(c: &Companion<R>, opts: &Options) -> Result<Decomposition<R>> {
    let char2 = R::TAG.characteristic() == 2;
    match opts.strategy {
        Strategy::CharNe2 => product_two_char_ne2(c, opts),
        Strategy::CentralRich => product_two_central_rich(c, opts),
        Strategy::Char2 => product_char2(c, opts),
        Strategy::Auto => match R::TAG {
            RingTag::Gf3 => gf3_block(c, opts),
            RingTag::Gf4 => match product_two_central_rich(c, opts) {
                Err(Error::CenterTooSmall { .. }) => random_pair(&c.to_matrix(), opts.seed),
                other => other,
            },
            _ if char2 => product_two_central_rich(c, opts),
            _ => product_two_char_ne2(c, opts),
        },
    }
}

/// Over GF(3) two factors exist when `a₀ ∉ {±1}`; otherwise a minimal
/// decomposition (at most three factors) is read off the exhaustive table.
fn gf3_block<R: DivisionRing>(c: &Companion<R>, opts: &Options) -> Result<Decomposition<R>> {
    match product_two_char_ne2(c, opts) {
        Err(Error::Gf3Unsupported) if c.size() <= 3 => finite_witness(&c.to_matrix()),
        other => other,
    }
}

/// Draws diagonalizable `D = P·Δ·P⁻¹` with `Δ` invertible until `D⁻¹·A`
/// is diagonalizable too. Finite fields only.
fn random_pair<R: DivisionRing>(a: &Matrix<R>, seed: u64) -> Result<Decomposition<R>> {
    let n = a.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let units: Vec<R> = R::central_candidates().filter(|x| !x.is_zero()).collect();
    for _ in 0..RANDOM_PAIR_TRIES {
        let p = Matrix::<R>::random(&mut rng, n, n, 1);
        let Ok(pi) = p.inverse() else { continue };
        let diag: Vec<R> = (0..n).map(|_| units[rng.gen_range(0..units.len())].clone()).collect();
        let d = &(&p * &Matrix::diag(&diag)) * &pi;
        let rest = &d.inverse()? * a;
        if let Some(second) = diagonalize_field(&rest)? {
            let first = DiagCertificate { p, diag, target: d };
            return Ok(product_of(vec![first, second], a.clone()));
        }
    }
    Err(Error::NotFound(format!("no two-factor split in {RANDOM_PAIR_TRIES} draws")))
}

const RANDOM_PAIR_TRIES: usize = 20_000;

/// Minimal decomposition from the exhaustive product closure.
fn finite_witness<R: DivisionRing>(m: &Matrix<R>) -> Result<Decomposition<R>> {
    let closure = match cached_closure::<R>(m.rows(), Mode::Product) {
        Err(Error::TooLarge(_)) if R::TAG == RingTag::Gf3 => return Err(Error::Gf3Unsupported),
        other => other?,
    };
    closure
        .decompose(m)
        .ok_or_else(|| Error::NotFound("no product of diagonalizable matrices".into()))
}

/// Product dispatcher.
///
/// Over GF(2) the only nonsingular product of diagonalizable matrices is
/// `I`; singular inputs are decomposed from the exhaustive table.
pub fn product_decompose<R: DivisionRing>(
    a: &Matrix<R>,
    opts: &Options,
) -> Result<Decomposition<R>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("product decomposition of a non-square matrix".into()));
    }
    let n = a.rows();
    if opts.strategy == Strategy::CharNe2 && R::TAG.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    if opts.strategy == Strategy::Char2 && R::TAG.characteristic() != 2 {
        return Err(Error::NotCharTwo);
    }
    if a.is_diagonal() {
        return Ok(product_of(
            vec![DiagCertificate::of_diagonal(a), DiagCertificate::identity(n)],
            a.clone(),
        ));
    }
    if R::TAG == RingTag::Gf2 {
        if a.is_invertible() {
            return Err(Error::Gf2NonsingularUnreachable);
        }
        return finite_witness(a);
    }
    let (blocks, q): (Vec<Companion<R>>, Matrix<R>) = if is_nilpotent(a) {
        let jp = jordan_nilpotent(a)?;
        let blocks = jp.parts.iter().map(|&m| Companion::new(vec![R::zero(); m])).collect();
        (blocks, jp.q)
    } else {
        let r = rcf_seeded(a, opts.seed);
        (r.blocks, r.q)
    };
    let decs = blocks
        .iter()
        .map(|b| product_block(b, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Decomposition::block_diag(Mode::Product, &decs)
        .pad_to(2)
        .transport(&q)?;
    out.target = a.clone();
    if R::TAG.center_class() == CenterClass::Infinite && !R::TAG.is_exact() {
        // Floating rings: the transported target must still match.
        let report = out.verify();
        if !report.ok {
            return Err(Error::IllConditioned(report.residual));
        }
    }
    Ok(out)
}
