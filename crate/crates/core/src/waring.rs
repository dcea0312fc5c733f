//! Sums, products and linear combinations of two `k`-th powers over the
//! floating quaternions.
//!
//! Every matrix `P·diag(d)·P⁻¹` is the `k`-th power of `P·diag(ᵏ√d)·P⁻¹`,
//! so it is enough to decompose into diagonalizable parts and take roots
//! entrywise on the diagonals.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{DiagCertificate, Decomposition, Matrix};
use crate::options::Options;
use crate::product::product_decompose;
use crate::ring::{kth_root, Quaternion};
use crate::sum::sum_decompose;

type Hf = Quaternion<f64>;

/// Conjugators worse than this are rejected and the construction retried.
pub const MAX_CONDITION: f64 = 1e12;
pub const MAX_RETRIES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WaringMode {
    #[serde(rename = "waring-sum")]
    Sum,
    #[serde(rename = "waring-product")]
    Product,
    Lincomb,
    Squares,
}

impl WaringMode {
    pub fn name(self) -> &'static str {
        match self {
            WaringMode::Sum => "waring-sum",
            WaringMode::Product => "waring-product",
            WaringMode::Lincomb => "lincomb",
            WaringMode::Squares => "squares",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::Sum, Self::Product, Self::Lincomb, Self::Squares]
            .into_iter()
            .find(|m| m.name() == s)
    }
}

/// `X` and `Y` (as certificates whose targets they are) with exponents and,
/// for linear combinations, the two coefficients.
#[derive(Clone, Debug)]
pub struct WaringWitness {
    pub mode: WaringMode,
    pub ks: [u32; 2],
    pub coeffs: [f64; 2],
    pub parts: Vec<DiagCertificate<Hf>>,
    pub target: Matrix<Hf>,
    /// How many times the construction was restarted.
    pub retries: usize,
}

/// `λ₁X^{k₁} + λ₂Y^{k₂}` (sum-like modes) or `X^{k₁}·Y^{k₂}`.
pub fn evaluate(
    mode: WaringMode,
    ks: [u32; 2],
    coeffs: [f64; 2],
    x: &Matrix<Hf>,
    y: &Matrix<Hf>,
) -> Result<Matrix<Hf>> {
    let xp = x.pow(ks[0]);
    let yp = y.pow(ks[1]);
    match mode {
        WaringMode::Product | WaringMode::Squares => xp.try_mul(&yp),
        WaringMode::Sum | WaringMode::Lincomb => xp
            .scale_left(&Hf::scalar(coeffs[0]))
            .try_add(&yp.scale_left(&Hf::scalar(coeffs[1]))),
    }
}

pub fn tolerance(target: &Matrix<Hf>) -> f64 {
    1e-8 * (1.0 + target.frobenius())
}

impl WaringWitness {
    pub fn x(&self) -> &Matrix<Hf> {
        &self.parts[0].target
    }

    pub fn y(&self) -> &Matrix<Hf> {
        &self.parts[1].target
    }

    /// Frobenius residual of the witness against its target.
    pub fn residual(&self) -> Result<f64> {
        let v = evaluate(self.mode, self.ks, self.coeffs, self.x(), self.y())?;
        Ok((&v - &self.target).frobenius())
    }

    pub fn verify(&self) -> Result<f64> {
        let r = self.residual()?;
        if r <= tolerance(&self.target) {
            Ok(r)
        } else {
            Err(Error::IllConditioned(r))
        }
    }
}

fn root_cert(c: &DiagCertificate<Hf>, k: u32, scale: f64) -> Result<DiagCertificate<Hf>> {
    let diag: Vec<Hf> = c
        .diag
        .iter()
        .map(|d| kth_root(&(d.clone() * Hf::scalar(1.0 / scale)), k))
        .collect();
    DiagCertificate::new(c.p.clone(), diag)
}

/// Splits `A` into two diagonalizable parts in the given mode.
fn split(
    a: &Matrix<Hf>,
    mode: WaringMode,
    coeffs: [f64; 2],
    opts: &Options,
) -> Result<Decomposition<Hf>> {
    let n = a.rows();
    let sum_like = matches!(mode, WaringMode::Sum | WaringMode::Lincomb);
    if sum_like && a.is_diagonal() {
        // Share a diagonal target in proportion to the coefficients so
        // that scalar targets get scalar roots.
        let total = coeffs[0] + coeffs[1];
        if total.abs() > 1e-6 * (coeffs[0].abs() + coeffs[1].abs()) {
            let parts = coeffs
                .iter()
                .map(|c| DiagCertificate::of_diagonal(&a.scale_left(&Hf::scalar(c / total))))
                .collect();
            return Ok(Decomposition {
                mode: crate::Mode::Sum,
                parts,
                target: a.clone(),
            });
        }
    }
    let d = if sum_like {
        sum_decompose(a, opts)?
    } else {
        product_decompose(a, opts)?
    };
    if d.parts.len() != 2 {
        return Err(Error::NotFound(format!("{} parts instead of 2", d.parts.len())));
    }
    debug_assert_eq!(d.target.rows(), n);
    Ok(d)
}

fn build(
    a: &Matrix<Hf>,
    mode: WaringMode,
    ks: [u32; 2],
    coeffs: [f64; 2],
    opts: &Options,
) -> Result<WaringWitness> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("Waring target must be square".into()));
    }
    if ks.contains(&0) {
        return Err(Error::ShapeMismatch("exponents must be at least 1".into()));
    }
    if coeffs.iter().any(|c| *c == 0.0 || !c.is_finite()) {
        return Err(Error::ShapeMismatch("coefficients must be finite and nonzero".into()));
    }
    let mut worst = 0.0f64;
    for retry in 0..=MAX_RETRIES {
        let o = Options {
            central_skip: opts.central_skip + retry,
            seed: opts.seed.wrapping_add(retry as u64),
            ..*opts
        };
        let d = match split(a, mode, coeffs, &o) {
            Ok(d) => d,
            Err(Error::IllConditioned(c)) => {
                worst = worst.max(c);
                continue;
            }
            Err(e) => return Err(e),
        };
        let cond = d.parts.iter().map(|p| p.p.condition()).fold(0.0, f64::max);
        if cond > MAX_CONDITION {
            worst = worst.max(cond);
            continue;
        }
        let scales = match mode {
            WaringMode::Lincomb | WaringMode::Sum => coeffs,
            _ => [1.0, 1.0],
        };
        let parts = vec![
            root_cert(&d.parts[0], ks[0], scales[0])?,
            root_cert(&d.parts[1], ks[1], scales[1])?,
        ];
        let w = WaringWitness {
            mode,
            ks,
            coeffs,
            parts,
            target: a.clone(),
            retries: retry,
        };
        match w.verify() {
            Ok(_) => return Ok(w),
            Err(Error::IllConditioned(r)) => worst = worst.max(r),
            Err(e) => return Err(e),
        }
    }
    Err(Error::IllConditioned(worst))
}

/// `A = X^k + Y^k` or `A = X^k·Y^k`.
pub fn waring_two(
    a: &Matrix<Hf>,
    k: u32,
    mode: WaringMode,
    opts: &Options,
) -> Result<WaringWitness> {
    let mode = match mode {
        WaringMode::Squares => WaringMode::Product,
        WaringMode::Lincomb => WaringMode::Sum,
        m => m,
    };
    build(a, mode, [k, k], [1.0, 1.0], opts)
}

/// `A = λ₁X^{k₁} + λ₂Y^{k₂}` for real nonzero `λᵢ`.
pub fn lincomb_two(
    a: &Matrix<Hf>,
    ks: [u32; 2],
    coeffs: [f64; 2],
    opts: &Options,
) -> Result<WaringWitness> {
    build(a, WaringMode::Lincomb, ks, coeffs, opts)
}

/// `A = X²·Y²`.
pub fn product_two_squares(a: &Matrix<Hf>, opts: &Options) -> Result<WaringWitness> {
    build(a, WaringMode::Squares, [2, 2], [1.0, 1.0], opts)
}

/// `λ₁x₁^{k₁} + ⋯ + λₘx_m^{k_m}` with real nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalPolynomial {
    pub ks: Vec<u32>,
    pub coeffs: Vec<f64>,
}

impl DiagonalPolynomial {
    pub fn new(ks: Vec<u32>, coeffs: Vec<f64>) -> Result<Self> {
        if ks.len() != coeffs.len() || ks.len() < 2 {
            return Err(Error::ShapeMismatch(
                "a diagonal polynomial needs at least two variables".into(),
            ));
        }
        if ks.contains(&0) || coeffs.contains(&0.0) {
            return Err(Error::ShapeMismatch("exponents ≥ 1 and nonzero coefficients".into()));
        }
        Ok(DiagonalPolynomial { ks, coeffs })
    }

    pub fn arity(&self) -> usize {
        self.ks.len()
    }

    pub fn eval(&self, xs: &[Matrix<Hf>]) -> Result<Matrix<Hf>> {
        if xs.len() != self.arity() {
            return Err(Error::ShapeMismatch("wrong number of arguments".into()));
        }
        let n = xs[0].rows();
        let mut acc = Matrix::zeros(n, n);
        for ((x, k), c) in xs.iter().zip(&self.ks).zip(&self.coeffs) {
            acc = acc.try_add(&x.pow(*k).scale_left(&Hf::scalar(*c)))?;
        }
        Ok(acc)
    }
}

/// A preimage of `A` under `f`; all variables past the second are zero.
pub fn diagonal_preimage(
    f: &DiagonalPolynomial,
    a: &Matrix<Hf>,
    opts: &Options,
) -> Result<Vec<Matrix<Hf>>> {
    let n = a.rows();
    let mut out = if a.frobenius().is_zero() {
        vec![Matrix::zeros(n, n); 2]
    } else {
        let w = lincomb_two(a, [f.ks[0], f.ks[1]], [f.coeffs[0], f.coeffs[1]], opts)?;
        vec![w.x().clone(), w.y().clone()]
    };
    out.resize(f.arity(), Matrix::zeros(n, n));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: &Matrix<Hf>, b: &Matrix<Hf>) -> bool {
        (a - b).frobenius() <= 1e-12 * (1.0 + b.frobenius())
    }

    #[test]
    fn scalar_examples() {
        let o = Options::default();
        let two = Matrix::scalar(2, Hf::scalar(2.0));
        let w = waring_two(&two, 2, WaringMode::Sum, &o).unwrap();
        assert!(close(w.x(), &Matrix::identity(2)) && close(w.y(), &Matrix::identity(2)));
        let w = waring_two(&Matrix::scalar(2, Hf::scalar(-1.0)), 2, WaringMode::Product, &o).unwrap();
        assert!(close(w.x(), &Matrix::scalar(2, Hf::unit_i())));
        assert!(close(w.y(), &Matrix::identity(2)));
        let w = lincomb_two(&Matrix::scalar(2, Hf::scalar(5.0)), [3, 3], [2.0, 3.0], &o).unwrap();
        assert!(close(w.x(), &Matrix::identity(2)) && close(w.y(), &Matrix::identity(2)));
        let w = product_two_squares(&Matrix::scalar(1, Hf::unit_j()), &o).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(w.x(), &Matrix::scalar(1, Hf::new(h, 0.0, h, 0.0))));
    }

    #[test]
    fn random_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let o = Options::default();
        for n in [2, 3] {
            for _ in 0..5 {
                let a = Matrix::<Hf>::random(&mut rng, n, n, 3);
                for k in [2, 3, 5] {
                    waring_two(&a, k, WaringMode::Sum, &o).unwrap();
                    waring_two(&a, k, WaringMode::Product, &o).unwrap();
                }
                lincomb_two(&a, [2, 5], [-1.0, std::f64::consts::PI], &o).unwrap();
                product_two_squares(&a, &o).unwrap();
            }
        }
    }

    #[test]
    fn lincomb_unit_matches_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let o = Options::default();
        for _ in 0..10 {
            let a = Matrix::<Hf>::random(&mut rng, 2, 2, 3);
            let s = waring_two(&a, 3, WaringMode::Sum, &o).unwrap();
            let l = lincomb_two(&a, [3, 3], [1.0, 1.0], &o).unwrap();
            assert_eq!(s.parts, l.parts);
        }
    }

    #[test]
    fn preimages() {
        let o = Options::default();
        let f = DiagonalPolynomial::new(vec![2, 2], vec![1.0, 1.0]).unwrap();
        let xs = diagonal_preimage(&f, &Matrix::scalar(2, Hf::scalar(2.0)), &o).unwrap();
        assert!(close(&xs[0], &Matrix::identity(2)) && close(&xs[1], &Matrix::identity(2)));
        let f4 = DiagonalPolynomial::new(vec![1, 2, 3, 4], vec![1.0, -2.0, 3.0, 0.5]).unwrap();
        let xs = diagonal_preimage(&f4, &Matrix::zeros(3, 3), &o).unwrap();
        assert!(xs.iter().all(|x| x.frobenius() == 0.0));
        let f3 = DiagonalPolynomial::new(vec![3, 2, 5], vec![2.0, 1.0, 1.0]).unwrap();
        let a = Matrix::<Hf>::random(&mut ChaCha8Rng::seed_from_u64(1), 3, 3, 3);
        let xs = diagonal_preimage(&f3, &a, &o).unwrap();
        assert_eq!(xs[2].frobenius(), 0.0);
        assert!((&f3.eval(&xs).unwrap() - &a).frobenius() <= tolerance(&a));
        assert!(DiagonalPolynomial::new(vec![2], vec![1.0]).is_err());
    }
}
