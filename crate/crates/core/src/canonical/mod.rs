//! Companion-block and nilpotent Jordan forms, and the explicit
//! diagonalizers the decomposers build on.

mod diag;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::DivisionRing;

pub use diag::{
    diagonalize_central_companion, diagonalize_field, diagonalize_involution,
    diagonalize_weighted_reversal, is_diagonalizable_bruteforce, is_diagonalizable_search,
    weighted_reversal,
};

/// Ones on the subdiagonal, `(a₀, …, a_{n−1})` in the last column.
#[derive(Clone, Debug, PartialEq)]
pub struct Companion<R> {
    pub coeffs: Vec<R>,
}

impl<R: DivisionRing> Companion<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "companion of size 0");
        Companion { coeffs }
    }

    pub fn size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_matrix(&self) -> Matrix<R> {
        let n = self.size();
        let mut m = Matrix::shift(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            m.set(i, n - 1, c.clone());
        }
        m
    }

    /// Reads back a companion matrix, or `None` if `m` has another shape.
    pub fn from_matrix(m: &Matrix<R>) -> Option<Self> {
        if !m.is_square() || m.rows() == 0 {
            return None;
        }
        let n = m.rows();
        for i in 0..n {
            for j in 0..n - 1 {
                let want_one = i == j + 1;
                let v = m.get(i, j);
                if (want_one && *v != R::one()) || (!want_one && !v.is_zero()) {
                    return None;
                }
            }
        }
        Some(Companion::new((0..n).map(|i| m.get(i, n - 1).clone()).collect()))
    }

    pub fn is_nilpotent_shape(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// `Q·(⊕ blocks)·Q⁻¹` equals the input.
#[derive(Clone, Debug)]
pub struct RcfResult<R> {
    pub blocks: Vec<Companion<R>>,
    pub q: Matrix<R>,
}

impl<R: DivisionRing> RcfResult<R> {
    pub fn block_matrix(&self) -> Matrix<R> {
        let ms: Vec<_> = self.blocks.iter().map(|b| b.to_matrix()).collect();
        Matrix::block_diag(&ms)
    }
}

/// Similarity to a direct sum of companion matrices.
pub fn rcf<R: DivisionRing>(a: &Matrix<R>) -> RcfResult<R> {
    rcf_seeded(a, 0)
}

/// [`rcf`] with an explicit seed for the random cyclic-vector candidates.
///
/// Each step grows a Krylov chain `v, Av, A²v, …` from the candidate with
/// the longest chain, moves to a basis `[chain | complement]` in which `A`
/// is block upper triangular with a companion leading block, clears the
/// off-diagonal block by solving `C·Y − Y·A₂ = −X` over the center, and
/// recurses on `A₂`. If the system has no solution the next candidate is
/// tried.
pub fn rcf_seeded<R: DivisionRing>(a: &Matrix<R>, seed: u64) -> RcfResult<R> {
    assert!(a.is_square(), "rcf of a non-square matrix");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rcf_rec(a, &mut rng)
}

fn rcf_rec<R: DivisionRing>(a: &Matrix<R>, rng: &mut ChaCha8Rng) -> RcfResult<R> {
    let n = a.rows();
    if n == 0 {
        return RcfResult {
            blocks: Vec::new(),
            q: Matrix::identity(0),
        };
    }
    let first = krylov(a, &Matrix::unit(n, 0));
    if first.0.cols() == n {
        return RcfResult {
            blocks: vec![Companion::new(first.1)],
            q: first.0,
        };
    }
    let mut chains = vec![first];
    for v in candidate_vectors::<R>(n, rng) {
        let c = krylov(a, &v);
        let full = c.0.cols() == n;
        chains.push(c);
        if full {
            break;
        }
    }
    chains.sort_by_key(|c| std::cmp::Reverse(c.0.cols()));
    for (k, coeffs) in &chains {
        if let Some(res) = split_off(a, k, coeffs, rng) {
            return res;
        }
    }
    panic!("no cyclic vector with an invariant complement was found");
}

fn candidate_vectors<R: DivisionRing>(n: usize, rng: &mut ChaCha8Rng) -> Vec<Matrix<R>> {
    let mut out: Vec<Matrix<R>> = (1..n).map(|i| Matrix::unit(n, i)).collect();
    out.push(Matrix::from_fn(n, 1, |_, _| R::one()));
    if R::TAG.is_finite() {
        let elems: Vec<R> = R::central_candidates().collect();
        let q = elems.len();
        let total = q.pow(n as u32);
        for code in 1..total {
            let mut c = code;
            out.push(Matrix::from_fn(n, 1, |_, _| {
                let e = elems[c % q].clone();
                c /= q;
                e
            }));
        }
    } else {
        for _ in 0..32 {
            out.push(Matrix::random(rng, n, 1, 3));
        }
    }
    out
}

/// Krylov basis `[v, Av, …, A^{k−1}v]` and the coefficients `c` with
/// `A^k v = Σ A^i v·c_i`.
fn krylov<R: DivisionRing>(a: &Matrix<R>, v: &Matrix<R>) -> (Matrix<R>, Vec<R>) {
    let n = a.rows();
    let mut cols = vec![v.clone()];
    loop {
        let k = Matrix::from_columns(&cols, n);
        let w = a * cols.last().unwrap();
        if cols.len() == n {
            let c = k.solve(&w).expect("n independent vectors span everything");
            return (k, c.entries().to_vec());
        }
        if let Some(c) = k.solve(&w) {
            return (k, c.entries().to_vec());
        }
        cols.push(w);
    }
}

fn split_off<R: DivisionRing>(
    a: &Matrix<R>,
    k: &Matrix<R>,
    coeffs: &[R],
    rng: &mut ChaCha8Rng,
) -> Option<RcfResult<R>> {
    let n = a.rows();
    let kk = k.cols();
    if kk == 0 || k.rank() < kk {
        return None;
    }
    let aug = k.hstack(&Matrix::identity(n));
    let mut cols: Vec<Matrix<R>> = (0..kk).map(|j| k.col(j)).collect();
    for p in aug.pivot_columns().into_iter().filter(|&p| p >= kk) {
        cols.push(Matrix::unit(n, p - kk));
    }
    let t = Matrix::from_columns(&cols, n);
    let m = &t.inverse().ok()? * &(a * &t);
    let comp = Companion::new(coeffs.to_vec());
    let c = comp.to_matrix();
    let x = m.block(0, kk, kk, n);
    let a2 = m.block(kk, n, kk, n);
    let y = solve_flattened(&c, &a2, &(-&x))?;
    let mut s = Matrix::identity(n);
    s.set_block(0, kk, &y);
    let rest = rcf_rec(&a2, rng);
    let q = &(&t * &s) * &Matrix::block_diag(&[Matrix::identity(kk), rest.q]);
    let mut blocks = vec![comp];
    blocks.extend(rest.blocks);
    let res = RcfResult { blocks, q };
    // Floating input can make the complement system numerically
    // inconsistent; only accept what reproduces the input.
    if R::TAG.is_exact() || crate::matrix::conjugate(&res.q, &res.block_matrix()).ok()?.matches(a)
    {
        Some(res)
    } else {
        None
    }
}

/// Solves `C·Y − Y·B = rhs` by writing every entry of `Y` in coordinates
/// over the center. Works for any `C`, `B`; returns `None` when the
/// system is inconsistent.
pub(crate) fn solve_flattened<R: DivisionRing>(
    c: &Matrix<R>,
    b: &Matrix<R>,
    rhs: &Matrix<R>,
) -> Option<Matrix<R>> {
    let (k, m) = (c.rows(), b.rows());
    let dim = R::center_dim();
    let unknowns = k * m * dim;
    if unknowns == 0 {
        return Some(Matrix::zeros(k, m));
    }
    let flatten = |mat: &Matrix<R>| -> Vec<R::Center> {
        mat.entries().iter().flat_map(|e| e.center_coords()).collect()
    };
    let mut columns: Vec<Vec<R::Center>> = Vec::with_capacity(unknowns);
    for idx in 0..unknowns {
        let (entry, basis) = (idx / dim, idx % dim);
        let (r, col) = (entry / m, entry % m);
        let mut coords = vec![<R::Center as num_traits::Zero>::zero(); dim];
        coords[basis] = <R::Center as num_traits::One>::one();
        let mut e = Matrix::zeros(k, m);
        e.set(r, col, R::from_center_coords(&coords));
        columns.push(flatten(&(&(c * &e) - &(&e * b))));
    }
    let lin = Matrix::from_fn(unknowns, unknowns, |i, j| columns[j][i].clone());
    let sol = lin.solve(&Matrix::column(&flatten(rhs)))?;
    let coords = sol.entries();
    Some(Matrix::from_fn(k, m, |r, col| {
        let start = (r * m + col) * dim;
        R::from_center_coords(&coords[start..start + dim])
    }))
}

/// Block sizes `m₁ ≥ … ≥ m_s` and a conjugator with
/// `Q·(⊕ J_{mᵢ}(0))·Q⁻¹ = N`, where `J_m(0)` has subdiagonal ones.
#[derive(Clone, Debug)]
pub struct JordanPartition<R> {
    pub parts: Vec<usize>,
    pub q: Matrix<R>,
}

impl<R: DivisionRing> JordanPartition<R> {
    pub fn block_matrix(&self) -> Matrix<R> {
        let bs: Vec<_> = self.parts.iter().map(|&m| Matrix::shift(m)).collect();
        Matrix::block_diag(&bs)
    }
}

pub fn is_nilpotent<R: DivisionRing>(n: &Matrix<R>) -> bool {
    n.is_square() && n.pow(n.rows() as u32).matches(&Matrix::zeros(n.rows(), n.rows()))
}

/// Jordan basis for a nilpotent matrix from its kernel chain
/// `ker N ⊂ ker N² ⊂ …`.
pub fn jordan_nilpotent<R: DivisionRing>(nm: &Matrix<R>) -> Result<JordanPartition<R>> {
    if !nm.is_square() {
        return Err(Error::ShapeMismatch("jordan form of a non-square matrix".into()));
    }
    let n = nm.rows();
    if !is_nilpotent(nm) {
        return Err(Error::NotNilpotent);
    }
    let mut powers = vec![Matrix::identity(n)];
    while !powers.last().unwrap().is_zero_approx() {
        let next = powers.last().unwrap() * nm;
        powers.push(next);
    }
    let index = powers.len() - 1;
    let mut heads: Vec<(Matrix<R>, usize)> = Vec::new();
    for m in (1..=index).rev() {
        let mut span: Vec<Matrix<R>> = powers[m - 1].kernel();
        for (u, l) in &heads {
            span.push(&powers[l - m] * u);
        }
        let mut rank = rank_of(&span, n);
        for cand in powers[m].kernel() {
            span.push(cand.clone());
            let r = rank_of(&span, n);
            if r > rank {
                rank = r;
                heads.push((cand, m));
            } else {
                span.pop();
            }
        }
    }
    let mut cols = Vec::with_capacity(n);
    for (u, l) in &heads {
        let mut w = u.clone();
        for _ in 0..*l {
            cols.push(w.clone());
            w = nm * &w;
        }
    }
    Ok(JordanPartition {
        parts: heads.iter().map(|h| h.1).collect(),
        q: Matrix::from_columns(&cols, n),
    })
}

fn rank_of<R: DivisionRing>(vs: &[Matrix<R>], n: usize) -> usize {
    if vs.is_empty() {
        0
    } else {
        Matrix::from_columns(vs, n).rank()
    }
}

impl<R: DivisionRing> Matrix<R> {
    fn is_zero_approx(&self) -> bool {
        self.matches(&Matrix::zeros(self.rows(), self.cols()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::conjugate;
    use crate::ring::{q, Asq, Fp, Quaternion, Q};
    use num_traits::Zero;

    type Hq = Quaternion<Q>;

    fn check_rcf<R: DivisionRing>(a: &Matrix<R>) -> RcfResult<R> {
        let r = rcf(a);
        assert!(conjugate(&r.q, &r.block_matrix()).unwrap().matches(a));
        r
    }

    #[test]
    fn companion_is_fixed() {
        let c = Companion::new(vec![q(1, 1), q(-2, 1), q(3, 1)]);
        let r = check_rcf(&c.to_matrix());
        assert_eq!(r.blocks, vec![c]);
        assert!(r.q.is_identity());
        assert_eq!(Companion::from_matrix(&r.block_matrix()), Some(r.blocks[0].clone()));
    }

    #[test]
    fn rcf_examples() {
        check_rcf(&Matrix::<Q>::from_i64(&[&[1, 0], &[0, 2]]));
        let r = check_rcf(&Matrix::<Q>::from_i64(&[&[1, 1], &[0, 1]]));
        assert_eq!(r.blocks, vec![Companion::new(vec![q(-1, 1), q(2, 1)])]);
        let r = check_rcf(&Matrix::<Q>::identity(3));
        assert_eq!(r.blocks.len(), 3);
        check_rcf(&Matrix::<Q>::zeros(2, 2));
    }

    #[test]
    fn rcf_noncommutative_scalars() {
        let i = Hq::unit_i();
        let r = check_rcf(&Matrix::diag(&[i.clone(), i.clone()]));
        assert_eq!(r.blocks.len(), 1);
        check_rcf(&Matrix::diag(&[i.clone(), i.clone(), Hq::unit_j()]));
        check_rcf(&Matrix::diag(&[Asq::u(), Asq::u(), Asq::v()]));
    }

    #[test]
    fn rcf_finite_fields() {
        check_rcf(&Matrix::<Fp<2>>::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]));
        check_rcf(&Matrix::<Fp<3>>::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]));
    }

    #[test]
    fn jordan_examples() {
        let z = jordan_nilpotent(&Matrix::<Q>::zeros(3, 3)).unwrap();
        assert_eq!(z.parts, vec![1, 1, 1]);
        assert!(z.q.is_identity());
        let s = jordan_nilpotent(&Matrix::<Q>::from_i64(&[&[0, 0], &[1, 0]])).unwrap();
        assert_eq!(s.parts, vec![2]);
        assert!(s.q.is_identity());
        let t = jordan_nilpotent(&Matrix::<Q>::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(t.parts, vec![2]);
        assert_eq!(t.q, Matrix::reversal(2));
        assert_eq!(
            jordan_nilpotent(&Matrix::<Q>::identity(2)).unwrap_err(),
            Error::NotNilpotent
        );
    }

    #[test]
    fn jordan_reconstructs() {
        let n = Matrix::<Hq>::from_fn(4, 4, |i, j| {
            if i > j {
                Hq::new(q(i as i64, 1), q(1, 1), q(j as i64, 2), Q::zero())
            } else {
                Hq::zero()
            }
        });
        let p = Matrix::<Hq>::from_fn(4, 4, |i, j| {
            if i <= j {
                Hq::new(q(1, 1), q(i as i64, 1), Q::zero(), q(j as i64, 1))
            } else {
                Hq::zero()
            }
        });
        let a = conjugate(&p, &n).unwrap();
        let jp = jordan_nilpotent(&a).unwrap();
        assert_eq!(jp.parts.iter().sum::<usize>(), 4);
        assert!(conjugate(&jp.q, &jp.block_matrix()).unwrap().matches(&a));
    }
}
