//! A characteristic-2 quaternion division algebra over GF(2)(t).
//!
//! Basis `1, u, v, uv` with `u² = u + 1`, `v² = t`, `vu = (u + 1)v`.
//! Writing `x = α + βv` with `α, β ∈ K = GF(2)(t)(u) ≅ GF(4)(t)`, the
//! reduced norm is `N(α) + t·N(β)` where `N(a + bu) = a² + ab + b²`. The
//! first summand always has even degree in `t` and the second odd degree,
//! so the norm only vanishes at zero and the algebra is a division ring.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use super::{DivisionRing, RatFunc, RingTag};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Asq {
    pub c1: RatFunc,
    pub cu: RatFunc,
    pub cv: RatFunc,
    pub cuv: RatFunc,
}

type K = (RatFunc, RatFunc);

fn k_mul((a1, b1): &K, (a2, b2): &K) -> K {
    let bb = b1.clone() * b2.clone();
    (
        a1.clone() * a2.clone() + bb.clone(),
        a1.clone() * b2.clone() + b1.clone() * a2.clone() + bb,
    )
}

fn k_add((a1, b1): K, (a2, b2): K) -> K {
    (a1 + a2, b1 + b2)
}

// u ↦ u + 1
fn k_sigma((a, b): &K) -> K {
    (a.clone() + b.clone(), b.clone())
}

fn k_norm((a, b): &K) -> RatFunc {
    a.clone() * a.clone() + a.clone() * b.clone() + b.clone() * b.clone()
}

impl Asq {
    pub fn new(c1: RatFunc, cu: RatFunc, cv: RatFunc, cuv: RatFunc) -> Self {
        Asq { c1, cu, cv, cuv }
    }

    pub fn central(c: RatFunc) -> Self {
        Asq::new(c, RatFunc::zero(), RatFunc::zero(), RatFunc::zero())
    }

    pub fn u() -> Self {
        Asq::new(RatFunc::zero(), RatFunc::one(), RatFunc::zero(), RatFunc::zero())
    }

    pub fn v() -> Self {
        Asq::new(RatFunc::zero(), RatFunc::zero(), RatFunc::one(), RatFunc::zero())
    }

    pub fn t() -> Self {
        Asq::central(RatFunc::t())
    }

    fn split(&self) -> (K, K) {
        (
            (self.c1.clone(), self.cu.clone()),
            (self.cv.clone(), self.cuv.clone()),
        )
    }

    fn join((a, b): K, (c, d): K) -> Self {
        Asq::new(a, b, c, d)
    }

    /// `x̄ = σ(α) + βv`, so that `x·x̄ = N(x)`.
    pub fn conj(&self) -> Self {
        let (alpha, beta) = self.split();
        Asq::join(k_sigma(&alpha), beta)
    }

    pub fn reduced_norm(&self) -> RatFunc {
        let (alpha, beta) = self.split();
        k_norm(&alpha) + RatFunc::t() * k_norm(&beta)
    }
}

impl Add for Asq {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Asq::new(self.c1 + o.c1, self.cu + o.cu, self.cv + o.cv, self.cuv + o.cuv)
    }
}

impl Sub for Asq {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)] // characteristic 2
    fn sub(self, o: Self) -> Self {
        self + o
    }
}

impl Neg for Asq {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

impl Mul for Asq {
    type Output = Self;
    // (α₁ + β₁v)(α₂ + β₂v) = (α₁α₂ + t·β₁σ(β₂)) + (α₁β₂ + β₁σ(α₂))v
    fn mul(self, o: Self) -> Self {
        let (a1, b1) = self.split();
        let (a2, b2) = o.split();
        let (tb0, tb1) = k_mul(&b1, &k_sigma(&b2));
        let t = RatFunc::t();
        let first = k_add(k_mul(&a1, &a2), (t.clone() * tb0, t * tb1));
        let second = k_add(k_mul(&a1, &b2), k_mul(&b1, &k_sigma(&a2)));
        Asq::join(first, second)
    }
}

impl Zero for Asq {
    fn zero() -> Self {
        Asq::central(RatFunc::zero())
    }
    fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.cu.is_zero() && self.cv.is_zero() && self.cuv.is_zero()
    }
}

impl One for Asq {
    fn one() -> Self {
        Asq::central(RatFunc::one())
    }
}

impl DivisionRing for Asq {
    type Center = RatFunc;
    const TAG: RingTag = RingTag::Asq;

    fn inv(&self) -> Option<Self> {
        let n = self.reduced_norm().inv()?;
        let c = self.conj();
        Some(Asq::new(
            c.c1 * n.clone(),
            c.cu * n.clone(),
            c.cv * n.clone(),
            c.cuv * n,
        ))
    }

    fn is_central(&self) -> bool {
        self.cu.is_zero() && self.cv.is_zero() && self.cuv.is_zero()
    }

    fn from_center(c: &RatFunc) -> Self {
        Asq::central(c.clone())
    }

    fn center_dim() -> usize {
        4
    }

    fn center_coords(&self) -> Vec<RatFunc> {
        vec![
            self.c1.clone(),
            self.cu.clone(),
            self.cv.clone(),
            self.cuv.clone(),
        ]
    }

    fn from_center_coords(c: &[RatFunc]) -> Self {
        Asq::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }

    fn from_i64(n: i64) -> Self {
        Asq::central(RatFunc::from_i64(n))
    }

    fn central_candidates() -> Box<dyn Iterator<Item = Self>> {
        Box::new(RatFunc::central_candidates().map(Asq::central))
    }

    fn approx_abs(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let h: usize = [&self.c1, &self.cu, &self.cv, &self.cuv]
            .iter()
            .map(|c| c.height())
            .sum();
        1.0 / (1.0 + h as f64)
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, size: u32) -> Self {
        Asq::new(
            RatFunc::random(rng, size),
            RatFunc::random(rng, size),
            RatFunc::random(rng, size),
            RatFunc::random(rng, size),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn structure_constants() {
        let (u, v, one) = (Asq::u(), Asq::v(), Asq::one());
        assert_eq!(u.clone() * u.clone(), u.clone() + one.clone());
        assert_eq!(v.clone() * v.clone(), Asq::t());
        assert_eq!(v.clone() * u.clone(), (u.clone() + one) * v.clone());
        // vu expands to uv + v
        assert_eq!(v.clone() * u.clone(), u.clone() * v.clone() + v.clone());
        assert_ne!(u.clone() * v.clone(), v * u);
    }

    #[test]
    fn t_is_central_and_u_is_not() {
        let t = Asq::t();
        for g in [Asq::u(), Asq::v()] {
            assert_eq!(t.clone() * g.clone(), g * t.clone());
        }
        assert!(t.is_central());
        assert!(!Asq::u().is_central());
    }

    #[test]
    fn multiplication_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x = Asq::random(&mut rng, 3);
            let y = Asq::random(&mut rng, 3);
            let z = Asq::random(&mut rng, 3);
            assert_eq!((x.clone() * y.clone()) * z.clone(), x * (y * z));
        }
    }

    #[test]
    fn norm_is_multiplicative_and_nonvanishing() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..1000 {
            let x = Asq::random(&mut rng, 3);
            let y = Asq::random(&mut rng, 3);
            assert_eq!(
                (x.clone() * y.clone()).reduced_norm(),
                x.reduced_norm() * y.reduced_norm()
            );
            if !x.is_zero() {
                assert!(!x.reduced_norm().is_zero());
                let xi = x.inv().unwrap();
                assert_eq!(x.clone() * xi.clone(), Asq::one());
                assert_eq!(xi * x, Asq::one());
            }
        }
    }
}
