//! Polynomials over GF(2) and the rational function field GF(2)(t).

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use super::{DivisionRing, RingTag};

/// A polynomial in `t` over GF(2), packed low degree first into 64-bit limbs.
/// Invariant: no trailing zero limbs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    limbs: Vec<u64>,
}

impl Poly2 {
    pub fn from_u64(bits: u64) -> Self {
        Self::from_limbs(vec![bits])
    }

    fn from_limbs(mut limbs: Vec<u64>) -> Self {
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        Poly2 { limbs }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_u64(2)
    }

    /// Coefficient list, low degree first, as 0/1 values.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut limbs = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                limbs[i / 64] |= 1 << (i % 64);
            }
        }
        Self::from_limbs(limbs)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.bit(i) as u8).collect(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn bit(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|l| (l >> (i % 64)) & 1 == 1)
    }

    fn shl(&self, s: usize) -> Self {
        if self.limbs.is_empty() {
            return self.clone();
        }
        let (w, b) = (s / 64, s % 64);
        let mut out = vec![0u64; self.limbs.len() + w + 1];
        for (i, &l) in self.limbs.iter().enumerate() {
            out[i + w] ^= l << b;
            if b != 0 {
                out[i + w + 1] ^= l >> (64 - b);
            }
        }
        Self::from_limbs(out)
    }

    fn xor_assign(&mut self, o: &Self) {
        if self.limbs.len() < o.limbs.len() {
            self.limbs.resize(o.limbs.len(), 0);
        }
        for (a, b) in self.limbs.iter_mut().zip(&o.limbs) {
            *a ^= b;
        }
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut q = Poly2::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let s = rd - dd;
            r.xor_assign(&d.shl(s));
            q.xor_assign(&Poly2::one().shl(s));
        }
        (q, r)
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

impl Add for Poly2 {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.xor_assign(&o);
        self
    }
}

impl Mul for Poly2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut acc = Poly2::zero();
        if let Some(d) = o.degree() {
            for i in 0..=d {
                if o.bit(i) {
                    acc.xor_assign(&self.shl(i));
                }
            }
        }
        acc
    }
}

impl Zero for Poly2 {
    fn zero() -> Self {
        Poly2 { limbs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }
}

impl One for Poly2 {
    fn one() -> Self {
        Self::from_u64(1)
    }
}

/// An element of GF(2)(t) kept in lowest terms. Over GF(2) every nonzero
/// polynomial is monic, so reduced fractions are unique and equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly2,
    den: Poly2,
}

impl RatFunc {
    pub fn new(num: Poly2, den: Poly2) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly2::gcd(&num, &den);
        RatFunc {
            num: num.div_rem(&g).0,
            den: den.div_rem(&g).0,
        }
    }

    pub fn poly(p: Poly2) -> Self {
        RatFunc {
            num: p,
            den: Poly2::one(),
        }
    }

    pub fn t() -> Self {
        Self::poly(Poly2::t())
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    /// Total degree of numerator and denominator, a rough size measure.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for RatFunc {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(self.num + o.num, self.den);
        }
        RatFunc::new(
            self.num * o.den.clone() + o.num * self.den.clone(),
            self.den * o.den,
        )
    }
}

impl Sub for RatFunc {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)] // characteristic 2
    fn sub(self, o: Self) -> Self {
        self + o
    }
}

impl Neg for RatFunc {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

impl Mul for RatFunc {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        RatFunc::new(self.num * o.num, self.den * o.den)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly2::zero(),
            den: Poly2::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::poly(Poly2::one())
    }
}

impl DivisionRing for RatFunc {
    type Center = Self;
    // Only ever used as the center of ASQ.
    const TAG: RingTag = RingTag::Asq;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc {
                num: self.den.clone(),
                den: self.num.clone(),
            })
        }
    }

    fn is_central(&self) -> bool {
        true
    }

    fn from_center(c: &Self) -> Self {
        c.clone()
    }

    fn center_dim() -> usize {
        1
    }

    fn center_coords(&self) -> Vec<Self> {
        vec![self.clone()]
    }

    fn from_center_coords(c: &[Self]) -> Self {
        c[0].clone()
    }

    fn from_i64(n: i64) -> Self {
        if n.rem_euclid(2) == 1 {
            Self::one()
        } else {
            Self::zero()
        }
    }

    /// `t, t+1, t², t²+1, t²+t, …`: polynomials of positive degree in
    /// binary counting order.
    fn central_candidates() -> Box<dyn Iterator<Item = Self>> {
        Box::new((2u64..).map(|b| RatFunc::poly(Poly2::from_u64(b))))
    }

    fn approx_abs(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0 / (1.0 + self.height() as f64)
        }
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, size: u32) -> Self {
        let deg = size.clamp(1, 60);
        let mask = (1u64 << (deg + 1)) - 1;
        let num = Poly2::from_u64(rng.gen::<u64>() & mask);
        // keep denominators small so random matrices stay tractable
        let den = if rng.gen_bool(0.5) {
            Poly2::one()
        } else {
            Poly2::from_u64((rng.gen::<u64>() & mask.min(0b111)).max(1))
        };
        RatFunc::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn poly_arithmetic() {
        let t = Poly2::t();
        let tp1 = t.clone() + Poly2::one();
        // (t+1)² = t² + 1 in characteristic 2
        assert_eq!(tp1.clone() * tp1.clone(), Poly2::from_u64(0b101));
        let (q, r) = Poly2::from_u64(0b101).div_rem(&tp1);
        assert_eq!(q, tp1);
        assert!(r.is_zero());
        assert_eq!(Poly2::gcd(&Poly2::from_u64(0b101), &Poly2::from_u64(0b110)), tp1);
    }

    #[test]
    fn wide_polynomials_cross_limbs() {
        let a = Poly2::one().shl(70) + Poly2::one();
        let b = Poly2::one().shl(63) + Poly2::t();
        let p = a.clone() * b.clone();
        assert_eq!(p.degree(), Some(133));
        let (q, r) = p.div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn bits_roundtrip() {
        let p = Poly2::from_bits(&[1, 0, 1, 1]);
        assert_eq!(p, Poly2::from_u64(0b1101));
        assert_eq!(p.to_bits(), vec![1, 0, 1, 1]);
        assert!(Poly2::zero().to_bits().is_empty());
    }

    #[test]
    fn ratfunc_field_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let x = RatFunc::random(&mut rng, 4);
            let y = RatFunc::random(&mut rng, 4);
            let z = RatFunc::random(&mut rng, 4);
            assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z);
            assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
            if !x.is_zero() {
                assert_eq!(x.clone() * x.inv().unwrap(), RatFunc::one());
            }
        }
    }

    #[test]
    fn lowest_terms_are_structural() {
        let a = RatFunc::new(Poly2::from_u64(0b110), Poly2::from_u64(0b11));
        assert_eq!(a, RatFunc::t());
    }
}
