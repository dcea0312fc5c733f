use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use super::{DivisionRing, RingTag};

/// The prime field of `P` elements, `P ∈ {2, 3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u8>(u8);

impl<const P: u8> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl<const P: u8> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}

impl<const P: u8> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}

impl<const P: u8> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp((self.0 * o.0) % P)
    }
}

impl<const P: u8> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u8> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u8> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u8> DivisionRing for Fp<P> {
    type Center = Self;
    const TAG: RingTag = match P {
        2 => RingTag::Gf2,
        3 => RingTag::Gf3,
        _ => panic!("only GF(2) and GF(3) are supported"),
    };

    fn inv(&self) -> Option<Self> {
        // x^(P-2) for P prime
        match self.0 {
            0 => None,
            v => Some((1..P).map(Fp).find(|y| (v * y.0) % P == 1).unwrap()),
        }
    }

    fn is_central(&self) -> bool {
        true
    }

    fn from_center(c: &Self) -> Self {
        *c
    }

    fn center_dim() -> usize {
        1
    }

    fn center_coords(&self) -> Vec<Self> {
        vec![*self]
    }

    fn from_center_coords(c: &[Self]) -> Self {
        c[0]
    }

    fn from_i64(n: i64) -> Self {
        Self::new(n)
    }

    fn central_candidates() -> Box<dyn Iterator<Item = Self>> {
        Box::new((0..P).map(Fp))
    }

    fn approx_abs(&self) -> f64 {
        if self.0 == 0 {
            0.0
        } else {
            1.0
        }
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, _size: u32) -> Self {
        Fp(rng.gen_range(0..P))
    }
}

/// GF(4) = GF(2)[ω]/(ω² + ω + 1); bit 0 is the constant term, bit 1 the
/// coefficient of ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf4(u8);

impl Gf4 {
    pub const OMEGA: Gf4 = Gf4(2);

    pub fn new(bits: u8) -> Self {
        assert!(bits < 4, "GF(4) residues are 2-bit");
        Gf4(bits)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl Add for Gf4 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)] // characteristic 2
    fn add(self, o: Self) -> Self {
        Gf4(self.0 ^ o.0)
    }
}

impl Sub for Gf4 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)] // characteristic 2
    fn sub(self, o: Self) -> Self {
        Gf4(self.0 ^ o.0)
    }
}

impl Neg for Gf4 {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

impl Mul for Gf4 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // carry-less product, then reduce ω² = ω + 1
        let (a, b) = (self.0, o.0);
        let mut p = 0u8;
        for bit in 0..2 {
            if b >> bit & 1 == 1 {
                p ^= a << bit;
            }
        }
        if p & 4 != 0 {
            p ^= 0b111;
        }
        Gf4(p)
    }
}

impl Zero for Gf4 {
    fn zero() -> Self {
        Gf4(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Gf4 {
    fn one() -> Self {
        Gf4(1)
    }
}

impl DivisionRing for Gf4 {
    type Center = Self;
    const TAG: RingTag = RingTag::Gf4;

    fn inv(&self) -> Option<Self> {
        match self.0 {
            0 => None,
            // ω·(ω+1) = 1
            1 => Some(Gf4(1)),
            2 => Some(Gf4(3)),
            _ => Some(Gf4(2)),
        }
    }

    fn is_central(&self) -> bool {
        true
    }

    fn from_center(c: &Self) -> Self {
        *c
    }

    fn center_dim() -> usize {
        1
    }

    fn center_coords(&self) -> Vec<Self> {
        vec![*self]
    }

    fn from_center_coords(c: &[Self]) -> Self {
        c[0]
    }

    fn from_i64(n: i64) -> Self {
        Gf4((n.rem_euclid(2)) as u8)
    }

    fn central_candidates() -> Box<dyn Iterator<Item = Self>> {
        Box::new((0..4).map(Gf4))
    }

    fn approx_abs(&self) -> f64 {
        if self.0 == 0 {
            0.0
        } else {
            1.0
        }
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, _size: u32) -> Self {
        Gf4(rng.gen_range(0..4))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_axioms<R: DivisionRing + Copy>(elems: &[R]) {
        for &x in elems {
            if !x.is_zero() {
                let xi = x.inv().unwrap();
                assert_eq!(x * xi, R::one());
                assert_eq!(xi * x, R::one());
            }
            assert_eq!(x + (-x), R::zero());
            for &y in elems {
                assert_eq!(x * y, y * x);
                for &z in elems {
                    assert_eq!(x * (y + z), x * y + x * z);
                    assert_eq!((x * y) * z, x * (y * z));
                }
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        field_axioms(&[Fp::<2>::new(0), Fp::new(1)]);
        field_axioms(&[Fp::<3>::new(0), Fp::new(1), Fp::new(2)]);
        field_axioms(&[Gf4(0), Gf4(1), Gf4(2), Gf4(3)]);
    }

    #[test]
    fn omega_is_a_root_of_the_defining_polynomial() {
        let w = Gf4::OMEGA;
        assert_eq!(w * w + w + Gf4::one(), Gf4::zero());
    }
}
