use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{DivisionRing, RingTag};

/// Exact rationals.
pub type Q = BigRational;

impl DivisionRing for BigRational {
    type Center = BigRational;
    const TAG: RingTag = RingTag::Qq;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
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

    fn from_center_coords(coords: &[Self]) -> Self {
        coords[0].clone()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn central_candidates() -> Box<dyn Iterator<Item = Self>> {
        Box::new((1i64..).map(<Self as DivisionRing>::from_i64))
    }

    fn approx_abs(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        match self.abs().to_f64() {
            Some(v) if v.is_finite() && v > 0.0 => v,
            _ => f64::MIN_POSITIVE,
        }
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, size: u32) -> Self {
        let size = size.max(1) as i64;
        let num = rng.gen_range(-size..=size);
        let den = rng.gen_range(1..=size);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Shorthand used throughout tests and examples.
pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
