use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{DivisionRing, RingTag};

/// Scalars over which Hamilton quaternions are formed.
pub trait QuaternionScalar: DivisionRing<Center = Self> {
    const QUATERNION_TAG: RingTag;
}

impl QuaternionScalar for BigRational {
    const QUATERNION_TAG: RingTag = RingTag::Hq;
}

impl QuaternionScalar for f64 {
    const QUATERNION_TAG: RingTag = RingTag::Hf;
}

/// `re + i·i + j·j + k·k` with `i² = j² = k² = −1`, `ij = −ji = k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion<T> {
    pub re: T,
    pub i: T,
    pub j: T,
    pub k: T,
}

impl<T> Quaternion<T> {
    pub const fn new(re: T, i: T, j: T, k: T) -> Self {
        Self { re, i, j, k }
    }
}

impl<T: QuaternionScalar> Quaternion<T> {
    pub fn scalar(re: T) -> Self {
        Self::new(re, T::zero(), T::zero(), T::zero())
    }

    pub fn unit_i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn unit_j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn unit_k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(
            self.re.clone(),
            -self.i.clone(),
            -self.j.clone(),
            -self.k.clone(),
        )
    }

    /// Reduced norm `re² + i² + j² + k²`.
    pub fn norm(&self) -> T {
        self.re.clone() * self.re.clone()
            + self.i.clone() * self.i.clone()
            + self.j.clone() * self.j.clone()
            + self.k.clone() * self.k.clone()
    }

    fn scale(&self, s: &T) -> Self {
        Self::new(
            self.re.clone() * s.clone(),
            self.i.clone() * s.clone(),
            self.j.clone() * s.clone(),
            self.k.clone() * s.clone(),
        )
    }
}

impl<T: Add<Output = T>> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.i + o.i, self.j + o.j, self.k + o.k)
    }
}

impl<T: Sub<Output = T>> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl<T: Neg<Output = T>> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.i, -self.j, -self.k)
    }
}

impl<T> Mul for Quaternion<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (self.re, self.i, self.j, self.k);
        let (a2, b2, c2, d2) = (o.re, o.i, o.j, o.k);
        let re = a1.clone() * a2.clone()
            - b1.clone() * b2.clone()
            - c1.clone() * c2.clone()
            - d1.clone() * d2.clone();
        let i = a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone()
            - d1.clone() * c2.clone();
        let j = a1.clone() * c2.clone() - b1.clone() * d2.clone()
            + c1.clone() * a2.clone()
            + d1.clone() * b2.clone();
        let k = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2;
        Self::new(re, i, j, k)
    }
}

impl<T: QuaternionScalar> Zero for Quaternion<T> {
    fn zero() -> Self {
        Self::scalar(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }
}

impl<T: QuaternionScalar> One for Quaternion<T> {
    fn one() -> Self {
        Self::scalar(T::one())
    }
}

impl<T: QuaternionScalar> DivisionRing for Quaternion<T> {
    type Center = T;
    const TAG: RingTag = T::QUATERNION_TAG;
    const ZERO_TOL: f64 = T::ZERO_TOL;

    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(self.conj().scale(&n))
    }

    fn is_central(&self) -> bool {
        self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    fn from_center(c: &T) -> Self {
        Self::scalar(c.clone())
    }

    fn center_dim() -> usize {
        4
    }

    fn center_coords(&self) -> Vec<T> {
        vec![
            self.re.clone(),
            self.i.clone(),
            self.j.clone(),
            self.k.clone(),
        ]
    }

    fn from_center_coords(c: &[T]) -> Self {
        Self::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }

    fn from_i64(n: i64) -> Self {
        Self::scalar(T::from_i64(n))
    }

    fn central_candidates() -> Box<dyn Iterator<Item = Self>> {
        Box::new(T::central_candidates().map(Self::scalar))
    }

    fn approx_abs(&self) -> f64 {
        let s: f64 = [&self.re, &self.i, &self.j, &self.k]
            .iter()
            .map(|x| {
                let a = x.approx_abs();
                a * a
            })
            .sum();
        s.sqrt()
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, size: u32) -> Self {
        Self::new(
            T::random(rng, size),
            T::random(rng, size),
            T::random(rng, size),
            T::random(rng, size),
        )
    }
}

impl Quaternion<f64> {
    /// Euclidean length `sqrt(N(q))`.
    pub fn abs(&self) -> f64 {
        self.norm().sqrt()
    }

    fn imag_len(&self) -> f64 {
        (self.i * self.i + self.j * self.j + self.k * self.k).sqrt()
    }
}

/// A `k`-th root of a floating quaternion via its polar form.
///
/// Negative reals have infinitely many roots; the one on the `i` axis is
/// returned.
pub fn kth_root(q: &Quaternion<f64>, k: u32) -> Quaternion<f64> {
    assert!(k >= 1, "root order must be positive");
    let r = q.abs();
    if r == 0.0 {
        return Quaternion::zero();
    }
    if k == 1 {
        return q.clone();
    }
    let v = q.imag_len();
    let (theta, axis) = if v == 0.0 {
        if q.re >= 0.0 {
            return Quaternion::scalar(r.powf(1.0 / k as f64));
        }
        (std::f64::consts::PI, [1.0, 0.0, 0.0])
    } else {
        (v.atan2(q.re), [q.i / v, q.j / v, q.k / v])
    };
    let rr = r.powf(1.0 / k as f64);
    let (s, c) = (theta / k as f64).sin_cos();
    Quaternion::new(rr * c, rr * s * axis[0], rr * s * axis[1], rr * s * axis[2])
}
