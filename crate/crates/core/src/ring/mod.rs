//! Division rings supported by the decomposers.
//!
//! Every ring implements [`DivisionRing`]. The trait is deliberately small:
//! arithmetic comes from the `num-traits`/`std::ops` supertraits, and the
//! remaining methods expose just enough structure (inverses, the center,
//! a coordinate map over the center, and a pivot score for elimination) for
//! the linear algebra in [`crate::matrix`] to stay generic.

mod asq;
mod central;
mod finite;
mod gf2poly;
mod quaternion;
mod rational;
mod real;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use asq::Asq;
pub use central::{central_sample, central_sample_skip, CentralPolynomial};
pub use finite::{Fp, Gf4};
pub use gf2poly::{Poly2, RatFunc};
pub use quaternion::{kth_root, Quaternion, QuaternionScalar};
pub use rational::{q, Q};

/// Identifies one of the shipped division rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingTag {
    /// The rationals.
    Qq,
    /// Hamilton quaternions over the rationals.
    Hq,
    /// Hamilton quaternions with `f64` components.
    Hf,
    Gf2,
    Gf3,
    Gf4,
    /// Artin–Schreier quaternion algebra over GF(2)(t).
    Asq,
}

/// Cardinality class of the center of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CenterClass {
    Two,
    Three,
    Four,
    Infinite,
}

impl RingTag {
    pub const ALL: [RingTag; 7] = [
        RingTag::Qq,
        RingTag::Hq,
        RingTag::Hf,
        RingTag::Gf2,
        RingTag::Gf3,
        RingTag::Gf4,
        RingTag::Asq,
    ];

    pub fn characteristic(self) -> u32 {
        match self {
            RingTag::Qq | RingTag::Hq | RingTag::Hf => 0,
            RingTag::Gf2 | RingTag::Gf4 | RingTag::Asq => 2,
            RingTag::Gf3 => 3,
        }
    }

    pub fn is_commutative(self) -> bool {
        !matches!(self, RingTag::Hq | RingTag::Hf | RingTag::Asq)
    }

    pub fn center_class(self) -> CenterClass {
        match self {
            RingTag::Gf2 => CenterClass::Two,
            RingTag::Gf3 => CenterClass::Three,
            RingTag::Gf4 => CenterClass::Four,
            _ => CenterClass::Infinite,
        }
    }

    pub fn is_exact(self) -> bool {
        self != RingTag::Hf
    }

    pub fn is_finite(self) -> bool {
        matches!(self, RingTag::Gf2 | RingTag::Gf3 | RingTag::Gf4)
    }

    pub fn name(self) -> &'static str {
        match self {
            RingTag::Qq => "qq",
            RingTag::Hq => "hq",
            RingTag::Hf => "hf",
            RingTag::Gf2 => "gf2",
            RingTag::Gf3 => "gf3",
            RingTag::Gf4 => "gf4",
            RingTag::Asq => "asq",
        }
    }

    pub fn parse(s: &str) -> Option<RingTag> {
        RingTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
    }
}

impl std::fmt::Display for RingTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A (possibly noncommutative) division ring.
///
/// Multiplication is never reordered by generic code: `a * b` means `a` on
/// the left. Matrices act on column vectors and scalars act on vectors from
/// the right, so eigen-relations read `A p = p λ`.
pub trait DivisionRing:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The center, itself a (commutative) division ring.
    type Center: DivisionRing;

    const TAG: RingTag;

    /// Relative threshold below which an entry counts as zero during
    /// elimination. Zero for exact rings.
    const ZERO_TOL: f64 = 0.0;

    /// Two-sided inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_central(&self) -> bool;

    fn from_center(c: &Self::Center) -> Self;

    /// Dimension of the ring as a vector space over its center.
    fn center_dim() -> usize;

    /// Coordinates over a fixed basis of the ring as a center vector space.
    fn center_coords(&self) -> Vec<Self::Center>;

    fn from_center_coords(coords: &[Self::Center]) -> Self;

    /// The image of an integer under the canonical map from ℤ.
    fn from_i64(n: i64) -> Self;

    /// Central elements in a fixed deterministic enumeration order.
    fn central_candidates() -> Box<dyn Iterator<Item = Self>>;

    /// A nonnegative size used to pick elimination pivots and measure
    /// residuals; zero exactly for the zero element.
    fn approx_abs(&self) -> f64;

    /// A random element; `size` bounds numerators, degrees or magnitudes.
    fn random<G: Rng + ?Sized>(rng: &mut G, size: u32) -> Self;

    fn tag() -> RingTag {
        Self::TAG
    }

    /// Whether `self` and `other` are far enough apart to be treated as
    /// distinct by the constructions. Exact rings use equality; floating
    /// rings require a relative gap so that the resulting conjugators stay
    /// well conditioned.
    fn separated(&self, other: &Self) -> bool {
        if Self::TAG.is_exact() {
            self != other
        } else {
            let gap = (self.clone() - other.clone()).approx_abs();
            gap > 0.1 * (1.0 + self.approx_abs().max(other.approx_abs()))
        }
    }

    /// Zero test honoring [`DivisionRing::ZERO_TOL`] relative to `scale`.
    fn is_negligible(&self, scale: f64) -> bool {
        if Self::ZERO_TOL == 0.0 {
            self.is_zero()
        } else {
            self.approx_abs() <= Self::ZERO_TOL * scale.max(1.0)
        }
    }

    /// `self` raised to a nonnegative power.
    fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}
