//! Decompositions of matrices over division rings into sums and products
//! of diagonalizable matrices, with checkable certificates.
//!
//! The linear algebra is generic over [`ring::DivisionRing`]; the aliases
//! below name the shipped instantiations.

pub mod canonical;
pub mod error;
pub mod json;
pub mod matrix;
mod options;
pub mod product;
pub mod ring;
pub mod sharpness;
pub mod sum;
pub mod sylvester;
pub mod waring;

pub use error::{Error, Result};
pub use options::{Options, Strategy};
pub use matrix::{DiagCertificate, Decomposition, Matrix, Mode, VerifyReport};
pub use ring::{DivisionRing, RingTag};

/// Rationals.
pub type Qq = ring::Q;
/// Hamilton quaternions over the rationals.
pub type Hq = ring::Quaternion<ring::Q>;
/// Hamilton quaternions over `f64`.
pub type Hf = ring::Quaternion<f64>;
pub type Gf2 = ring::Fp<2>;
pub type Gf3 = ring::Fp<3>;
pub type Gf4 = ring::Gf4;
/// The characteristic-2 quaternion division algebra over GF(2)(t).
pub type Asq = ring::Asq;
