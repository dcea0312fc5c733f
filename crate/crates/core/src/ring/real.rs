use rand::Rng;

use super::{DivisionRing, RingTag};

// Center of the floating quaternions. Never used as a ring of its own by
// the CLI, so it borrows the HF tag.
impl DivisionRing for f64 {
    type Center = f64;
    const TAG: RingTag = RingTag::Hf;
    const ZERO_TOL: f64 = 1e-11;

    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn is_central(&self) -> bool {
        true
    }

    fn from_center(c: &f64) -> Self {
        *c
    }

    fn center_dim() -> usize {
        1
    }

    fn center_coords(&self) -> Vec<f64> {
        vec![*self]
    }

    fn from_center_coords(coords: &[f64]) -> Self {
        coords[0]
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn central_candidates() -> Box<dyn Iterator<Item = Self>> {
        Box::new((1i64..).map(|n| n as f64))
    }

    fn approx_abs(&self) -> f64 {
        self.abs()
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, size: u32) -> Self {
        let s = size.max(1) as f64;
        rng.gen_range(-s..=s)
    }
}
