use serde::{Deserialize, Serialize};

/// Which product construction the dispatcher prefers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Pick per ring: reversal route in characteristic ≠ 2, central-rich
    /// route otherwise.
    #[default]
    Auto,
    /// Reversal times flipped companion (characteristic ≠ 2).
    CharNe2,
    /// Central companion times unit upper triangular factor.
    CentralRich,
    /// At most four factors in characteristic 2.
    Char2,
}

impl Strategy {
    pub fn parse(s: &str) -> Option<Strategy> {
        match s {
            "auto" => Some(Strategy::Auto),
            "char-ne2" => Some(Strategy::CharNe2),
            "central-rich" => Some(Strategy::CentralRich),
            "char2" => Some(Strategy::Char2),
            _ => None,
        }
    }
}

/// Knobs shared by the decomposers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub strategy: Strategy,
    /// Seed for every random choice (cyclic vectors, searches).
    pub seed: u64,
    /// Number of admissible central elements to pass over before choosing;
    /// used to retry a construction with different parameters.
    pub central_skip: usize,
}
