//! Shared fixtures for the criterion benches.

use mrey_core::{PhysicalConstants, PotentialParams};

/// A3 = 1, α = 0.5 in natural units.
pub fn default_potential() -> PotentialParams {
    PotentialParams::new(0.0, 0.0, 1.0, 0.5).expect("valid default potential")
}

/// A deeper Yukawa well with four bound l = 0 levels.
pub fn deep_potential() -> PotentialParams {
    PotentialParams::new(0.0, 0.0, 5.0, 0.5).expect("valid deep potential")
}

pub fn natural() -> PhysicalConstants {
    PhysicalConstants::NATURAL
}
