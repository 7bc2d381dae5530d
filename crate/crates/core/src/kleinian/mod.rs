//! Möbius isometries of upper half-space, named Kleinian/Fuchsian generator
//! sets, limit-set sampling and box-counting dimension, and acylindricity
//! witness counting.

pub mod boxdim;
pub mod fixtures;
pub mod mobius;
pub mod orbit;

pub use boxdim::{box_dimension, cell_coverage, occupied_cells};
pub use fixtures::{fixture, Fixture, FixtureName, FixtureReport, RELATOR_TOLERANCE};
pub use mobius::{
    hyperbolic_distance, to_ball, Classification, IsometryClass, MobiusTransform,
    UpperHalfSpacePoint,
};
pub use orbit::{acyl_witness_count, orbit_sample, LimitSetSample, OrbitOptions};

use serde::{Deserialize, Serialize};

/// Acylindricity test parameters and the measured witness bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcylParams {
    pub epsilon: f64,
    /// Distance of the tested point pair.
    pub r: f64,
    /// Number of enumerated elements moving both points at most epsilon.
    pub witness_count: u64,
}
