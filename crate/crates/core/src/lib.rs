//! Combinatorial horoballs, truncated cusped spaces over relatively
//! hyperbolic pairs, Gromov four-point hyperbolicity scans, quasi-isometry
//! obstruction experiments, and Kleinian limit-set sampling.
//!
//! The crate is organized around the objects:
//!
//! - [`groups`]: words, normal forms and Cayley balls for free, free abelian
//!   and surface presentations;
//! - [`horoball`]: the horoball construction over a base graph, with exact
//!   distances by search, by a reachability recursion, and in closed form;
//! - [`cusped`]: a Cayley ball with horoballs glued onto the cosets of a
//!   peripheral subgroup;
//! - [`hyperbolicity`]: Gromov products and four-point delta scans;
//! - [`qi`]: the integer-exact incompatibility thresholds and the divergence
//!   of the 2^n vs 2^(2^n) horoball metrics;
//! - [`kleinian`]: Möbius isometries of upper half-space, fixture groups,
//!   limit-set samples and box-counting dimension.
//!
//! Everything is deterministic: randomized scans take explicit seeds, and
//! parallel enumerations merge in canonical order.

pub mod cusped;
pub mod error;
pub mod graph;
pub mod groups;
pub mod horoball;
pub mod hyperbolicity;
pub mod kleinian;
pub mod qi;
pub mod scaling;

pub use error::{Capacity, Error, Result};
pub use graph::{BaseGraph, DistanceMatrix, UnitGraph};
pub use groups::{
    cayley_ball, exponent_sum, reduce_word, words_equal, CayleyBall, Letter, PresentationFamily,
    Word,
};
pub use horoball::{
    build_horoball, line_distance_closed_form, line_distance_dp, sufficient_depth, GrowthCurve,
    HoroballGraph, HoroballSpec, HoroballVertex,
};
pub use hyperbolicity::{
    four_point_delta, gromov_product, DeltaMode, DeltaModeReport, DeltaReport, HalfInteger,
};
pub use kleinian::{
    acyl_witness_count, box_dimension, fixture, hyperbolic_distance, orbit_sample, to_ball,
    AcylParams, Classification, Fixture, FixtureName, FixtureReport, IsometryClass,
    LimitSetSample, MobiusTransform, OrbitOptions, UpperHalfSpacePoint,
};
pub use qi::{
    dagger_bounds, growth_compare, incompatibility_threshold, DaggerPair, GrowthRow,
    QiBoundParams, Rational,
};
pub use scaling::{validate_scaling, ScalingFunction};

pub use cusped::{
    build_cusped, identify_cosets, CosetPartition, CuspedSpace, CuspedSpec, PeripheralSpec,
};
