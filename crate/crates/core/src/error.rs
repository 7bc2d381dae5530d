//! Shared error type for all construction and query operations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter index {index} out of range for a presentation with {count} generators")]
    LetterOutOfRange { index: usize, count: usize },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid presentation family: {0}")]
    InvalidFamily(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected (no path between vertices {from} and {to})")]
    DisconnectedPair { from: u32, to: u32 },

    #[error("{what} would need {needed}, exceeding the capacity limit {limit}")]
    CapacityExceeded {
        what: &'static str,
        needed: u64,
        limit: u64,
    },

    #[error("scaling violation at n = {index}: {detail}")]
    ScalingViolation { index: u32, detail: String },

    #[error("scaling table has {len} entries but level {needed} was requested")]
    TableTooShort { needed: u32, len: usize },

    #[error("vertex ({base}, {level}) out of range (base < {base_count}, level <= {depth})")]
    VertexOutOfRange {
        base: u32,
        level: u32,
        base_count: u32,
        depth: u32,
    },

    #[error("max_level {max_level} too small to certify optimality (distance bound {bound} could be beaten above it)")]
    MaxLevelTooSmall { max_level: u32, bound: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("peripheral subgroup is trivial: every generating word reduces to the identity")]
    TrivialPeripheral,

    #[error("word {word:?} reduces outside the ball")]
    WordOutsideBall { word: String },

    #[error("coset {coset} (representative {representative:?}) has a disconnected induced subgraph after truncation")]
    DisconnectedCoset { coset: usize, representative: String },

    #[error("graph with {vertices} vertices is too large for exhaustive quadruple scan (limit {limit} vertices); pass force to override")]
    TooLargeForExhaustive { vertices: usize, limit: usize },

    #[error("graph with {vertices} vertices exceeds the all-pairs distance table limit ({limit})")]
    TooLargeForAllPairs { vertices: usize, limit: usize },

    #[error("log argument {value} <= 1; dagger bounds need E*N > 1")]
    LogArgumentTooSmall { value: String },

    #[error("matrix is not normalized: |det - 1| = {residual:.3e}")]
    NonNormalized { residual: f64 },

    #[error("point height t = {t} is not positive")]
    NonPositiveHeight { t: f64 },

    #[error("unknown fixture {name:?}")]
    UnknownFixture { name: String },

    #[error("empty sample after examining {words_examined} words (escape threshold too high?)")]
    EmptySample { words_examined: u64 },

    #[error("sample has {got} points but the estimator needs at least {need}")]
    TooFewPoints { got: usize, need: usize },

    #[error("degenerate scale list: need at least {need} distinct scales in (0, 1)")]
    DegenerateScales { need: usize },

    #[error("normal-form search exceeded {limit} words; input too far from the supported regime")]
    CanonicalSearchOverflow { limit: usize },
}

impl Error {
    /// Stable machine-readable tag, used by the CLI's structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LetterOutOfRange { .. } => "letter_out_of_range",
            Error::InvalidWord(_) => "invalid_word",
            Error::InvalidFamily(_) => "invalid_family",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::DisconnectedPair { .. } => "disconnected_pair",
            Error::CapacityExceeded { .. } => "capacity_exceeded",
            Error::ScalingViolation { .. } => "scaling_violation",
            Error::TableTooShort { .. } => "table_too_short",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::MaxLevelTooSmall { .. } => "max_level_too_small",
            Error::InvalidParams(_) => "invalid_params",
            Error::TrivialPeripheral => "trivial_peripheral",
            Error::WordOutsideBall { .. } => "word_outside_ball",
            Error::DisconnectedCoset { .. } => "disconnected_coset",
            Error::TooLargeForExhaustive { .. } => "too_large_for_exhaustive",
            Error::TooLargeForAllPairs { .. } => "too_large_for_all_pairs",
            Error::LogArgumentTooSmall { .. } => "log_argument_too_small",
            Error::NonNormalized { .. } => "non_normalized",
            Error::NonPositiveHeight { .. } => "non_positive_height",
            Error::UnknownFixture { .. } => "unknown_fixture",
            Error::EmptySample { .. } => "empty_sample",
            Error::TooFewPoints { .. } => "too_few_points",
            Error::DegenerateScales { .. } => "degenerate_scales",
            Error::CanonicalSearchOverflow { .. } => "canonical_search_overflow",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Capacity guards for the graph builders.
///
/// The defaults keep constructions at desk scale; the CLI can raise them via
/// the `CUSPCRAFT_MAX_VERTICES` environment variable.
#[derive(Debug, Clone, Copy)]
pub struct Capacity {
    pub max_vertices: u64,
    pub max_edges: u64,
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity {
            max_vertices: 10_000_000,
            max_edges: 100_000_000,
        }
    }
}

impl Capacity {
    pub fn with_max_vertices(max_vertices: u64) -> Self {
        Capacity {
            max_vertices,
            max_edges: max_vertices.saturating_mul(10),
        }
    }
}
