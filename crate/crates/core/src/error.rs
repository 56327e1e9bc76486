use thiserror::Error;

/// Which row of a diagram a vertex lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row {
    Top,
    Bottom,
}

impl std::fmt::Display for Row {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Row::Top => f.write_str("top"),
            Row::Bottom => f.write_str("bottom"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} in the {row} row is used by more than one edge")]
    DuplicateEndpoint { row: Row, vertex: usize },

    #[error("edges {first:?} and {second:?} share color {color} and cross")]
    SameColorCrossing {
        color: usize,
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("vertex index {index} is outside 1..={m}")]
    VertexOutOfRange { index: usize, m: usize },

    #[error("color {color} is outside {min}..={n}")]
    ColorOutOfRange { color: usize, min: usize, n: usize },

    #[error("number of colors must be positive")]
    NoColors,

    #[error("shape mismatch: (m={left_m}, n={left_n}) vs (m={right_m}, n={right_n})")]
    ShapeMismatch {
        left_m: usize,
        left_n: usize,
        right_m: usize,
        right_n: usize,
    },

    #[error("color count mismatch: (n={left}) vs (n={right})")]
    ColorCountMismatch { left: usize, right: usize },

    #[error("boundary has {len} letters, expected {m}")]
    BoundaryLength { len: usize, m: usize },

    #[error("boundaries differ in the number of color-{color} vertices ({top} on top, {bottom} on bottom)")]
    BoundaryCountMismatch {
        color: usize,
        top: usize,
        bottom: usize,
    },

    #[error("enumeration of P_{m}^{n} exceeds the configured cap (m <= {cap}); pass force to override")]
    CapExceeded { m: usize, n: usize, cap: usize },

    #[error("class counts {counts:?} do not sum to m={m} or have the wrong length for n={n}")]
    InvalidClass {
        m: usize,
        n: usize,
        counts: Vec<usize>,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("restriction needs m >= 1")]
    RestrictFromZero,

    #[error("module decomposition accounts for {accounted} of {dimension} dimensions; input is not a module")]
    DecompositionMismatch { accounted: usize, dimension: usize },

    #[error("invalid crystal: {0}")]
    InvalidCrystal(String),

    #[error("component containing {key} has {count} highest nodes; expected exactly one")]
    NonNormalComponent { key: String, count: usize },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("operator produced a non-semistandard filling {rows:?}")]
    NotSemistandard { rows: Vec<Vec<usize>> },

    #[error("invalid shape or composition: {0}")]
    InvalidShape(String),

    #[error("signature rule needs at least one factor")]
    EmptySignature,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
