use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("points need at least one coordinate")]
    ZeroDimension,

    #[error("coordinates must be finite")]
    NonFinite,

    #[error("compact sets must be non-empty")]
    EmptySet,

    #[error("box corners must satisfy lo <= hi on every axis")]
    NonCanonicalBox,

    #[error("box boundaries are only defined in 2 dimensions, got {0}")]
    BoundaryNeeds2d(usize),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("inner box is not contained in the outer box")]
    NotNested,

    #[error("target box has coincident corners (m = M)")]
    DegenerateTarget,

    #[error("set is not contained in the target box")]
    NotContained,

    #[error("concatenation endpoints do not match at junction {junction}: h = {gap:e}")]
    EndpointMismatch { junction: usize, gap: f64 },

    #[error("path parameter must lie in [0, 1], got {0}")]
    InvalidParameter(f64),

    #[error("cannot concatenate an empty list of paths")]
    EmptyConcat,

    #[error("oracle needs {needed} sample points, budget is {budget}")]
    PointBudget { needed: u128, budget: u128 },

    /// The cell budget ran out; the supremum is only known to lie in
    /// `[lower, upper]`.
    #[error("subdivision stopped after {cells} cells with enclosure [{lower}, {upper}]")]
    SubdivisionBudget { cells: usize, lower: f64, upper: f64 },

    #[error("resolution must be positive and finite, got {0}")]
    InvalidResolution(f64),

    #[error("invalid document: {0}")]
    Document(String),
}
