use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate simplex: Cayley-Menger volume^2 = {0:e}")]
    NondegenerateViolation(f64),
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point is not a node of the metric graph (subdivision depth {depth} too shallow)")]
    NotANode { depth: usize },
    #[error("no R-separating candidate found within the move budget")]
    Infeasible,
    #[error("separation violated at level {level}: component {component} fits in no ball of radius {radius}")]
    SeparationViolation {
        level: usize,
        component: usize,
        radius: f64,
    },
    #[error("refinement failed: {0}")]
    RefinementFailed(String),
    #[error("rainbow census mismatch: {0}")]
    CensusMismatch(String),
    #[error("radius order violated: r1 = {r1} must be below r2 = {r2}")]
    RadiusOrder { r1: f64, r2: f64 },
    #[error("packing cover certificate failed for point {0}")]
    CoverFailure(usize),
    #[error("group action incomplete: {0}")]
    ActionIncomplete(String),
    #[error("partition invalid: {0}")]
    PartitionInvalid(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
