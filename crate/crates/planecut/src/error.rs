use thiserror::Error;

/// Errors across the kernel. Geometry predicates are total within the
/// precision budget; most variants signal violated input contracts.
#[derive(Debug, Error)]
pub enum Error {
    #[error("points are collinear")]
    CollinearPoints,
    #[error("input exceeds the precision budget")]
    BudgetExceeded,
    #[error("predicate overflow in checked mode")]
    PredicateOverflow,
    #[error("degenerate box (empty extent)")]
    DegenerateBox,
    #[error("point set does not span 3D space")]
    DegeneratePointSet,
    #[error("coordinate {value} out of range ±{limit}")]
    OutOfRange { value: f64, limit: i64 },
    #[error("input mesh is not watertight: {0}")]
    NotWatertight(String),
    #[error("invalid container: {0}")]
    InvalidContainer(String),
    #[error("invalid mesh file: {0}")]
    InvalidMesh(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
