use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    LoopEdge(u32),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(u32, u32),
    #[error("vertex id {id} out of range for {n} vertices")]
    BadId { id: u32, n: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertices {0} and {1} are in different components")]
    Disconnected(u32, u32),
    #[error("bad edge list: {0}")]
    BadEdgeList(String),
    #[error("bad point: {0}")]
    BadPoint(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("bad coordinate: {0}")]
    BadCoordinate(String),
    #[error("geodesic budget exceeded after {found} geodesics")]
    GeodesicBudgetExceeded { found: u64 },
    #[error("side {side} is not a geodesic: {reason}")]
    NotAGeodesic { side: usize, reason: String },
    #[error("side {side} is malformed: {reason}")]
    BadSide { side: usize, reason: String },
    #[error("bad cycle: {0}")]
    BadCycle(String),
    #[error("cycle has even length")]
    EvenCycle,
    #[error("sequence is not a walk at step {0}")]
    NotAWalk(usize),
    #[error("graph has no odd cycle")]
    NoOddCycle,
    #[error("closed balls around {0} and {1} overlap")]
    OverlappingBalls(u32, u32),
    #[error("odd cycle not covered by any ball: {0:?}")]
    UncoveredOddCycle(Vec<u32>),
    #[error("not M-regular: {0}")]
    NotMRegular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
