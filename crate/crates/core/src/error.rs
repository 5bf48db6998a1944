use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight sum {0} is odd")]
    OddWeightSum(u64),
    #[error("weight {weight} exceeds level {level}")]
    WeightExceedsLevel { weight: u32, level: u32 },
    #[error("weight vector is empty")]
    EmptyWeights,
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("expected {expected} weights, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("weight sum {0} is below 2, stabilizing Lie rank undefined")]
    DegenerateSum(u64),
    #[error("plussing subset has odd size {0}")]
    OddSubset(usize),
    #[error("position {position} out of range for {len} weights")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("position {0} listed twice")]
    DuplicatePosition(usize),
    #[error("need at least 4 marked points, got {0}")]
    TooFewPoints(usize),
    #[error("F-curve partitions {curve} points but the bundle has {bundle}")]
    PartitionMismatch { curve: usize, bundle: usize },
    #[error("invalid F-curve: {0}")]
    InvalidCurve(String),
    #[error("invalid boundary index set: {0}")]
    InvalidBoundaryIndex(String),
    #[error("linear system is inconsistent")]
    InconsistentSystem,
    #[error("boundary basis is not independent: rank {rank} < {size}")]
    SingularBasis { rank: usize, size: usize },
    #[error("bundles live on M_0,{left} and M_0,{right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("base bundle has rank {0}, expected 1")]
    RankNotOne(String),
    #[error("stabilizing Lie rank {stab} is below the largest weight {max}")]
    StabRankBelowMaxWeight { stab: u32, max: u32 },
    #[error("no built-in boundary basis for n = {0}")]
    BasisUnavailable(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
