use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("assignment has {found} variables, instance has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("constraint scope {0:?} is not a valid unary or binary scope")]
    BadScope(Vec<usize>),
    #[error("duplicate constraint scope {0:?}")]
    DuplicateScope(Vec<usize>),
    #[error("zero weight on scope {0:?}")]
    ZeroWeight(Vec<usize>),
    #[error("partial assignment is undefined on neighbour {0}")]
    Undefined(usize),
    #[error("not a bit string: {0:?}")]
    BadBitString(String),
    #[error("malformed instance file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{{{0}, {1}}} is not an edge of the constraint graph")]
    NotAnEdge(usize, usize),
    #[error("variable {0} is fixed in the conditioning set")]
    IndexInConditioningSet(usize),
    #[error("edge {{{i}, {j}}} has {background} background variables, above the limit of {limit}")]
    DegreeLimit {
        i: usize,
        j: usize,
        background: usize,
        limit: usize,
    },
    #[error("instance is not oriented")]
    NotOriented,
    #[error("arc digraph contains a directed cycle through {0:?}")]
    CycleDetected(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("dimension {n} exceeds the oracle cap of {cap}")]
    DimensionCap { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{rule} step requested at a local peak")]
    AtPeak { rule: String },
    #[error("face spanned by {size} improving indices exceeds the cap of {cap}")]
    FaceCap { size: usize, cap: usize },
    #[error("landscape is not semismooth: {0}")]
    NotSemismooth(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("trace replay diverged at step {step}: {reason}")]
    ReplayMismatch { step: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("invalid generator input: {0}")]
    InvalidInput(String),
    #[error(
        "rejection budget of {budget} candidates exhausted ({accepted} accepted, {tried} tried)"
    )]
    BudgetExhausted {
        budget: usize,
        tried: usize,
        accepted: usize,
    },
}
