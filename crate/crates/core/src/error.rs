use thiserror::Error;

/// Every failure the library can report. `code()` yields the stable
/// upper-case identifier used in CLI diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("problem graph contains a negative cycle")]
    NegativeCycleInProblem,
    #[error("movement edge ({tail}, {head}) has negative weight {weight}")]
    NegativeMovementWeight { tail: usize, head: usize, weight: i64 },
    #[error("terminals s and t must be distinct (both are {0})")]
    TerminalsEqual(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("value {0} exceeds the supported magnitude 2^40")]
    ValueTooLarge(i64),
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("no directed s-t path in the problem graph")]
    NoStPath,
    #[error("target of size {target} exceeds the {tokens} available tokens")]
    TargetTooLarge { target: usize, tokens: usize },
    #[error("algorithm precondition violated: {0}")]
    AlgorithmPreconditionViolated(String),
    #[error("instance too large for exhaustive search: {0}")]
    InstanceTooLarge(String),
    #[error("enumeration cap exceeded after {paths} paths")]
    CapExceeded { paths: u64 },
    #[error("{tokens} tokens exceed the configured limit {limit}")]
    KTooLarge { tokens: usize, limit: usize },
    #[error("problem graph has an edge of non-positive weight")]
    NonpositiveWeightPresent,
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("decomposition width {width} exceeds cap {cap}")]
    WidthTooLarge { width: usize, cap: usize },
    #[error("exact decomposition requested for {0} vertices (limit 16)")]
    NTooLargeForExact(usize),
    #[error("no applicable algorithm for this instance")]
    Undecided,
    #[error("circulating orientation source has {0} edges (limit 20)")]
    TooManyEdges(usize),
    #[error("vertex {0} has odd weighted degree")]
    OddDegreeSource(usize),
    #[error("artifact was not produced by a generator: {0}")]
    NotAGeneratedArtifact(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NegativeCycleInProblem => "NEGATIVE_CYCLE_IN_PROBLEM",
            Error::NegativeMovementWeight { .. } => "NEGATIVE_MOVEMENT_WEIGHT",
            Error::TerminalsEqual(_) => "TERMINALS_EQUAL",
            Error::VertexOutOfRange { .. } => "VERTEX_OUT_OF_RANGE",
            Error::SelfLoop(_) => "SELF_LOOP",
            Error::ValueTooLarge(_) => "VALUE_TOO_LARGE",
            Error::Malformed(_) => "MALFORMED",
            Error::NoStPath => "NO_ST_PATH",
            Error::TargetTooLarge { .. } => "TARGET_TOO_LARGE",
            Error::AlgorithmPreconditionViolated(_) => "ALGORITHM_PRECONDITION_VIOLATED",
            Error::InstanceTooLarge(_) => "INSTANCE_TOO_LARGE",
            Error::CapExceeded { .. } => "CAP_EXCEEDED",
            Error::KTooLarge { .. } => "K_TOO_LARGE",
            Error::NonpositiveWeightPresent => "NONPOSITIVE_WEIGHT_PRESENT",
            Error::InvalidDecomposition(_) => "INVALID_DECOMPOSITION",
            Error::WidthTooLarge { .. } => "WIDTH_TOO_LARGE",
            Error::NTooLargeForExact(_) => "N_TOO_LARGE_FOR_EXACT",
            Error::Undecided => "UNDECIDED",
            Error::TooManyEdges(_) => "TOO_MANY_EDGES",
            Error::OddDegreeSource(_) => "ODD_DEGREE_SOURCE",
            Error::NotAGeneratedArtifact(_) => "NOT_A_GENERATED_ARTIFACT",
        }
    }

    /// Errors that stem from the input rather than from a solver limit.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NegativeCycleInProblem
                | Error::NegativeMovementWeight { .. }
                | Error::TerminalsEqual(_)
                | Error::VertexOutOfRange { .. }
                | Error::SelfLoop(_)
                | Error::ValueTooLarge(_)
                | Error::Malformed(_)
                | Error::TooManyEdges(_)
                | Error::OddDegreeSource(_)
                | Error::NotAGeneratedArtifact(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
