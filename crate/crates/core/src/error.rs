use thiserror::Error;

/// Crate-wide error type. Validators return a dedicated variant per failure
/// kind so callers (and the CLI) can report exactly what went wrong.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {index} is empty")]
    EmptyEdge { index: usize },

    #[error("edge {index} repeats vertex {vertex}")]
    RepeatedVertexInEdge { index: usize, vertex: usize },

    #[error("self-loop at edge {index}")]
    SelfLoop { index: usize },

    #[error("duplicate edge {{{u}, {v}}} at edge {index}")]
    DuplicateEdge { index: usize, u: usize, v: usize },

    #[error("graph is disconnected: no path between {u} and {v}")]
    Disconnected { u: usize, v: usize },

    #[error("edge {index} has rank {rank}; this operation needs a simple graph")]
    NotRankTwo { index: usize, rank: usize },

    #[error("configuration repeats vertex {vertex}")]
    DuplicateConfigVertex { vertex: usize },

    #[error("configurations must have equal size ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("invalid condition: {0}")]
    InvalidCondition(String),

    #[error("move sources do not match the configuration")]
    MoveSourceMismatch,

    #[error("duplicate move target {vertex}")]
    DuplicateMoveTarget { vertex: usize },

    #[error("move {from} -> {to} exceeds the distance bound {max}")]
    MoveDistanceExceeded { from: usize, to: usize, max: usize },

    #[error("move {from} -> {to} connects vertices with no path between them")]
    MoveUnreachablePair { from: usize, to: usize },

    #[error("mover budget exceeded ({used} > {budget})")]
    MoverBudgetExceeded { used: usize, budget: usize },

    #[error("relaxed moves are validated with the relaxed-sequence validator")]
    RelaxedRuleMisuse,

    #[error("configuration is not a {0}")]
    NotASolution(&'static str),

    #[error("sequence invalid at index {index}: {reason}")]
    SequenceInvalid { index: usize, reason: Box<Error> },

    #[error("malformed sequence: {0}")]
    SequenceStructure(String),

    #[error("relaxed move {index}: {used} additions exceed the allowed {allowed}")]
    RelaxedAdditionBudget {
        index: usize,
        used: usize,
        allowed: usize,
    },

    #[error("relaxed move {index}: {used} jumps and additions exceed the allowed {allowed}")]
    RelaxedJumpBudget {
        index: usize,
        used: usize,
        allowed: usize,
    },

    #[error("relaxed move {index}: no token available on vertex {vertex}")]
    RelaxedMissingToken { index: usize, vertex: usize },

    #[error("relaxed move {index}: resulting configuration is not a vertex cover")]
    RelaxedNotACover { index: usize },

    #[error("relaxed sequence endpoints do not match the given start and target")]
    RelaxedEndpointMismatch,

    #[error("no saturating matching exists for the requested side")]
    NoSaturatingMatching,

    #[error("matching repair precondition violated: {0}")]
    RepairPrecondition(String),

    #[error("no alternating cycle available to repair the matching")]
    RepairStuck,

    #[error("state space too large: C({n}, {k}) = {count} exceeds the cap {cap} (set RECONFIG_ENUM_CAP to raise it)")]
    EnumerationCap {
        n: usize,
        k: usize,
        count: u128,
        cap: u64,
    },

    #[error("the oracle supports at most 64 vertices (got {n})")]
    OracleTooLarge { n: usize },

    #[error("endpoint configuration does not satisfy the condition")]
    InfeasibleEndpoint,

    #[error("instance outside the solver's guarantee: {0}")]
    OutsideGuarantee(String),

    #[error("not a maximal independent set: {0}")]
    NotMaximal(String),

    #[error("gadget self-verification failed: {0}")]
    GadgetVerification(String),

    #[error("not a valid split partition: {0}")]
    SplitWitness(String),

    #[error("move {index} slides {slides} tokens; split-graph moves slide at most 2")]
    TooManySlides { index: usize, slides: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
