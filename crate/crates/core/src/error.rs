use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything the library can refuse to do.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("variable x{index} is out of range for {width} variable(s)")]
    VariableOutOfRange { index: usize, width: usize },

    #[error(transparent)]
    Budget(#[from] BudgetError),

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("a depth-0 chain has no suffix")]
    NoSuffix,

    #[error("malformed chain `{text}`: {reason}")]
    ChainSyntax { text: String, reason: String },

    #[error("malformed substitution: {0}")]
    SubstitutionSyntax(String),

    #[error(transparent)]
    Cardinality(#[from] CardinalityError),

    #[error("substitution is not a unifier of the problem formula")]
    NotUnifier,

    #[error("map is not a morphism of chain spaces")]
    NotMorphism,

    #[error("frame has a path of length {bound}, so it is not {bound}-bounded")]
    UnboundedFrame { bound: usize },
}

/// Refusals caused by the doubly exponential size of the search spaces.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("chain space of width {width} below depth {depth} has {required} chains, above the cap of {cap}")]
    ChainSpace {
        width: usize,
        depth: usize,
        required: u128,
        cap: usize,
    },

    #[error("search needs 2^{required_log2} candidates but the cap is {cap}")]
    Candidates { required_log2: u32, cap: u64 },
}

/// The two ways the surjection cardinality condition can fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardinalityError {
    #[error("source and target must be nonempty")]
    Empty,

    #[error("{classes} equivalence classes cannot map injectively into {target} targets")]
    TooManyClasses { classes: usize, target: usize },

    #[error("{source_len} sources cannot cover {target} targets")]
    TargetTooLarge { source_len: usize, target: usize },
}
