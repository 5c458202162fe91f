use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("malformed graph JSON: {0}")]
    MalformedJson(String),

    #[error("terminal set is empty")]
    EmptyTerminalSet,

    #[error("duplicate product vertex ({0},{1}) in terminal set")]
    DuplicateTerminal(usize, usize),

    #[error("multiset has {got} elements, at least {needed} required")]
    MultisetTooSmall { needed: usize, got: usize },

    #[error("terminal support of size {support} exceeds the DP width limit of {limit}")]
    DpWidthExceeded { support: usize, limit: usize },

    #[error("superset enumeration over {free} free vertices exceeds the oracle guard of {limit}")]
    OracleGuardExceeded { free: usize, limit: usize },

    #[error("graph of order {order} exceeds the bitmask limit of {limit} vertices")]
    OrderTooLarge { order: usize, limit: usize },

    #[error("k = {k} outside the admissible range {min}..={max}")]
    KOutOfRange { k: usize, min: usize, max: usize },

    #[error("sweep over {count} subsets exceeds the subset guard of {limit}")]
    SweepGuardExceeded { count: u128, limit: u128 },

    #[error("factor {0} is disconnected")]
    FactorDisconnected(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameters for family `{family}`: {reason}")]
    InvalidFamilyParams { family: String, reason: String },

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("report output failed: {0}")]
    Output(String),
}
