use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} does not exist in a graph of order {n}")]
    NoSuchVertex { vertex: usize, n: usize },
    #[error("[{u},{v}] is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{what}: size {size} exceeds the limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("malformed graph6 at byte {offset}: {reason}")]
    MalformedGraph6 { offset: usize, reason: String },
    #[error("unsupported pattern {0}")]
    UnsupportedPattern(String),
    #[error("token count k={k} is not admissible for a graph of order {n}")]
    BadK { n: usize, k: usize },
    #[error("token graph would have {vertices} vertices, budget is {budget}")]
    BudgetExceeded { vertices: u64, budget: u64 },
    #[error("subset rank {rank} out of range for C({n},{k}) = {count}")]
    IndexOutOfRange {
        rank: u64,
        n: usize,
        k: usize,
        count: u64,
    },
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("input is not regular: {0}")]
    NotRegularInput(String),
    #[error("graph has no path on three vertices")]
    NoP3Found,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid minor script at op {index}: {reason}")]
    InvalidScript { index: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
