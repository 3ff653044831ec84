use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected two tokens, found {found}")]
    TokenCount { line: usize, found: usize },
    #[error("line {line}: self-loop on `{label}`")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: duplicate edge `{u}`-`{v}`")]
    DuplicateEdge { line: usize, u: String, v: String },
    #[error("line {line}: edge `{u}`-`{v}` closes a cycle")]
    Cycle { line: usize, u: String, v: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} closes a cycle")]
    Cycle(usize, usize),
    #[error("input is not connected ({components} components)")]
    Disconnected { components: usize },
    #[error("{what}: n = {n} exceeds the brute-force limit of {limit}")]
    GuardExceeded { what: &'static str, n: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("count overflowed fixed-width arithmetic")]
    CountOverflow,
    #[error("enumeration truncated after {cap} sets")]
    Truncated { cap: usize },
    #[error("structural violation: {0}")]
    StructuralViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
