use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no such graph: {0}")]
    NoSuchGraph(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// Carries an odd cycle of the offending graph.
    #[error("graph is not bipartite (odd cycle {cycle:?})")]
    NotBipartite { cycle: Vec<usize> },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
}
