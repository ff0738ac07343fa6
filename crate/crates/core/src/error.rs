use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("unknown arc ({0}, {1})")]
    UnknownArc(usize, usize),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("digraph invariant violated: {0}")]
    Invariant(String),

    #[error("contraction rejected: {0}")]
    Contract(String),

    #[error("cannot parse family spec `{spec}`: {reason}")]
    Parse { spec: String, reason: String },

    #[error("construction failed: {0}")]
    Construction(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
