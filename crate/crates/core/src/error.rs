use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group table: {reason}")]
    InvalidGroupTable {
        reason: String,
        /// The (a, b, c) triple with (ab)c != a(bc), when associativity is what failed.
        triple: Option<(usize, usize, usize)>,
    },

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("subset is not closed under inverses: {0}")]
    NotSymmetric(String),

    #[error("subset is not closed under conjugation: {0}")]
    NotNormal(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid vertex measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid connection: {0}")]
    InvalidConnection(String),

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("vertex {0} is isolated; normalized operators need d_x >= 1")]
    IsolatedVertex(usize),

    #[error("graph is not regular; {0} is only defined for regular graphs")]
    NotRegular(&'static str),

    #[error("no admissible vertex set for {0}")]
    NoAdmissibleSet(&'static str),

    #[error("Jacobi eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::OrderCapExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
