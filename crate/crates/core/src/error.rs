use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("region has {cells} cells, limit is {limit}")]
    RegionTooLarge { cells: usize, limit: usize },

    #[error("cell {0} is not in the region")]
    CellNotInRegion(String),

    #[error("invalid plug: {0}")]
    InvalidPlug(String),

    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cells {0} and {1} are not adjacent black/white neighbours")]
    NotAnEdge(String, String),

    #[error("sign system has no sign for edge {0}-{1}")]
    MissingEdge(String, String),

    #[error("region mismatch: {0}")]
    RegionMismatch(String),

    #[error("enumeration limit of {0} tilings exceeded")]
    LimitExceeded(u64),

    #[error("{what} exceeds limit: {size} > {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("no single gauge sign: {0}")]
    GaugeInconsistent(String),

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("fold error: {0}")]
    Fold(String),

    #[error("search cap exceeded: {0}")]
    SearchCap(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
