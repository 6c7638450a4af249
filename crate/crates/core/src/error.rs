use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gamma pole at {0}")]
    Pole(String),
    #[error("unknown cone `{0}`")]
    UnknownCone(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("graph is not chordal")]
    NotChordal,
    #[error("graph contains an induced path on four vertices (not A4-free)")]
    NotA4Free,
    #[error("rank {0} outside supported range 1..=12")]
    RankOutOfRange(usize),
    #[error("convergence guard violated: {0}")]
    Guard(String),
    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },
    #[error("completion condition fails for cone `{0}`")]
    CompletionFails(String),
    #[error("unsupported test function: {0}")]
    Unsupported(String),
    #[error("boundary point")]
    Boundary,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable short name used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole(_) => "pole",
            Error::UnknownCone(_) => "unknown_cone",
            Error::InvalidStructure(_) => "invalid_structure",
            Error::Dimension { .. } => "dimension",
            Error::NotChordal => "not_chordal",
            Error::NotA4Free => "not_a4_free",
            Error::RankOutOfRange(_) => "rank_out_of_range",
            Error::Guard(_) => "guard",
            Error::Quadrature { .. } => "quadrature",
            Error::CompletionFails(_) => "completion_fails",
            Error::Unsupported(_) => "unsupported",
            Error::Boundary => "boundary",
            Error::Input(_) => "input",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
