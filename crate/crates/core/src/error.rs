use thiserror::Error;

/// Errors produced by the polygon-space engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A length token could not be parsed or is not strictly positive.
    #[error("invalid length {token:?}: {reason}")]
    InvalidLength { token: String, reason: String },

    #[error("a length vector needs at least 3 links, got {0}")]
    TooFewLinks(usize),

    /// Lengths whose exact total does not fit in 64 bits.
    #[error("length total overflows 64-bit range")]
    LengthOverflow,

    /// Subset masks are limited to 64 links.
    #[error("subset mask out of range: {0}")]
    Mask(String),

    /// An enumeration or table would exceed its configured size cap.
    #[error("budget exceeded in {what}: {detail}")]
    Budget { what: &'static str, detail: String },

    /// An operation was called outside of its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate Hessian: eigenvalue {eigenvalue:e} inside dead zone ±{threshold:e}")]
    DegenerateHessian { eigenvalue: f64, threshold: f64 },

    /// The Monte-Carlo component oracle did not gather enough evidence.
    #[error("inconclusive: only {survivors} of {samples} samples reached the closed-polygon set")]
    Inconclusive { survivors: usize, samples: usize },

    #[error("atlas format: {0}")]
    Format(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
