use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The conditioned class `D_{n;k}` has no members.
    #[error("empty class: no permutation of size {n} has exactly {k} fixed points")]
    EmptyClass { n: usize, k: usize },

    /// The closed forms only hold for `n >= 3`.
    #[error("unsupported size: closed forms require n >= 3, got n = {n}")]
    UnsupportedSize { n: usize },

    /// Exhaustive enumeration refuses sizes above its cap.
    #[error("size cap exceeded: enumeration supports n <= {cap}, got n = {n}")]
    SizeCap { n: usize, cap: usize },
}

impl Error {
    /// Stable machine-readable code, used in JSON error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::EmptyClass { .. } => "EmptyClass",
            Error::UnsupportedSize { .. } => "UnsupportedSize",
            Error::SizeCap { .. } => "SizeCap",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
