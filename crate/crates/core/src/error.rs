use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not normal (commutator norm {deviation:.3e})")]
    NotNormal { deviation: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("{what} did not converge")]
    NoConvergence { what: &'static str },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: String, actual: String },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("columns are not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },
    #[error("value {re}{im:+}i is not interior to the numerical range (margin {margin:.3e})")]
    ValueOutsideRange { re: f64, im: f64, margin: f64 },
    #[error("operator norm {norm} is not below rho = {rho}")]
    NotStrictContraction { norm: f64, rho: f64 },
    #[error("disc certificate at radius {radius} failed (margin {margin:.3e}){}", target_suffix(*.target))]
    MarginLost {
        radius: f64,
        margin: f64,
        target: Option<usize>,
    },
    #[error("host too small: needs {needed} dimensions, {available} available{}", target_suffix(*.target))]
    HostTooSmall {
        needed: usize,
        available: usize,
        target: Option<usize>,
    },
    #[error("Walsh level {k} is too large (max 16)")]
    TooLarge { k: usize },
    #[error("block count {count} is not a power of two")]
    BadBlockCount { count: usize },
    #[error("blocks have mismatched sizes")]
    SizeMismatch,
    #[error("orthonormal system diagonal values do not approach the limit (worst deviation {deviation:.3e})")]
    SystemNotConverging { deviation: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bad host spec: {0}")]
    BadSpec(String),
    #[error("file not found: {0}")]
    FileNotFound(String),
}

fn target_suffix(target: Option<usize>) -> String {
    match target {
        Some(t) => format!(" at target {t}"),
        None => String::new(),
    }
}

impl Error {
    /// Attach the index of the target being synthesized when the error arose.
    pub fn at_target(self, index: usize) -> Self {
        match self {
            Error::MarginLost { radius, margin, .. } => Error::MarginLost {
                radius,
                margin,
                target: Some(index),
            },
            Error::HostTooSmall {
                needed, available, ..
            } => Error::HostTooSmall {
                needed,
                available,
                target: Some(index),
            },
            other => other,
        }
    }

    pub fn target(&self) -> Option<usize> {
        match self {
            Error::MarginLost { target, .. } | Error::HostTooSmall { target, .. } => *target,
            _ => None,
        }
    }
}
