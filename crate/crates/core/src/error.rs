use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid genus {0}: genus must be at least 1")]
    InvalidGenus(i64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("vanishing cycle must be nonzero")]
    InvalidCycle,

    #[error("monodromy {index} is not symplectic")]
    SymplecticViolation { index: usize },

    #[error("monodromy product is not the identity: {product}")]
    RelationViolation { product: String },

    #[error("vanishing cycle {index} does not match its monodromy")]
    CycleMismatch { index: usize },

    #[error("word letter {letter} out of range for {punctures} punctures")]
    IndexOutOfRange { letter: i64, punctures: usize },

    #[error("values do not satisfy the twisted cocycle condition (total {residual})")]
    NotACocycle { residual: String },

    #[error("section does not close: S_m = {residual}")]
    Closure { residual: String },

    #[error("value {0} is not integral but the ring is the integers")]
    NotIntegral(String),

    #[error("cocycle is not parabolic at puncture {puncture}")]
    ParabolicityRequired { puncture: usize },

    #[error("section does not extend over puncture {puncture}")]
    NotExtendable { puncture: usize },

    #[error("inputs live on different pencils")]
    PencilMismatch,

    #[error("expected a section of the {expected} bundle")]
    BundleMismatch { expected: &'static str },

    #[error("point is outside the fundamental polygon")]
    OutsideDomain,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(String),
}
