use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Validation failures and domain violations are
/// ordinary values, never panics.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A spec failed its construction-time constraints.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// A point lies outside the domain an operation requires.
    #[error("domain error: {0}")]
    DomainError(String),

    /// Quadratic has no root in the open unit disc.
    #[error("no root in the open unit disc")]
    NoRootInDisc,

    /// Quadratic has two roots in the open unit disc.
    #[error("two roots in the open unit disc")]
    TwoRootsInDisc,

    /// A matrix that must be invertible is singular to working precision.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// A matrix that must be Hermitian is not, beyond tolerance.
    #[error("matrix not Hermitian within tolerance")]
    NotHermitian,

    /// A matrix that must be positive semidefinite has a negative eigenvalue
    /// beyond tolerance.
    #[error("matrix not positive semidefinite within tolerance")]
    NotPsd,

    /// A symmetric-matrix operation received a non-symmetric input.
    #[error("matrix not symmetric")]
    NotSymmetric,

    /// An internal invariant failed; indicates a bug, reported not panicked.
    #[error("internal error: {0}")]
    Internal(String),
}
