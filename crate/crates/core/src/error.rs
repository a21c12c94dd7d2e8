use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} slots, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid natural transformation: {0}")]
    InvalidNat(String),
    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),
    #[error("element outside carrier: {0}")]
    OutOfCarrier(String),
    #[error("not enumerable: {0}")]
    NotEnumerable(String),
    #[error("law violated: {0}")]
    LawViolation(String),
    #[error("section condition fails: {0}")]
    SectionFails(String),
    #[error("right adjoint outside supported class: {0}")]
    UnsupportedRightAdjoint(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown builtin: {0}")]
    UnknownBuiltin(String),
    #[error("budget of {0} steps exceeded")]
    BudgetExceeded(u64),
}
