use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped the way the command-line front end maps them to
/// exit codes: resource bounds, usage/contract violations, and genuine
/// mathematical failures of a verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("resource bound exceeded: {what} (bound {bound})")]
    ResourceBound { what: String, bound: u128 },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("element is not a {p}-th power")]
    NotPthPower { p: u64 },
    #[error("element is already a {p}-th power")]
    IsPthPower { p: u64 },
    #[error("basis is linearly dependent in the class group")]
    DependentBasis,
    #[error("field is not rigid: {0}")]
    NonRigid(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("outside the supported (tame p-power) scope: {0}")]
    OutOfScope(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
