use alloc::string::String;
use core::fmt;

/// Errors raised by the engine. Verification failures are not errors; they
/// are reported in a [`crate::verify::ConjectureReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent user input.
    Input(String),
    /// Exponent vectors of different ranks were combined.
    RankMismatch { expected: usize, found: usize },
    /// Enumeration exceeded the configured element cap.
    GroupTooLarge { cap: usize },
    /// A matrix that must be invertible is singular.
    Singular(String),
    /// Computed data contradicts an invariant that must always hold.
    Consistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(m) => write!(f, "input error: {m}"),
            Error::RankMismatch { expected, found } => {
                write!(f, "exponent rank mismatch: expected {expected}, found {found}")
            }
            Error::GroupTooLarge { cap } => write!(
                f,
                "group too large or possibly infinite: more than {cap} elements"
            ),
            Error::Singular(m) => write!(f, "singular matrix: {m}"),
            Error::Consistency(m) => write!(f, "internal consistency failure: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
