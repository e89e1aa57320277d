use thiserror::Error;

/// Errors surfaced by the library.
///
/// Invalid-input errors come from user-facing preconditions; `TheoremViolation`
/// is reserved for a verified statement failing on a concrete instance and is
/// treated as fatal by callers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A cyclotomic value expected to be rational reduced to a non-constant
    /// remainder. Indicates a non-closed class set or an upstream bug.
    #[error("non-rational value: remainder has positive degree (conductor {conductor})")]
    NonRational { conductor: u32 },

    #[error("class set is not closed: class {class} raised to exponent {exponent} lands in class {lands}, which is missing")]
    NotClosed {
        class: usize,
        exponent: u64,
        lands: usize,
    },

    #[error("class set does not contain the identity class")]
    IdentityMissing,

    #[error("hook at row {row}, column {col} does not belong to the partition")]
    NoSuchHook { row: u32, col: u32 },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
