use thiserror::Error;

/// Errors raised by the analyses.
///
/// The variants line up with the CLI exit codes: input problems exit 2,
/// budget overruns exit 3. Structural and coverage failures are input errors
/// from the caller's point of view (the supplied cut family is unusable).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("resource budget exceeded: {what} (budget {budget})")]
    Budget { what: &'static str, budget: u64 },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("tree set violation: {0}")]
    TreeSet(crate::treeset::TreeSetViolation),

    #[error("coverage error: vertices in no cut: {}", .0.join(", "))]
    Coverage(Vec<String>),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
