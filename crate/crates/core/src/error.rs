use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("system is not modal: {0}")]
    NotModal(String),
    #[error("mix condition violated by must-transition {0}")]
    MixConditionViolated(String),
    #[error("not an implementation: {0}")]
    NotImplementation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unbound variable X{0}")]
    UnboundVariable(u32),
    #[error("enumeration budget of {budget} terms exceeded")]
    BudgetExceeded { budget: usize },
    #[error("invalid system: {0}")]
    Invalid(String),
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("internal validation failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
