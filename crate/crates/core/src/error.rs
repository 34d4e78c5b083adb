use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("layout has no objects")]
    EmptyLayout,

    /// A layout invariant was violated; `object` names the offending object when there is one.
    #[error("{}", match .object {
        Some(id) => format!("object `{id}`: {message}"),
        None => message.clone(),
    })]
    Validation { object: Option<String>, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("image decode error: {0}")]
    Decode(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty input")]
    EmptyInput,

    #[error("label sets differ: {0}")]
    LabelMismatch(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

impl Error {
    pub(crate) fn validation(object: Option<&str>, message: impl Into<String>) -> Self {
        Error::Validation {
            object: object.map(str::to_owned),
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}
