use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the subshift is empty: no infinite path exists")]
    EmptyLanguage,
    #[error("point is not in the subshift")]
    NotInLanguage,
    #[error("operation is undefined on the zero element")]
    UndefinedOnZero,
    #[error("invalid index pair ({k}, {l}): need k <= l")]
    InvalidIndex { k: usize, l: usize },
    #[error("index {to} is not below {from}")]
    IndexOrder { from: String, to: String },
    #[error("index {index} is too coarse to decide containment (needs {required})")]
    IndexTooCoarse { index: String, required: String },
    #[error("index rectangle {rectangle} does not reach required index {required}")]
    RectangleTooSmall { rectangle: String, required: String },
    #[error("concrete maps come from different samples ({0} vs {1})")]
    SampleMismatch(String, String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid subshift: {0}")]
    InvalidSpec(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
