use thiserror::Error;

use crate::model::Item;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rule: item {0} occurs in both antecedent and consequent")]
    InvalidRule(Item),

    #[error("invalid query rule: {0}")]
    InvalidQuery(String),

    #[error("rule is not contained in the sequence")]
    NotContained,

    #[error("invalid rule instance: left index {left} must be below right index {right}")]
    InvalidInstance { left: usize, right: usize },

    #[error("confidence is undefined: antecedent support is zero")]
    UndefinedConfidence,

    #[error("similarity domain error: rule support {rule_support} outside (0, {query_support}]")]
    SimilarityDomain {
        rule_support: usize,
        query_support: usize,
    },

    #[error("item universe of {0} items is too large for exhaustive enumeration (max 16)")]
    UniverseTooLarge(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
