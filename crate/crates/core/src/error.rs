use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("format error: {0}")]
    Format(String),

    #[error("guard exceeded: {what} is {actual}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a subgroup")]
    NotSubgroup,

    #[error("group of order {0} is not a p-group")]
    NotAPGroup(u64),

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("p = {p} divides the acting group order {order}")]
    CoprimalityViolation { p: u64, order: u64 },

    #[error("missing field `{0}`")]
    MissingField(&'static str),

    #[error("invalid field `{field}`: {reason}")]
    InvalidField { field: &'static str, reason: String },

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn guard(what: &'static str, limit: u64, actual: u64) -> Self {
        Error::GuardExceeded {
            what,
            limit,
            actual,
        }
    }

    /// True for errors caused by bad input (as opposed to resource guards or
    /// internal failures).
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::GuardExceeded { .. } | Error::Internal(_))
    }
}
