use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("undeclared variable `{name}` at {line}:{column}")]
    Undeclared {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("nested conditional expression at {line}:{column}: conditions and aggregate elements must be condition-free")]
    NestedConditional { line: usize, column: usize },

    #[error("generated variable `{0}` collides with a declared variable")]
    NameCollision(String),

    #[error("invalid domain declaration: {0}")]
    InvalidDomain(String),

    #[error("not an interpretation: {0}")]
    InvalidInterpretation(String),

    #[error("conflicting declarations for variable `{0}`")]
    DomainConflict(String),

    #[error("enumeration needs {required} interpretations, over the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("rule has {count} head assignments; unfolding is limited to {max}")]
    TooManyHeadAssignments { count: usize, max: usize },

    #[error("input is not desugared: {0}")]
    NotDesugared(String),

    #[error("unknown property suite `{0}`")]
    UnknownSuite(String),
}

impl Error {
    /// Resource-limit errors, as opposed to malformed input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::TooManyHeadAssignments { .. }
        )
    }
}
