use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] mzlab_core::Error),

    #[error("unknown example `{0}` (see `mzlab list-examples`)")]
    UnknownExample(String),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 3 for exhausted budgets and windows, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        use mzlab_core::Error as E;
        match self {
            CliError::Core(E::BudgetExceeded { .. } | E::OutOfWindow(_) | E::TargetOverflow { .. }) => 3,
            _ => 2,
        }
    }
}
