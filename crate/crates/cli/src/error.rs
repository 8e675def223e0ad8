use resolvent_inv::Error;

/// Failure classes with their process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable or schema-invalid input (exit 1).
    #[error("invalid input: {0}")]
    Schema(String),
    /// Hypotheses of the inversion fail (exit 2).
    #[error("not admissible: {0}")]
    Inadmissible(String),
    /// A resolvent or transfer function is singular, or the numerics broke
    /// down (exit 3).
    #[error("singular: {0}")]
    Singular(String),
    /// The command ran but its success criterion failed (exit 4).
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Schema(_) => 1,
            Self::Inadmissible(_) => 2,
            Self::Singular(_) => 3,
            Self::CheckFailed(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::HypothesisViolation(_)
            | Error::OutsideHull { .. }
            | Error::TargetIsPole { .. }
            | Error::IllPosedConfiguration { .. }
            | Error::UnsupportedKernel(_)
            | Error::RepeatedRoot { .. }
            | Error::DegenerateSeries
            | Error::ZeroOfSeries { .. } => Self::Inadmissible(msg),
            Error::SingularResolvent { .. }
            | Error::SingularTransfer { .. }
            | Error::SingularMatrix
            | Error::PoleEvaluation { .. }
            | Error::NotPositiveDefinite
            | Error::IllConditioned { .. }
            | Error::NoConvergence
            | Error::ValidationFailed { .. } => Self::Singular(msg),
            _ => Self::Schema(msg),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
