use zdkit_core::Error;

/// Failures surfaced by the command line, each mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input file or flag.
    Validation(String),
    Core(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                Error::InvalidGame(_) | Error::InvalidInput(_) | Error::ParseRational(_) | Error::Precondition(_) => 2,
                Error::InfeasibleParameters(_)
                | Error::DegenerateController(_)
                | Error::DegeneratePayoff(_)
                | Error::SingularMonitoring(_) => 3,
                Error::ResourceLimit(_) | Error::SearchBoundExceeded { .. } | Error::NonConvergence { .. } => 4,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
