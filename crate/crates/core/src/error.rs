use alloc::string::String;

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("permutation search bound exceeded: {players} players, bound {bound}")]
    SearchBoundExceeded { players: usize, bound: usize },
    #[error("iteration did not converge after {steps} steps (last residual {last_residual:e})")]
    NonConvergence { steps: u64, last_residual: f64 },
    #[error("degenerate payoffs: {0}")]
    DegeneratePayoff(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("singular monitoring: {0}")]
    SingularMonitoring(String),
    #[error("degenerate controller: {0}")]
    DegenerateController(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
