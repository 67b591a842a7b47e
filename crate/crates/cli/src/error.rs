use std::fmt;

use fkpoints::freealg::PresentationError;
use fkpoints::graphs::GraphError;
use fkpoints::replication::ReplicationError;
use fkpoints::scheme::SolveError;

#[derive(Debug)]
pub enum CliError {
    /// A check ran and failed.
    Check(String),
    Usage(String),
    Io(String),
    Guard(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Guard(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Check(m) | CliError::Usage(m) | CliError::Io(m) | CliError::Guard(m) => {
                f.write_str(m)
            }
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::GuardExceeded { .. } | SolveError::NodeBudgetExceeded { .. } => {
                CliError::Guard(e.to_string())
            }
            SolveError::Presentation(p) => p.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::InvalidArgument(_) => CliError::Usage(e.to_string()),
            other => CliError::Io(other.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::EnumerationBound { .. } | GraphError::EmptyGraph => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Io(other.to_string()),
        }
    }
}

impl From<ReplicationError> for CliError {
    fn from(e: ReplicationError) -> Self {
        match e {
            ReplicationError::Solve(s) => s.into(),
            ReplicationError::Presentation(p) => p.into(),
            ReplicationError::Graph(g) => g.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}
