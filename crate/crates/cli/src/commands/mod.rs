pub mod cocycle_norm;
pub mod orbit;
pub mod scan;
pub mod verdict;
pub mod verify_group;

use crate::config::CliError;

/// Maps core errors to exit semantics: malformed inputs are configuration
/// errors (exit 2), everything else is a failed scientific check (exit 1).
pub(crate) fn sci(e: iwasawa_core::Error) -> CliError {
    use iwasawa_core::Error;
    match e {
        Error::InvalidSpec(_) | Error::Precondition(_) | Error::DimensionMismatch { .. } => {
            CliError::Config(e.to_string())
        }
        other => CliError::Check(other.to_string()),
    }
}
