//! Command line front end for subgroup-generating bipartite graphs.
//!
//! Four entry points, one per subcommand:
//! - [`report`]: full per-group analysis as JSON, optionally a DOT drawing;
//! - closed-form verification over (family, prime) grids via
//!   [`sgb_core::verify_family`];
//! - [`search`]: batch runs over group families, persisting one JSONL record
//!   per group plus a derived CSV summary, resumable and deterministic;
//! - a generic Zagreb-inequality check on explicit degree files.
//!
//! Exit codes are part of the contract: 0 success (and no violations),
//! 1 at least one inequality violation found, 2 usage or input error,
//! 3 internal invariant failure.

pub mod families;
pub mod report;
pub mod search;

use std::path::PathBuf;

use thiserror::Error;

pub use families::{enumerate_groups, GroupSpec, SearchConfig, SearchFamily};
pub use report::{analyze, dot_string, parse_degree_file, Analysis, GroupReport};
pub use search::{run_search, SearchRecord, SearchSummary, SkippedRecord};

/// Exit code for a run that completed and found no inequality violation.
pub const EXIT_OK: i32 = 0;
/// Exit code signalling at least one violation (or verification mismatch).
pub const EXIT_VIOLATION: i32 = 1;
/// Exit code for usage and input errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for broken internal invariants.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] sgb_core::Error),

    #[error("io-error: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Maps the error to the documented process exit code. Everything the
    /// caller can fix is a usage error; only broken invariants are internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(sgb_core::Error::InternalInconsistency(_))
            | Error::Core(sgb_core::Error::NonIntegralResult(_)) => EXIT_INTERNAL,
            Error::Core(_) | Error::Io { .. } | Error::Usage(_) => EXIT_USAGE,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
    let path = path.into();
    move |source| Error::Io { path, source }
}
