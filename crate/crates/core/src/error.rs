use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module of the crate.
///
/// `Inconsistent` marks measurements that violate the physical bounds of the
/// model (superlinear speedup, efficiency above 1, payload above nominal).
/// Such inputs are rejected rather than clamped so that data problems stay
/// visible. `Internal` marks violated invariants that indicate a bug; the CLI
/// maps it to a distinct exit status.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} out of range: {constraint}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("{what} requires k >= {min}, got k = {k}")]
    ProcessorCount {
        what: &'static str,
        k: u64,
        min: u64,
    },

    #[error("inconsistent measurement: {0}")]
    Inconsistent(String),

    #[error("gain is unbounded: the serial fraction is zero")]
    UnboundedGain,

    #[error(
        "machine spends all time on overhead: serial fraction {total} >= 1 at k = {k}"
    )]
    OverheadExceedsRun { total: f64, k: f64 },

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
