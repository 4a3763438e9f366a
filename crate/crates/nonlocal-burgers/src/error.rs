//! Crate-wide error type.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Two grid-bound objects (kernel/field) live on different grids.
    #[error("grid mismatch: expected (L={expected_l}, n={expected_n}), got (L={got_l}, n={got_n})")]
    GridMismatch {
        expected_l: f64,
        expected_n: usize,
        got_l: f64,
        got_n: usize,
    },

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The kernel grid is too small for the requested kernel: its tail at the
    /// domain edge carries non-negligible mass.
    #[error(
        "kernel tail truncated: G({half_width}) = {tail_value:.3e} (est. tail mass {tail_mass:.3e}) \
         exceeds the 1e-12 tolerance; enlarge the half-width"
    )]
    TailTruncation {
        half_width: f64,
        tail_value: f64,
        tail_mass: f64,
    },

    /// A Burgers step was requested with a time step above the CFL limit.
    #[error("CFL violation: dt = {dt:.6e} exceeds the admissible {admissible:.6e}")]
    CflViolation { dt: f64, admissible: f64 },

    /// Splitting refinement did not reach the requested tolerance.
    #[error("no convergence after {} halvings; successive L1 gaps: {gaps:?}", gaps.len())]
    NonConvergence { gaps: Vec<f64> },

    /// Root bracketing failed even after the one documented widening retry.
    #[error("bisection bracket failure solving {what} at t = {t:.6e}: no sign change on [{lo:.6e}, {hi:.6e}]")]
    BracketFailure {
        what: &'static str,
        t: f64,
        lo: f64,
        hi: f64,
    },

    /// A config file could not be parsed.
    #[error("config parse error at line {line}: {message}")]
    ConfigParse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
