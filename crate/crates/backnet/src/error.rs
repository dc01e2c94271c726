//! Error types shared across the planning toolkit.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the toolkit.
///
/// Variants are grouped by how a frontend should react: `Parse` and the
/// `Invalid*` variants are caller mistakes, `Infeasible*` means the request
/// is well-formed but has no solution, `CapExceeded` and `CombinatorialLimit`
/// guard exponential algorithms, and `InternalConsistency` flags a violated
/// postcondition (a bug, never a user error).
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed JSON or a value that cannot be represented at all.
    #[error("parse error: {0}")]
    Parse(String),

    /// A structurally invalid problem instance (bad ids, non-finite
    /// coordinates, out-of-range parameters, ...).
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// A structurally invalid plan (out-of-range endpoints, self-links).
    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    /// A query that does not type-check against the data it was asked about,
    /// e.g. a path-diversity query with identical endpoints.
    #[error("invalid query: {0}")]
    InvalidQuery(String),

    /// The instance admits no plan at all (e.g. the redundancy degree K is
    /// not smaller than the station count).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A disjoint-augmentation round could not add any link because every
    /// remaining pair is already used or forbidden.
    #[error("infeasible augmentation: {0}")]
    InfeasibleAugmentation(String),

    /// A brute-force oracle was asked to run above its instance-size cap.
    #[error("oracle cap exceeded: {m} stations, cap is {cap}")]
    CapExceeded { m: usize, cap: usize },

    /// A station's neighbor set is too large to enumerate combinations for.
    #[error("combinatorial limit: station {station} has {neighbors} neighbors, cap is {cap}")]
    CombinatorialLimit {
        station: usize,
        neighbors: usize,
        cap: usize,
    },

    /// The planning graph admits no spanning selection (one combination per
    /// station, pairwise consistent).
    #[error("no consistent combination selection: {0}")]
    NoClique(String),

    /// A postcondition or cross-check failed; indicates a bug in the solver.
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),

    /// Filesystem failure while writing experiment results.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
