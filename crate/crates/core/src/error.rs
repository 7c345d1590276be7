use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sampling scheme has no ratios")]
    EmptyScheme,

    #[error("undersampling ratios must be >= 1 (got {0})")]
    NonPositive(u64),

    #[error("ratios {0} and {1} are not coprime (gcd = {2})")]
    NotCoprime(u64, u64, u64),

    #[error("m = {m} is outside [0, {max}]")]
    OutOfRange { m: u64, max: u64 },

    #[error("a single channel with ratio {0} > 1 can never observe every lag")]
    InsufficientChannels(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot pack {k} frequencies with circular gap > {min_gap} into (0, 1]")]
    PackingInfeasible { k: usize, min_gap: f64 },

    #[error("frequency rejection sampling gave up after {0} redraws")]
    RejectionBudgetExceeded(usize),

    #[error("sample index set does not match the sampling lattice: {0}")]
    IndexSetMismatch(String),

    #[error("horizon {horizon} is shorter than M + L - 1 = {required}")]
    HorizonTooShort { horizon: usize, required: usize },

    #[error("{}", zero_coverage_message(*row, *col, *min_snapshots))]
    ZeroCoverage {
        row: usize,
        col: usize,
        min_snapshots: Option<usize>,
    },

    #[error("model order must be at least 1")]
    ZeroOrder,

    #[error("model order k = {k} must be at most M - 1 = {}", m - 1)]
    OrderTooLarge { k: usize, m: usize },

    #[error("signal subspace is rank deficient (singular value ratio {0:.3e})")]
    DegenerateSubspace(f64),

    #[error("eigenvalue iteration did not converge")]
    EigenFailure,

    #[error("length mismatch: {0} estimates vs {1} truths")]
    LengthMismatch(usize, usize),

    #[error("empty input")]
    EmptyInput,

    #[error("parse error: {0}")]
    Parse(String),
}

fn zero_coverage_message(row: usize, col: usize, min_snapshots: Option<usize>) -> String {
    let mut msg = format!(
        "position count P[{},{}] is zero: no snapshot observes both lags; increase the snapshot count L",
        row + 1,
        col + 1
    );
    if let Some(l) = min_snapshots {
        msg.push_str(&format!(" (L >= {l} guarantees full coverage for this scheme)"));
    }
    msg
}
