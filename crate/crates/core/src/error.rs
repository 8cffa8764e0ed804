//! Error types shared across the crate.

use thiserror::Error;

/// Errors from parsing, constructing, or transforming games and reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("malformed numeral `{0}`")]
    MalformedNumeral(String),
    #[error("malformed game: {0}")]
    MalformedGame(String),
    #[error("quota must be positive, got {0}")]
    NonPositiveQuota(String),
    #[error("quota {quota} exceeds the total weight {total}: no coalition can win")]
    QuotaExceedsTotal { quota: String, total: String },
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("empty player list")]
    EmptyPlayers,
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("invalid compressed game: {0}")]
    BadCompression(String),
    #[error("swing vector has {got} entries for {expected} players")]
    SwingLengthMismatch { got: usize, expected: usize },
    #[error("winning-coalition count {count} exceeds the number of coalitions 2^{n}")]
    WinningCountTooLarge { count: String, n: usize },
    #[error("total swing count is zero: a backend produced an inconsistent result")]
    ZeroTotalSwings,
}

/// Errors raised by the classifier's query functions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("zero weight present: ratio queries need strictly positive weights")]
    ZeroWeight,
    #[error("ratio must be positive, got {0}")]
    NonPositiveRatio(String),
}

/// Errors from individual computation backends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackendError {
    #[error("{backend}: precondition violated: {reason}")]
    Precondition {
        backend: &'static str,
        reason: String,
    },
    #[error("class shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("player count {n} exceeds the enumeration cap {cap}")]
    OverCap { n: usize, cap: usize },
    #[error("{backend}: weights and quota must be integers (rescale first)")]
    NonInteger { backend: &'static str },
    #[error("{backend}: estimated work {estimate} exceeds the budget {budget}")]
    BudgetExceeded {
        backend: &'static str,
        estimate: String,
        budget: String,
    },
    #[error("no applicable counting route: {0}")]
    NoRoute(String),
}

/// Errors from instance generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("invalid subset-sum instance: {0}")]
    BadInstance(String),
    #[error("instance size {m} exceeds the oracle cap {cap}")]
    OracleCap { m: usize, cap: usize },
    #[error("shape unsatisfiable with the given bounds: {0}")]
    Unsatisfiable(String),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Errors from backend selection and cross-checked execution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DispatchError {
    #[error("no applicable backend: {reason}; hint: {hint}")]
    NoApplicableBackend { reason: String, hint: String },
    #[error("cross-check mismatch between {primary} and {secondary}: {detail}")]
    CrosscheckMismatch {
        primary: String,
        secondary: String,
        detail: String,
    },
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Game(#[from] GameError),
}
