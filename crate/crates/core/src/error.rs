use thiserror::Error;

/// Errors shared by all modules.  Partiality (an action or decomposition that
/// is genuinely undefined on its input) is kept distinct from parse errors so
/// that callers can map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected a sigma-word, found `{found}` at letter {pos}")]
    NotSigmaWord { pos: usize, found: String },
    #[error("expected an a-word, found `{found}` at letter {pos}")]
    NotAWord { pos: usize, found: String },
    #[error("expected a positive word, found `{found}` at letter {pos}")]
    NotPositive { pos: usize, found: String },
    #[error("action undefined at letter {pos} (`{letter}`)")]
    Partial { pos: usize, letter: String },
    #[error("not a special element: {reason}")]
    NotSpecial { reason: String },
    #[error("position must not begin with 0")]
    LeadingZero,
    #[error("dyadic set is not realized by any tree")]
    Unrealizable,
    #[error("colour structure cannot invert a bracket at letter {pos}")]
    NoInverseBracket { pos: usize },
    #[error("budget of {budget} steps exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("enumeration depth {depth} exceeds cap {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
