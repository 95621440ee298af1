use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("card {card} is out of range for a deck of {v} cards")]
    CardOutOfRange { card: usize, v: usize },

    #[error("deck size {0} exceeds the supported maximum of 64 cards")]
    DeckTooLarge(usize),

    #[error("set size {k} exceeds deck size {v}")]
    SetTooLarge { k: usize, v: usize },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("duplicate card {card} in line {line}")]
    DuplicateCard { card: usize, line: String },

    #[error("duplicate line {0}")]
    DuplicateLine(String),

    #[error("line {line} has {found} cards, expected {expected}")]
    WrongLineSize {
        line: String,
        found: usize,
        expected: usize,
    },

    #[error("announcement is empty")]
    EmptyAnnouncement,

    #[error("lines of mixed sizes in one announcement")]
    MixedBlockSizes,

    #[error("invalid deal: {0}")]
    InvalidDeal(String),

    #[error("no line of the announcement avoids {0}")]
    NoLine(String),

    #[error("lines {0} and {1} both avoid the given hand")]
    Ambiguous(String, String),

    #[error("t = {t} exceeds block size {k}")]
    TupleTooLarge { t: usize, k: usize },

    #[error("work estimate {estimate} exceeds the limit {limit}; raise --max-work to force")]
    WorkLimitExceeded { estimate: u128, limit: u128 },

    #[error("binary designs need at least 3 and at most 6 bits, got {0}")]
    InvalidBits(u32),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("announcement has no unique triple point: {0}")]
    NoTriplePoint(String),

    #[error("hand {0} is not in the protocol table")]
    UnknownHand(String),

    #[error("announcement {0} is not in the support of any hand")]
    NotInSupport(String),
}

pub type Result<T> = std::result::Result<T, Error>;
