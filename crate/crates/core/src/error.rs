use thiserror::Error;

/// Errors raised across the notation, calculus and derivation layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {elem} is outside the field of order `{order}`")]
    Domain { order: String, elem: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("order `{0}` is not linear")]
    NotLinear(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("ill-formed term: {0}")]
    IllFormed(String),
    #[error("terms belong to different systems: `{0}` vs `{1}`")]
    CrossSystem(String, String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no witness found within bound {bound}")]
    WitnessNotFound { bound: usize },
    #[error("rule {rule} does not apply to principal formula {principal}")]
    RuleMismatch { rule: String, principal: String },
    #[error("open term: {0}")]
    OpenTerm(String),
    #[error("generator bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("forcing conflict in slot {slot} at {elem}")]
    ForcingConflict { slot: u64, elem: u64 },
    #[error("extraction failed at {addr}: {msg}")]
    Extraction { addr: String, msg: String },
    #[error("order preservation violated: {0}")]
    NotOrderPreserving(String),
    #[error("budget insufficient at {addr}: {msg}")]
    Budget { addr: String, msg: String },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("arithmetic overflow while coding {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
