use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("signature error: {0}")]
    Signature(String),
    #[error("format error on line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("base `{0}` is inconsistent")]
    InconsistentBase(String),
    #[error("integrity constraint is inconsistent")]
    InconsistentConstraint,
    #[error("width mismatch: {0} vs {1} variables")]
    WidthMismatch(usize, usize),
    #[error("cannot compare a scalar aggregate with a vector aggregate")]
    ShapeMismatch,
    #[error("aggregate vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("operator `{0}` takes no integrity constraint")]
    ConstraintNotAllowed(String),
    #[error("too many formulas for maxcons enumeration ({0})")]
    AmbientTooLarge(usize),
    #[error("estimated work {estimate} exceeds ceiling {ceiling}")]
    BoundsExceeded { estimate: u128, ceiling: u128 },
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
