use thiserror::Error;

use crate::algebra::axioms::AxiomViolation;
use crate::constructors::clan::ClanViolation;

pub type Result<T, E = EmvError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmvError {
    #[error("element {0} does not belong to {1}")]
    DomainMismatch(String, String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{0} is not idempotent")]
    NotIdempotent(String),

    #[error("x^0 requires a greatest element, but {0} has none")]
    NoTop(String),

    #[error("invalid constructor argument: {0}")]
    InvalidConstructor(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("carrier size {size} exceeds the configured bound {bound}")]
    SizeBound { size: usize, bound: usize },

    #[error("operation not supported for {family}: {reason}")]
    Capability { family: String, reason: String },

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("not a filter: {0}")]
    NotAFilter(String),

    #[error("not a prime ideal: {0}")]
    NotPrime(String),

    #[error("not a maximal ideal: {0}")]
    NotMaximal(String),

    #[error("the trivial algebra {{0}} has no maximal ideal")]
    NoMaximalIdeal,

    #[error("{0} has a greatest element; it is already an MV-algebra")]
    AlreadyMv(String),

    #[error("unsupported algebra family: {reason}{}", deficiency.as_ref().map(|w| format!(" (idempotent deficiency: no idempotent of the ideal lies above {w})")).unwrap_or_default())]
    UnsupportedFamily {
        reason: String,
        deficiency: Option<String>,
    },

    #[error("algebra is not semisimple; radical contains {0}")]
    NotSemisimple(String),

    #[error("syntax error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("axiom violation: {0}")]
    Axioms(AxiomViolation),

    #[error("clan condition violated: {0}")]
    Clan(ClanViolation),
}
