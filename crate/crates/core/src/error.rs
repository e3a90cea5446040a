use alloc::string::String;

use num_bigint::BigInt;

/// Everything that can go wrong inside the algebra engine.
///
/// The variants fall into three groups that callers usually treat
/// differently: caller mistakes (`ContextMismatch`, `MissingAssignment`,
/// `ArityMismatch`, `UnboundVariable`), refusals (`ResourceCap`,
/// `DecompositionIncomplete`, `CapExceeded`, `Inconclusive`) and
/// `InvariantViolation`, which always indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomial context mismatch: {0}")]
    ContextMismatch(String),
    #[error("coefficient {coefficient} is not divisible by {divisor}")]
    NonDivisible { coefficient: BigInt, divisor: BigInt },
    #[error("division by zero")]
    DivisionByZero,
    #[error("no substitution given for variable index {0}")]
    MissingAssignment(usize),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("DECOMPOSITION_INCOMPLETE: {0}")]
    DecompositionIncomplete(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("element cap of {0} exceeded")]
    CapExceeded(usize),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for the "refused, not wrong" family: the computation was
    /// abandoned on purpose and no answer was produced.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::ResourceCap(_) | Error::DecompositionIncomplete(_) | Error::CapExceeded(_) | Error::Inconclusive(_)
        )
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
