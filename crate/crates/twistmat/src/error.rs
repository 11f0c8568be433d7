use thiserror::Error;

/// Errors shared by the ring, group, automorphism and twisted-conjugacy layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring spec is invalid: {0}")]
    InvalidSpec(String),
    #[error("operands live over different ring specs")]
    SpecMismatch,
    #[error("denominator {0} has a factor outside the inverted set")]
    DenominatorNotInvertible(String),
    #[error("element {0} is not a unit")]
    NotAUnit(String),
    #[error("reduction ideal is not coprime to the inverted set: {0}")]
    IdealNotCoprime(String),
    #[error("{0} is not a quadratic residue modulo {1}")]
    NonResidue(i64, u64),
    #[error("operation not supported for this ring spec: {0}")]
    UnsupportedSpec(String),
    #[error("matrix position ({0},{1}) is outside the allowed pattern")]
    IndexOutOfPattern(usize, usize),
    #[error("quotient spec incompatible with the group: {0}")]
    IncompatibleQuotient(String),
    #[error("enumeration size {0} exceeds the configured limit {1}")]
    TooLarge(u128, u128),
    #[error("automorphism atom incompatible with its argument: {0}")]
    IncompatibleAtom(String),
    #[error("quotient kernel is not invariant; violating generator: {0}")]
    KernelNotInvariant(String),
    #[error("no-gaps condition violated: entry at position {0} falls outside the index set")]
    NGViolated(usize),
    #[error("unit {0} is not allowed here")]
    BadUnit(String),
    #[error("the supplied map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("parameter {0} is not fixed by the automorphism")]
    ParameterNotFixed(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
