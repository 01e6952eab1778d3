use thiserror::Error;

/// Errors surfaced by the library.  Mathematical-domain failures (a theorem
/// hypothesis that does not hold, a formula applied outside its range of
/// validity) are distinguished from plain input validation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("norm of {0} is not a rational power of p for this field")]
    IrrationalNorm(String),

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("cochars lie in different components of pi1 tensor Q: incomparable components")]
    IncomparableComponents,

    #[error("cocharacter {0} is not dominant")]
    NonDominant(String),

    #[error("kottwitz points with mixed kappa cannot be compared")]
    MixedKappa,

    #[error("zero eigenvalue is not allowed")]
    ZeroEigenvalue,

    #[error("element is not regular for this configuration: {0}")]
    NotRegular(String),

    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("unsupported torus kind: {0}")]
    UnsupportedTorus(String),

    #[error("incompatible (g, g') pair: {0}")]
    IncompatiblePair(String),

    #[error("formula not established for this stratum configuration: {0}")]
    FormulaNotEstablished(String),

    #[error("theorem hypothesis violated: {witness} admits a stable transfer; use the characteristic-class route instead")]
    HypothesisViolated { witness: String },

    #[error("missing characteristic-class component for stratum {0}")]
    MissingComponent(String),

    #[error("non-integral result in {0}: root datum is inconsistent")]
    NonIntegral(String),

    #[error("unsupported group for this operation: {0}")]
    UnsupportedGroup(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
