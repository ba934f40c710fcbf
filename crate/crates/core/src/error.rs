use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid quadratic field parameter d = {0}: must be squarefree and not 0 or 1")]
    InvalidDiscriminant(i64),
    #[error("mixed quadratic extensions: sqrt({0}) and sqrt({1})")]
    MixedExtensions(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("inner series must vanish at origin")]
    InnerSeriesNonzeroConstant,
    #[error("compositional inverse requires f(0) = 0 and f'(0) != 0")]
    NotInvertibleSeries,
    #[error("series coefficients are not integral")]
    NotIntegral,
    #[error("insufficient precision: truncation order {order} < derivative order {needed}")]
    InsufficientPrecision { order: usize, needed: usize },
    #[error("evaluation outside certified disc")]
    OutsideDisc,
    #[error("variable {0} has no assigned value")]
    UnboundVariable(String),
    #[error("membership undecided at this scale; use probabilistic nonmembership")]
    ResourceCap,
    #[error("frame not full rank")]
    FrameNotFullRank,
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("no relation derivable from scalar endomorphism")]
    ScalarEndomorphism,
    #[error("endomorphism spectra force coupling; supply F manually")]
    SpectraCoupling,
    #[error("Case 3 construction requires even g > 2")]
    Case3Genus,
    #[error("degenerate period matrix")]
    DegeneratePeriodMatrix,
    #[error("relation factor lacks a non-triviality certificate")]
    MissingCertificate,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
