use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. [`Error::name`] gives the stable
/// identifier used in machine-readable output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not a square")]
    NotASquare,
    #[error("element is not a nonsquare")]
    NotANonsquare,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("modulus {0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("degenerate discriminant: factor {factor} vanishes")]
    DegenerateDiscriminant { factor: &'static str },
    #[error("bad parametrization: frak_a^2 = c")]
    BadParametrization,
    #[error("operation needs the frak_a parametrization")]
    MissingFrakParametrization,
    #[error("universal law unavailable: universality conditions fail")]
    UniversalLawUnavailable,
    #[error("unsupported degenerate configuration: {0}")]
    UnsupportedDegenerateConfiguration(String),
    #[error("curve polynomial is not squarefree of degree 5 or 6")]
    SingularCurve,
    #[error("lift of D1 failed: no rational square root")]
    LiftFailed,
    #[error("Kummer point has no rational preimage")]
    NonRationalPreimage,
    #[error("point is not on the Kummer surface")]
    NotOnSurface,
    #[error("change of basis Q is singular")]
    SingularQ,
    #[error("selected column combination is zero")]
    DegenerateColumn,
    #[error("lift needs a square root outside the ground field")]
    NonRationalLift,
    #[error("M and N patterns are inconsistent")]
    InconsistentM,
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid twist: kappa_{0} is a square")]
    InvalidTwist(usize),
    #[error("invalid Edwards parameter: d must avoid 0 and 1")]
    InvalidEdwardsParam,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotASquare => "NotASquare",
            Error::NotANonsquare => "NotANonsquare",
            Error::FieldMismatch => "FieldMismatch",
            Error::NotAnOddPrime(_) => "NotAnOddPrime",
            Error::DegenerateDiscriminant { .. } => "DegenerateDiscriminant",
            Error::BadParametrization => "BadParametrization",
            Error::MissingFrakParametrization => "MissingFrakParametrization",
            Error::UniversalLawUnavailable => "UniversalLawUnavailable",
            Error::UnsupportedDegenerateConfiguration(_) => "UnsupportedDegenerateConfiguration",
            Error::SingularCurve => "SingularCurve",
            Error::LiftFailed => "LiftFailed",
            Error::NonRationalPreimage => "NonRationalPreimage",
            Error::NotOnSurface => "NotOnSurface",
            Error::SingularQ => "SingularQ",
            Error::DegenerateColumn => "DegenerateColumn",
            Error::NonRationalLift => "NonRationalLift",
            Error::InconsistentM => "InconsistentM",
            Error::InvalidDivisor(_) => "InvalidDivisor",
            Error::InvalidPoint(_) => "InvalidPoint",
            Error::InvalidTwist(_) => "InvalidTwist",
            Error::InvalidEdwardsParam => "InvalidEdwardsParam",
            Error::Parse(_) => "Parse",
        }
    }
}
