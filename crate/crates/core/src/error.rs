use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps [`Error::is_domain`] variants to exit code 3 and everything
/// else to 2 or 4 depending on where it came from.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not in the field Q(sqrt2, sqrt3, sqrt5): {0}")]
    NotInField(String),
    #[error("angle {0}*pi has no exact value in the supported field")]
    UnsupportedAngle(String),
    #[error("rotation is the identity; axis is undefined")]
    DegenerateAxis,
    #[error("excluded case: {0}")]
    ExcludedCase(&'static str),
    #[error("coefficient {0} involves more than one radical")]
    MixedRadicals(String),
    #[error("quadratic coefficient {0} has |a| > 2; roots are not on the unit circle")]
    NotOnUnitCircle(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("group of order {order} does not match any finite rotation group pattern")]
    UnrecognizedGroup { order: usize },
    #[error("group closure is not complete")]
    IncompleteGroup,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("vector is not unit length (norm {0})")]
    NotUnit(f64),
    #[error("logarithm failed: {0}")]
    SchurFailure(String),
    #[error("triplet outside the exact-mode domain: {0}")]
    OutOfDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for exact-arithmetic domain failures (value leaves the field,
    /// angle not representable, and similar).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::DivisionByZero
                | Error::NotInField(_)
                | Error::UnsupportedAngle(_)
                | Error::MixedRadicals(_)
                | Error::NotOnUnitCircle(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
