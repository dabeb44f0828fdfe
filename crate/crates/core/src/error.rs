//! Error type shared by the resolver, the calculators, and the oracle.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation that needs a nonzero polynomial received zero.
    ZeroPolynomial,
    /// The germ does not vanish at the origin, so there is nothing to resolve.
    UnitGerm,
    /// A univariate residual needed factoring beyond the configured degree cap.
    FactorDegreeExceeded { degree: u32, cap: u32 },
    /// The blow-up worklist exceeded the configured safety cap.
    BlowupLimitExceeded { cap: u32 },
    /// A point that must be blown up has coordinates that are not rational.
    /// Carries a display of the offending irreducible residual factor.
    NonRationalCenter { residual: String },
    /// Component id not present in the resolution data.
    UnknownComponent { id: String },
    /// The operation applies to exceptional components only.
    NotExceptional { id: String },
    /// Resolution data with no components.
    EmptyComponents,
    /// The exponent must lie in the half-open unit interval `(0, 1]`.
    AlphaOutOfRange { alpha: String },
    /// The oracle only works below 1, where colengths are finite.
    AlphaNotBelowOne { alpha: String },
    /// The oracle needs the chart maps the resolver records.
    MissingCharts { id: String },
    /// The oracle refuses multiplicity structure it cannot handle exactly.
    NonReducedInput,
    /// The colength did not stabilize below the degree cap.
    NotStabilized { cutoff: u32 },
    /// Structurally malformed resolution data (not an identity violation).
    MalformedData { detail: String },
    /// Integer bookkeeping left the supported range.
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "the zero polynomial is not a valid input here"),
            Error::UnitGerm => write!(f, "the germ does not vanish at the origin"),
            Error::FactorDegreeExceeded { degree, cap } => write!(
                f,
                "factorization too large: residual of degree {degree} exceeds the cap {cap}"
            ),
            Error::BlowupLimitExceeded { cap } => {
                write!(f, "blow-up limit exceeded: more than {cap} point blow-ups")
            }
            Error::NonRationalCenter { residual } => write!(
                f,
                "non-rational blow-up center: irreducible residual factor {residual}"
            ),
            Error::UnknownComponent { id } => write!(f, "unknown component id `{id}`"),
            Error::NotExceptional { id } => {
                write!(f, "component `{id}` is not exceptional")
            }
            Error::EmptyComponents => write!(f, "resolution data has no components"),
            Error::AlphaOutOfRange { alpha } => {
                write!(f, "exponent {alpha} is outside (0, 1]")
            }
            Error::AlphaNotBelowOne { alpha } => write!(
                f,
                "exponent {alpha} is not below 1; the colength is infinite there"
            ),
            Error::MissingCharts { id } => write!(
                f,
                "component `{id}` has no chart map; only resolver-produced data supports the oracle"
            ),
            Error::NonReducedInput => write!(
                f,
                "the oracle requires a reduced germ (every branch multiplicity 1)"
            ),
            Error::NotStabilized { cutoff } => write!(
                f,
                "colength did not stabilize below degree cutoff {cutoff}"
            ),
            Error::MalformedData { detail } => write!(f, "malformed resolution data: {detail}"),
            Error::Overflow => write!(f, "integer overflow in multiplicity bookkeeping"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
