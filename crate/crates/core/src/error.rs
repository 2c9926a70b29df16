use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    // scalars
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different coefficient fields")]
    FieldMismatch,
    #[error("prime {0} is too large (must be below 2^62)")]
    UnsupportedPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),

    // polynomials
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("coefficient {0} does not exist in this field")]
    CoefficientNotInField(String),
    #[error("target degree {target} is smaller than the polynomial degree {degree}")]
    DegreeTooSmall { target: u32, degree: u32 },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("field characteristic {characteristic} must exceed {required}")]
    CharacteristicTooSmall { characteristic: u64, required: u64 },
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),

    // ruppert
    #[error("nu = {nu} is smaller than deg f = {degree}")]
    NuTooSmall { nu: u32, degree: u32 },
    #[error("internal error: image component of degree {0} does not vanish")]
    DegreeLeakage(i64),
    #[error("inconsistent degree data: {0}")]
    InconsistentDegrees(String),
    #[error("factors {0} and {1} are not coprime")]
    FactorsNotCoprime(usize, usize),

    // newton
    #[error("internal error: superior envelope has an edge of positive slope")]
    EnvelopeAssertionFailed,
    #[error("edge {0} is not a good edge of the polygon")]
    EdgeNotGood(String),
    #[error("Newton polygon of the polynomial is not contained in the chosen polygon")]
    PolygonMismatch,
    #[error("kernel witness {0} violates its Newton-polygon containment")]
    WitnessContainmentFailed(String),

    // spectrum
    #[error("f/g is composite or not reduced: the spectrum is not finite")]
    CompositeOrNonReduced,
    #[error("field has too few elements: need more than {0}")]
    InsufficientSamplePoints(u64),
    #[error("internal error: m-1+omega+theta = {lhs} but kernel dimension is {kernel}")]
    KeyEquationMismatch { lhs: u64, kernel: u64 },
    #[error("degree dropped in every random substitution")]
    DegreeDropPersistent,
    #[error("pencil degree {0} is below 2")]
    DegreeTooLow(u32),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    /// The module that raises this error.
    pub fn module(&self) -> &'static str {
        use Error::*;
        match self {
            DivisionByZero | FieldMismatch | UnsupportedPrime(_) | NotPrime(_) => "exact_arith",
            Syntax { .. }
            | CoefficientNotInField(_)
            | DegreeTooSmall { .. }
            | ZeroPolynomial
            | CharacteristicTooSmall { .. }
            | NotHomogeneous(_) => "polynomials",
            NuTooSmall { .. } | DegreeLeakage(_) | InconsistentDegrees(_) | FactorsNotCoprime(..) => "ruppert",
            EnvelopeAssertionFailed | EdgeNotGood(_) | PolygonMismatch | WitnessContainmentFailed(_) => "newton",
            CompositeOrNonReduced
            | InsufficientSamplePoints(_)
            | KeyEquationMismatch { .. }
            | DegreeDropPersistent
            | DegreeTooLow(_)
            | Unsupported(_) => "spectrum",
        }
    }
}
