use std::fmt;

/// Errors shared across the library.
///
/// Every variant has a stable machine-readable name (see [`Error::name`])
/// so that callers such as the CLI can report failures without string
/// matching on `Display` output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// Modulus outside `[0,1]` (or outside the open interval where required).
    InvalidModulus,
    /// A quarter period is infinite (k = 0 or k = 1 where both must be finite).
    DivergentPeriod,
    /// Complex argument too close to a pole of the Jacobi functions.
    PoleProximity,
    /// Scalar argument outside its documented domain.
    OutOfRange,
    /// A rational-map denominator vanished; the orbit hit the exceptional locus.
    VanishingDenominator,
    /// Inputs violate the admissible regime (sign pattern of delta, or
    /// conserved values outside F1 in (0,1), F3 > 1).
    RegimeViolation,
    /// F2 within tolerance of 1; the case (a)/(b) dichotomy is undefined there.
    BoundaryCase,
    /// Phase recovery could not decide between two chart candidates.
    AmbiguousPhase,
    /// The pencil parameter is infinite (case A with nu_i = 0).
    LambdaInfinite,
    /// The pencil parameter lies outside the case-valid range.
    LambdaOutOfRange,
    /// The anchor point does not lie on the quadric.
    PointOffQuadric,
    /// The quadric carries no real rulings through the point (ABCD < 0).
    ComplexRulings,
    /// The ruling is tangent to (or contained in) the cylinder; no second
    /// intersection exists.
    TangentLine,
    /// nu_i hit {0, +-2K}; the involution degenerates (see `degenerate_map`).
    DegenerateNu,
    /// A square-root radicand of the half-step map is not positive.
    NegativeRadicand,
}

impl Error {
    /// Stable machine-readable variant name.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidModulus => "InvalidModulus",
            Error::DivergentPeriod => "DivergentPeriod",
            Error::PoleProximity => "PoleProximity",
            Error::OutOfRange => "OutOfRange",
            Error::VanishingDenominator => "VanishingDenominator",
            Error::RegimeViolation => "RegimeViolation",
            Error::BoundaryCase => "BoundaryCase",
            Error::AmbiguousPhase => "AmbiguousPhase",
            Error::LambdaInfinite => "LambdaInfinite",
            Error::LambdaOutOfRange => "LambdaOutOfRange",
            Error::PointOffQuadric => "PointOffQuadric",
            Error::ComplexRulings => "ComplexRulings",
            Error::TangentLine => "TangentLine",
            Error::DegenerateNu => "DegenerateNu",
            Error::NegativeRadicand => "NegativeRadicand",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Error::InvalidModulus => "modulus outside its valid interval",
            Error::DivergentPeriod => "quarter period diverges for this modulus",
            Error::PoleProximity => "argument too close to a pole lattice point",
            Error::OutOfRange => "argument outside the documented domain",
            Error::VanishingDenominator => "rational-map denominator vanished",
            Error::RegimeViolation => "inputs violate the admissible sign regime",
            Error::BoundaryCase => "F2 lies on the case boundary F2 = 1",
            Error::AmbiguousPhase => "phase recovery is ambiguous at this state",
            Error::LambdaInfinite => "pencil parameter is infinite",
            Error::LambdaOutOfRange => "pencil parameter outside the case-valid range",
            Error::PointOffQuadric => "point does not lie on the quadric",
            Error::ComplexRulings => "no real rulings through this point",
            Error::TangentLine => "ruling tangent to the cylinder; no second intersection",
            Error::DegenerateNu => "nu_i degenerate; use the closed-form degenerate map",
            Error::NegativeRadicand => "half-step radicand not positive",
        };
        write!(f, "{msg}")
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
