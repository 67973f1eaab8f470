use alloc::boxed::Box;
use alloc::string::String;

use crate::quat::CQuat;
use crate::scalar::CRational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("quaternion has zero complex norm and is not invertible")]
    ZeroComplexNorm,
    #[error("evaluation at a pole")]
    PoleEvaluation,
    #[error("unsupported pole structure: {0}")]
    UnsupportedPoleStructure(String),
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("expected a polynomial, found negative exponents")]
    NotPolynomial,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("conjugacy obstruction: {0}")]
    ConjugacyObstruction(&'static str),
    #[error("chi has identically vanishing complex norm; retry with another h")]
    NonInvertibleChi,
    #[error("no invertible chi found within {0} candidates")]
    SearchExhausted(usize),
    #[error("curve has a nonzero scalar part")]
    ScalarPart,
    #[error("curve is not isotropic")]
    NotIsotropic,
    #[error("Weierstrass data degenerate: Φ₁ − ıΦ₂ ≡ 0")]
    DegenerateWE,
    #[error("Weierstrass data not compatible: assembled Φ is not a Laurent polynomial")]
    IncompatibleWE,
    #[error("scale function is not a polynomial")]
    NonPolynomialScale,
    #[error("pole inside the parameter domain")]
    PoleInDomain,
    #[error("degenerate normal: X_u × X_v vanishes")]
    DegenerateNormal,
    #[error("normal field does not match the closed-form cross product")]
    NormalMismatch,
    #[error("grid needs at least 2×2 samples")]
    InvalidGrid,
    #[error("preimage must have real coefficients")]
    NonRealPreimage,
    #[error("nonzero residue at {pole}: {residue}")]
    NonzeroResidue {
        pole: Box<CRational>,
        residue: Box<CQuat>,
    },
    #[error("zero projective parameter")]
    ZeroParameter,
    #[error("quaternion is not null")]
    NotNull,
    #[error("quaternion is not a pure vector")]
    NotVectorial,
    #[error("degenerate tuple for cross ratio")]
    DegenerateTuple,
    #[error("linear system has no admissible solution")]
    NoSolution,
    #[error("solution is not unique up to scale")]
    NonUniqueBeyondScale,
    #[error("fourth corner does not match the projective map")]
    CrossRatioMismatch,
    #[error("corner conditions violated: {0}")]
    ConditionsViolated(&'static str),
    #[error("invalid rectangle: {0}")]
    InvalidRectangle(&'static str),
}
