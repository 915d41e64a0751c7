use thiserror::Error;

/// Errors raised by the arithmetic layer, the three spaces and the census.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("defining polynomial is not squarefree")]
    NotSquarefree,
    #[error("automorphism image {0} is not a root of the defining polynomial")]
    NotARoot(usize),
    #[error("automorphism {0} is not bijective")]
    NotAnAutomorphism(usize),
    #[error("automorphism set does not close to a finite group")]
    NotClosedUnderComposition,
    #[error("algebras are defined over different base fields")]
    BaseMismatch,
    #[error("unsupported binary form degree {0}")]
    UnsupportedDegree(usize),
    #[error("unsupported coefficient field: {0}")]
    UnsupportedField(String),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("D is a square")]
    DIsSquare,
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("binary form has zero discriminant")]
    DegenerateForm,
    #[error("polynomial has zero discriminant")]
    DegeneratePolynomial,
    #[error("towers do not match")]
    TowerMismatch,
    #[error("group element is not invertible")]
    SingularGroupElement,
    #[error("element is not semistable")]
    NotSemistable,
    #[error("norm condition cannot be satisfied: {0}")]
    NormConditionUnsatisfiable(String),
    #[error("value is not rational over the base: {0}")]
    NotRational(String),
    #[error("element is not a unit")]
    NonUnit,
    #[error("characteristic 2 is not supported here")]
    CharTwoUnsupported,
    #[error("fiber data does not match: {0}")]
    FiberDataMismatch(String),
    #[error("root data matches no supported Galois case")]
    UnsupportedGaloisCase,
    #[error("census budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("trial division bound exceeded while factoring {0}")]
    BoundExceeded(String),
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("invalid dimensions: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    /// True for failures of an internal consistency check (as opposed to bad input).
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::NotRational(_) | Error::CheckFailed(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
