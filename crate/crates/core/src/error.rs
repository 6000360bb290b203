use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("factorization budget exceeded; unfactored cofactor {cofactor}")]
    BudgetExceeded { cofactor: BigInt },
    #[error("model is singular (discriminant vanishes)")]
    Singular,
    #[error("fibre at t = {0} is singular")]
    SingularFibre(Rational),
    #[error("scaling factor u must be nonzero")]
    ZeroScaling,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("reduction is not multiplicative")]
    NotMultiplicative,
    #[error("unsupported residue field operation: {0}")]
    UnsupportedResidueField(String),
    #[error("unsupported place: {0}")]
    UnsupportedPlace(String),
    #[error("local solvability undecided at p = {prime} for class {class}")]
    LocalUndecided { prime: BigInt, class: String },
    #[error("curve has no rational 2-torsion point")]
    NoTwoTorsion,
    #[error("inconsistent data: {0}")]
    InconsistentData(String),
    #[error("local root number at an additive place is not supported")]
    AdditiveUnsupported,
    #[error("exponent {0} is not prime")]
    CompositeExponent(u64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
