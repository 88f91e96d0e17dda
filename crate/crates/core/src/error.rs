use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series must have constant term 1")]
    ConstantTermNotOne,
    #[error("no root system of type {family}{rank}")]
    InvalidRootSystem { family: char, rank: usize },
    #[error("operation requires an indecomposable root system")]
    Decomposable,
    #[error("weight {0:?} is not dominant")]
    NonDominantWeight(Vec<i64>),
    #[error("good-prime tests disagree for {family}{rank} at p = {p}")]
    GoodPrimeDisagreement { family: char, rank: usize, p: u64 },
    #[error("non-integral coefficient: {0}")]
    NonIntegral(String),
    #[error("Witt vector parameters do not match")]
    WittMismatch,
    #[error("p = {0} is not invertible in the coefficient ring")]
    PNotInvertible(u64),
    #[error("truncation degree {have} is below the required {need}")]
    TruncationTooSmall { have: usize, need: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("nilpotence degree {degree} exceeds p = {p}; use the Artin-Hasse exponential")]
    DegreeExceedsPrime { degree: usize, p: u64 },
    #[error("nilpotence degree {degree} exceeds p^n = {bound}")]
    DegreeExceedsWittLength { degree: usize, bound: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("tuple is not a commuting p-nilpotent tuple")]
    NotMember,
    #[error("census of {points} points exceeds the bound {bound}")]
    CensusTooLarge { points: u128, bound: u128 },
    #[error("invalid realization: {0}")]
    InvalidRealization(String),
    #[error("p = {0} is a bad prime for this root system")]
    BadPrime(u64),
    #[error("invalid parabolic: {0}")]
    InvalidParabolic(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not invertible")]
    Singular,
    #[error("not simultaneously triangularizable")]
    NotTriangularizable,
}
