use thiserror::Error;

use crate::dwork::CountMethod;

/// Errors raised by field construction, character sums and point counting.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{e} exceeds the supported size")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("modulus must be monic of degree {expected} over F_p")]
    MalformedModulus { expected: u32 },
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("no element of full multiplicative order found")]
    NoGeneratorFound,
    #[error("element {0} does not generate the unit group")]
    NotAGenerator(u32),
    #[error("element index {index} out of range for field of order {q}")]
    ElementOutOfRange { index: u64, q: u32 },
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("root exponent {r} is not coprime to p = {p}")]
    BadRootExponent { r: u32, p: u32 },
    #[error("character list contains the trivial character")]
    TrivialCharacter,
    #[error("product of the characters is trivial")]
    TrivialProduct,
    #[error("q = {q} is not congruent to 1 modulo {m}")]
    BadModulus { q: u32, m: u32 },
    #[error("top row must have exactly one more entry than the bottom row")]
    ParamShape,
    #[error("multi-sum evaluation limited to n <= 3 (got n = {0})")]
    TooLarge(usize),
    #[error("parameter denominator divisible by p = {0}")]
    BadDenominator(u32),
    #[error("series term has a pole modulo p = {0}")]
    PoleModP(u32),
    #[error("lambda must satisfy lambda^4 != 1")]
    LambdaFourthPowerOne,
    #[error("invalid exponent lists: {0}")]
    InvalidExponents(String),
    #[error("lambda must be nonzero")]
    LambdaZero,
    #[error("lambda^d = 1 is excluded for this decomposition")]
    LambdaDthPowerOne,
    #[error("even degree d = {0} requires conjecture mode")]
    EvenDegreeNeedsConjectureMode(u32),
    #[error("leftover Gauss expressions did not cancel (residual {residual:e}, bound {bound:e})")]
    CancellationFailed { residual: f64, bound: f64 },
    #[error("{method} evaluation {re} + {im}i is not within {guard} of an integer")]
    RoundingGuard {
        method: CountMethod,
        re: f64,
        im: f64,
        guard: f64,
    },
    #[error("lambda must not be 0 or 1 for the Legendre family")]
    BadLambda,
    #[error("degree {0} outside the supported range")]
    OutOfRange(u32),
    #[error("gauss table cache: {0}")]
    Cache(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
