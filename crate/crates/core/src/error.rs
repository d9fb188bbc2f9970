use thiserror::Error;

/// Errors shared by field construction, character sums and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    NotPrime(u32),

    #[error("polynomial {0:?} is not a primitive polynomial of degree {1} over F_{2}")]
    NotPrimitive(Vec<u32>, u32, u32),

    #[error("field size p^m = {q} exceeds the table cap {cap}")]
    CapExceeded { q: u128, cap: u128 },

    #[error("cyclotomic operands live over different primes: {0} and {1}")]
    MixedPrimes(u32, u32),

    #[error("exponent parameter l = {l} must satisfy 0 < l < m = {m}")]
    BadExponent { l: u32, m: u32 },

    #[error("leading quadratic coefficient is zero")]
    DegenerateQuadratic,

    #[error("character sum value {0} is outside the expected classified value set")]
    UnclassifiedSumValue(String),

    #[error("sum value {value} with rank {rank} does not give an integral composition: {reason}")]
    NonIntegralComposition {
        value: String,
        rank: u32,
        reason: String,
    },

    #[error("sweep needs {needed} evaluations, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error(
        "codeword multiplicities are not uniformly divisible by {factor} \
         (composition {composition:?} seen {seen} times); the claimed dimension is wrong"
    )]
    DegeneracyMismatch {
        factor: u128,
        composition: Vec<u32>,
        seen: u128,
    },

    #[error("evaluator is not a quadratic form: {0}")]
    NotBilinear(String),
}

pub type Result<T> = std::result::Result<T, Error>;
