use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order exceeds the cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown group specification: {0}")]
    UnknownSpec(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("search budget exceeded: no witness among tuples of size <= {bound}")]
    SearchBudgetExceeded { bound: usize },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("vector of length {n} is shorter than the number of invariant factors {k}")]
    VectorTooShort { n: usize, k: usize },
    #[error("tuple does not generate the group")]
    NotGenerating,
    #[error("tuple lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("state space of {states} tuples exceeds the cap of {cap}")]
    StateCapExceeded { states: u128, cap: u64 },
    #[error("tuple does not normally generate the group")]
    NotNormallyGenerating,
    #[error("n = {n} is below the weight {weight} of the group")]
    WeightTooLarge { n: usize, weight: usize },
    #[error("group has weight {weight}, expected weight one")]
    WeightNotOne { weight: usize },
    #[error("{0}")]
    RangeError(String),
    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: i64, modulus: i64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("alpha is not a unit of the ring")]
    AlphaNotUnit,
    #[error("ring of {size} elements exceeds the cap of {cap}")]
    SizeCapExceeded { size: u128, cap: u64 },
    #[error("element id {id} out of range for a group of order {order}")]
    ElementOutOfRange { id: usize, order: usize },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
