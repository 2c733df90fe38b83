use thiserror::Error;

use crate::toric::Ray;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("subgroup order {sub} does not divide {modulus}")]
    NotDivisor { sub: u64, modulus: u64 },

    #[error("{value} is not a unit modulo {modulus}")]
    NotUnit { value: i64, modulus: u64 },

    #[error("invalid group order {0}")]
    InvalidOrder(u64),

    #[error("embedding ({p},{q}) of order {n} is not faithful: gcd(p, q, N) != 1")]
    NonFaithful { n: u64, p: u64, q: u64 },

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("index {index} out of range for a fan with {len} rays")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("ray {ray} is not contractible: neighbours {prev} + {next} != {ray}")]
    NotContractible { prev: Ray, ray: Ray, next: Ray },

    #[error("ray {0} is not in the fan")]
    RayNotFound(Ray),

    #[error("move {step} failed: {source}")]
    Replay {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("maps are not composable: codomain {found} differs from domain {expected}")]
    FanMismatch { expected: String, found: String },

    #[error("maps use different embeddings: {0} vs {1}")]
    EmbeddingMismatch(String, String),

    #[error("symbol belongs to group order {found}, expected {expected}")]
    ForeignSymbol { expected: u64, found: u64 },

    #[error("symbol {0} is not a generator of the presentation")]
    MissingGenerator(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("precondition failed: {0}")]
    Precondition(String),
}
