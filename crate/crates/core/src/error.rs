use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("generators act on different numbers of points ({0} vs {1})")]
    DegreeMismatch(usize, usize),

    #[error("group closure exceeds the element cap of {cap}")]
    GroupTooLarge { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("group of order {0} is not cyclic")]
    NotCyclic(usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("groups differ: {0}")]
    GroupMismatch(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    /// A computation refused because a required matrix exceeds the budget.
    #[error("infeasible at degree {degree}: rank {rank} needs about {nonzeros} nonzeros (budget {budget})")]
    Infeasible { degree: usize, rank: usize, nonzeros: u128, budget: u128 },
}
