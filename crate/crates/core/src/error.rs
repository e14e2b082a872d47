use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree {m} out of range for p = {p} (field order must be at most 2^20)")]
    DegreeOutOfRange { p: u64, m: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("intersection bound d = {d} must satisfy 1 <= d <= q = {q}")]
    DOutOfRange { d: u32, q: u64 },
    #[error("coordinate count ell must be at least 1")]
    EllOutOfRange,
    #[error("universe q^(ell+1) = {0} exceeds 2^30")]
    UniverseTooLarge(u128),
    #[error("limit {limit} exceeds the family size {max}")]
    LimitTooLarge { limit: u64, max: u128 },
    #[error("trim target {target} exceeds set size {q}")]
    TargetTooLarge { target: usize, q: u64 },

    #[error("expected a set of {expected} vertices, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("vertex {vertex} out of range for v = {v}")]
    VertexOutOfRange { vertex: usize, v: usize },
    #[error("vertex list is not strictly increasing")]
    UnsortedVertices,
    #[error("edge index {edge} out of range (n = {n})")]
    EdgeOutOfRange { edge: usize, n: usize },
    #[error("need at least k = {k} vertices, got {got}")]
    TooFewVertices { k: usize, got: usize },
    #[error("isolation threshold i = {i} must satisfy 1 <= i <= k = {k}")]
    IOutOfRange { i: usize, k: usize },
    #[error("edge arity k = {k} exceeds vertex count v = {v}")]
    ArityTooLarge { k: usize, v: usize },

    #[error("input has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("block size k = {0} must be even and positive")]
    OddK(usize),
    #[error("property and hypergraph disagree on (v, k)")]
    SpecMismatch,
    #[error("invalid property parameters: {0}")]
    InvalidSpec(String),

    #[error("{n} input bits exceed the exhaustive budget of {budget}")]
    TooLarge { n: usize, budget: usize },
    #[error("minimal sensitive blocks larger than {max_block_size} exist; {lower_bound} is only a lower bound")]
    BlockSizeBoundHit {
        lower_bound: usize,
        max_block_size: usize,
    },
    #[error("blocks {first} and {second} overlap")]
    OverlappingBlocks { first: usize, second: usize },
    #[error("block {0} does not change the function value")]
    NonSensitiveBlock(usize),
    #[error("the function already evaluates to 1 on this input")]
    ValueIsOne,
    #[error("time budget exhausted")]
    BudgetExceeded,

    #[error("construction needs at least {min} vertices, got {got}")]
    TooSmall { min: usize, got: usize },
    #[error("placed sets use {needed} distinct points but only {v} vertices exist")]
    SetOutOfRange { needed: usize, v: usize },
    #[error("set {index} has {got} elements, expected {expected}")]
    WrongSetSize {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("sets {first} and {second} share {shared} points (must be < {bound})")]
    IntersectionTooLarge {
        first: usize,
        second: usize,
        shared: usize,
        bound: usize,
    },
    #[error("clique size h = {h} exceeds v = {v}")]
    HTooLarge { h: usize, v: usize },
    #[error("construction unavailable: {0}")]
    ConstructionUnavailable(String),

    #[error("need at least 3 rows to fit, got {0}")]
    TooFewRows(usize),
    #[error("non-positive value {0} cannot be log-transformed")]
    NonPositiveY(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
