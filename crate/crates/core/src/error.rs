use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0:?} is reducible over the prime field")]
    ReducibleModulus(Vec<u32>),
    #[error("modulus must be monic of degree {expected}, got coefficients {got:?}")]
    DegreeMismatch { expected: u32, got: Vec<u32> },
    #[error("field of order {0} exceeds the table limit")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field context")]
    ContextMismatch,

    #[error("cyclic factor order {0} is smaller than 2")]
    OrderTooSmall(u64),
    #[error("semidirect exponent t = {0} must be at least 2")]
    TTooSmall(u32),
    #[error("element or set belongs to group `{found}`, expected `{expected}`")]
    HandleMismatch { expected: String, found: String },
    #[error("element index {idx} out of range for group of order {order}")]
    IndexOutOfRange { idx: u64, order: u64 },
    #[error("group of order {order} exceeds the exhaustive limit {limit}")]
    TooLarge { order: u64, limit: u64 },

    #[error("eps must be +1 or -1, got {0}")]
    BadEps(i32),
    #[error("form rank m = {0} must be at least 2")]
    MTooSmall(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is singular (Q(v) = 0)")]
    SingularVector,
    #[error("zero vector")]
    ZeroVector,

    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("partition failure: {0}")]
    PartitionFailure(String),

    #[error("{classes} classes is too many for exhaustive fusion (limit {limit})")]
    TooManyClasses { classes: usize, limit: usize },
    #[error("not an association scheme: classes ({i},{j}) give {first} at element {witness_a} but {second} at element {witness_b} of class {k}")]
    NotAScheme { i: usize, j: usize, k: usize, witness_a: u32, witness_b: u32, first: u64, second: u64 },
    #[error("group-ring identity fails at element {element}: lhs {lhs}, rhs {rhs}")]
    IdentityFails { element: u32, lhs: i64, rhs: i64 },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("input is not a Paley-type PDS: {0}")]
    NotPaleyType(String),
    #[error("input is not a skew Hadamard difference set: {0}")]
    NotSkewHadamard(String),
    #[error("fiber over {fiber} is not a union of classes (element {element} splits a class)")]
    FiberNotClassUnion { fiber: u32, element: u32 },
    #[error("partition signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
