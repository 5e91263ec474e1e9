use thiserror::Error;

use crate::frontend::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("child {child} is not a valid node (next fresh id is {next})")]
    InvalidChild { child: u32, next: u32 },
    #[error("ordering violated: child variable x{child} is not below parent variable x{parent}")]
    OrderViolation { parent: u32, child: u32 },
    #[error("node {0} is missing from the graph")]
    DanglingRef(u32),
    #[error("recursion ran out of fuel")]
    OutOfFuel,
    #[error("handle belongs to a different manager")]
    ForeignHandle,
    #[error("variable x{var} is outside the range x1..=x{limit}")]
    VarOutOfRange { var: u32, limit: u32 },
    #[error("{vars} variables exceed the limit of {limit}")]
    TooManyVars { vars: u32, limit: u32 },
    #[error("truth tables have different arities ({left} vs {right})")]
    ArityMismatch { left: u32, right: u32 },
    #[error("node graph contains a cycle")]
    Cycle,
    #[error("store text, line {line}: {message}")]
    StoreFormat { line: usize, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}
