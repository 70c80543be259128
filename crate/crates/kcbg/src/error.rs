use thiserror::Error;

/// Unified error type for the whole crate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("no solution: gcd({alpha}, {beta}) != 1")]
    NoSolution { alpha: i64, beta: i64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("no biregular solution for n={n} m={m}: m(n-m+1)/n is not an integer")]
    NotBiregular { n: i64, m: i64 },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("step {s} does not divide x={x}")]
    InvalidStep { s: i64, x: i64 },

    #[error("construction not applicable: {0}")]
    Inapplicable(String),

    #[error("a = m(n-m+1)/n is integral for n={n} m={m}; the biregular construction applies")]
    IsBiregularCase { n: i64, m: i64 },

    #[error("bad graph shape: {0}")]
    ShapeError(String),

    #[error("budget exceeded: needs {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    #[error("graph is not balanced: n={n} m={m}")]
    Unbalanced { n: usize, m: usize },

    #[error("graph too large for this operation: {0}")]
    TooLarge(String),

    #[error("malformed edge list: {0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}
