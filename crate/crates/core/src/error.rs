use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q-integer [0]_q is not defined")]
    ZeroQInteger,

    #[error("enumeration of {count} permutations exceeds the bound of {bound}")]
    EnumerationBound { count: String, bound: u64 },

    #[error("resource budget exceeded: {needed} compositions, budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("category {category} out of range 1..={k}")]
    CategoryOutOfRange { category: usize, k: usize },

    #[error("composition must have at least one part")]
    EmptyComposition,

    #[error("symbol {symbol} out of range 1..={k}")]
    SymbolOutOfRange { symbol: u32, k: usize },

    #[error("degenerate distribution: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for refusals caused by a size guard rather than bad input.
    pub fn is_resource_refusal(&self) -> bool {
        matches!(
            self,
            Error::EnumerationBound { .. } | Error::BudgetExceeded { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
