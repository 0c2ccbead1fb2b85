use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("class {class:?} has pattern {pattern:?} with no part of multiplicity 1")]
    BadPattern { class: Vec<u32>, pattern: Vec<usize> },

    #[error("transition graph is not eulerian: {0}")]
    NotEulerian(String),

    #[error("block shift {shift} is not coprime to n = {n}")]
    NotCoprimeShift { shift: u32, n: u32 },

    #[error("not a Ucycle: {0}")]
    NotAUcycle(String),

    #[error("no cycle can exist for n = {n}, t = {t}: n does not divide the window count")]
    Infeasible { n: u32, t: u32 },

    #[error("{positions} positions exceed the search budget of {budget}")]
    BudgetExceeded { positions: u64, budget: u64 },

    #[error("binomial coefficient C({0}, {1}) overflows")]
    Overflow(u64, u64),

    #[error("constructed sequence failed verification: {0}")]
    Verification(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
