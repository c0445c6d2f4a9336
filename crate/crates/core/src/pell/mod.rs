//! Pell equations `t² − d·y² = 1`, the Lucas sequence `S_n = 2t_n`, its
//! primitive prime divisors, and prime selection.

mod factor;
mod primes;
mod solve;

pub use factor::{factorize, is_probable_prime};
pub use primes::{
    paper_table, primitive_prime_divisors, select_prime_sequence, PrimeRule, PrimeSelection, PrimitivePrimeRecord,
    SelectedPrime, SkipReason, SkippedIndex,
};
pub use solve::{
    lucas_pair_check, lucas_terms, pell_fundamental, pell_sequence, pell_solution, pell_unit, LucasPairCheck,
    PellSolution,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PellError {
    #[error("d = {0} must be a square-free integer >= 2")]
    InvalidD(i64),
    #[error("index must be at least 1")]
    InvalidIndex,
    #[error("binary powering and the recurrence disagree at n = {0}")]
    CrossCheckFailed(u32),
    #[error("(u, 1/u) is not a Lucas pair for d = {0}")]
    NotALucasPair(i64),
    #[error("unknown prime rule {0:?}")]
    UnknownRule(String),
}
