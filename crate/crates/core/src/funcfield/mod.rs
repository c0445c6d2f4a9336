//! Q(t), the radical tower Q(t)[s, w] with `s² = t² − 1` and `w² = t² + 2`,
//! and the specialisation maps out of it.

mod biquad;
mod parse;
mod poly;
mod ratfunc;
mod specialize;
pub(crate) mod tower;

pub use biquad::BiquadElem;
pub use parse::parse_tower_expr;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use specialize::{biquad_context, specialize_biquad, specialize_gaussian_at_zero, Specialization};
pub use tower::{s_squared, w_squared, TowerElem};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuncFieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the specialisation point")]
    PoleAtSpecialization,
    #[error("element involves w but no value for w was supplied")]
    MissingRadicalValue,
    #[error("invalid specialisation: {0}")]
    InvalidSpecialization(String),
    #[error("d = {0} must be a square-free integer >= 2")]
    InvalidRadicand(i64),
    #[error("value {0} is not integral")]
    NotIntegral(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Square root in Q(t) with positive leading coefficient, when one exists.
pub fn ratfunc_sqrt(q: &RatFunc) -> Option<RatFunc> {
    q.sqrt()
}

/// Inverse in the tower.
pub fn tower_inverse(x: &TowerElem) -> Result<TowerElem, FuncFieldError> {
    x.try_inverse()
}

pub fn tau_s(x: &TowerElem) -> TowerElem {
    x.tau_s()
}

/// Specialises into Q(√d).
pub fn specialize(
    x: &TowerElem,
    spec: &Specialization,
) -> Result<crate::numbers::QuadElem, FuncFieldError> {
    spec.apply(x)
}
