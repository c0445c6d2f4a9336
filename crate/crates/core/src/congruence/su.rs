//! SU(J; O_d, τ) membership and the form invariants used for
//! commensurability.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::CongruenceError;
use crate::funcfield::{Specialization, TowerElem};
use crate::linalg::{det, rank, ExactMatrix, HermitianForm};
use crate::numbers::{is_rational_square, QuadElem};
use crate::pell::pell_solution;
use crate::ring::Ring;
use crate::vol3::{compute_invariant_form_j, omega_generators, RepGenerators};

/// The canonical ω_t-invariant form J_t, computed once.
pub fn canonical_j_t() -> Result<&'static HermitianForm<TowerElem>, CongruenceError> {
    static CELL: OnceLock<Result<HermitianForm<TowerElem>, CongruenceError>> = OnceLock::new();
    CELL.get_or_init(|| Ok(compute_invariant_form_j()?.j))
        .as_ref()
        .map_err(Clone::clone)
}

/// A τ-Hermitian form over Q(√d) of size `m`.
#[derive(Clone, Debug)]
pub struct SUContext {
    pub d: i64,
    pub m: usize,
    pub j: HermitianForm<QuadElem>,
}

impl SUContext {
    pub fn new(d: i64, j: HermitianForm<QuadElem>) -> Result<Self, CongruenceError> {
        if det(j.matrix())?.is_zero_elem() {
            return Err(CongruenceError::SingularForm);
        }
        Ok(SUContext { d, m: j.dim(), j })
    }

    /// J_t specialised at the n-th Pell solution for `d`.
    pub fn at_pell(d: i64, n: u32) -> Result<Self, CongruenceError> {
        let sol = pell_solution(d, n)?;
        let spec = Specialization::pell(d, &sol.t, &sol.y)?;
        let jt = canonical_j_t()?;
        let j = jt.matrix().try_map(|x| spec.apply(x))?;
        SUContext::new(d, HermitianForm::new(j)?)
    }
}

/// `det M = 1`, `M*·J·M = J`, and all entries in O_d.
pub fn su_membership(m: &ExactMatrix<QuadElem>, ctx: &SUContext) -> Result<bool, CongruenceError> {
    if !m.is_square() || m.rows() != ctx.m {
        return Err(CongruenceError::SizeMismatch {
            expected: ctx.m,
            found: m.rows(),
        });
    }
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_integral() {
                return Err(CongruenceError::NonIntegralEntry(i, j));
            }
        }
    }
    Ok(det(m)?.is_one_elem() && ctx.j.is_preserved_by(m))
}

/// ω_{t_n} over Q(√d), with `t = t_n` and `s = y_n√d`.
pub fn omega_at_pell(d: i64, n: u32) -> Result<RepGenerators<QuadElem>, CongruenceError> {
    let sol = pell_solution(d, n)?;
    let spec = Specialization::pell(d, &sol.t, &sol.y)?;
    Ok(omega_generators().try_map(format!("O_{d}"), |x| spec.apply(x))?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormClass {
    pub rank: usize,
    /// The determinant, which is τ-fixed and hence rational.
    pub det: BigRational,
    /// `r` with `r² = det`, when one exists.
    pub square_witness: Option<BigRational>,
}

/// Rank, determinant and the square test on the determinant.
pub fn commensurability_class(j: &HermitianForm<QuadElem>) -> Result<FormClass, CongruenceError> {
    let r = rank(j.matrix());
    let dq = det(j.matrix())?;
    if !dq.is_rational() {
        return Err(crate::linalg::LinalgError::NotHermitian.into());
    }
    let det = dq.a().clone();
    Ok(FormClass {
        rank: r,
        square_witness: is_rational_square(&det),
        det,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Commensurability {
    /// Equal rank and the determinant ratio is a rational square.
    Equivalent,
    /// Equal rank, but the ratio is not a rational square; the norm test
    /// that would decide the case is not implemented.
    Inconclusive,
    DistinctRank,
}

pub fn compare_forms(
    a: &HermitianForm<QuadElem>,
    b: &HermitianForm<QuadElem>,
) -> Result<Commensurability, CongruenceError> {
    let ca = commensurability_class(a)?;
    let cb = commensurability_class(b)?;
    if ca.rank != cb.rank {
        return Ok(Commensurability::DistinctRank);
    }
    if ca.det.is_zero() || cb.det.is_zero() {
        return Ok(Commensurability::Inconclusive);
    }
    Ok(if is_rational_square(&(&ca.det / &cb.det)).is_some() {
        Commensurability::Equivalent
    } else {
        Commensurability::Inconclusive
    })
}

/// `diag(1, −1, −c, 1, …, 1)` of size `m`.
pub fn witness_form(c: &QuadElem, m: usize) -> Result<HermitianForm<QuadElem>, CongruenceError> {
    if m < 3 {
        return Err(CongruenceError::DimensionTooSmall(m));
    }
    let one = c.one_like();
    let mut diag = vec![one.clone(); m];
    diag[1] = one.neg();
    diag[2] = c.neg();
    Ok(HermitianForm::new(ExactMatrix::diagonal(&diag))?)
}

#[derive(Clone, Debug)]
pub struct IsotropicWitness {
    pub x: Vec<QuadElem>,
    pub value: QuadElem,
    pub isotropic: bool,
}

/// `x = (1, 1, 0, …, 0)` and the value `x*·diag(1, −1, −c, 1, …, 1)·x`.
pub fn isotropic_witness(c: &QuadElem, m: usize) -> Result<IsotropicWitness, CongruenceError> {
    let form = witness_form(c, m)?;
    let mut x = vec![c.zero_like(); m];
    x[0] = c.one_like();
    x[1] = c.one_like();
    let value = form.value(&x);
    Ok(IsotropicWitness {
        isotropic: value.is_zero_elem(),
        x,
        value,
    })
}
