//! Integral special unitary groups, reduction modulo primes, the finite
//! image ω_0(vol3) with its kernel Π, and commensurability checks.

mod image;
mod reduce;
mod su;

pub use image::{enumerate_image, schreier_kernel_generators, FiniteImage, FiniteImageExport, DEFAULT_CAP};
pub use reduce::{diagram_commutes, kernel_membership, reduce_rep_mod_p, DiagramCheck, KernelChecker};
pub use su::{
    canonical_j_t, commensurability_class, compare_forms, isotropic_witness, omega_at_pell, su_membership,
    witness_form, Commensurability, FormClass, IsotropicWitness, SUContext,
};

use thiserror::Error;

use crate::funcfield::FuncFieldError;
use crate::linalg::LinalgError;
use crate::numbers::NumberError;
use crate::pell::PellError;
use crate::vol3::Vol3Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("entry ({0}, {1}) is not integral")]
    NonIntegralEntry(usize, usize),
    #[error("p = 2 is excluded")]
    EvenPrime,
    #[error("{p} does not divide t = {t}")]
    PrimeDoesNotDivideT { p: u64, t: String },
    #[error("image has more than {0} elements")]
    CapExceeded(usize),
    #[error("the diagram does not commute at (d, n, p) = ({d}, {n}, {p})")]
    DiagramFails { d: i64, n: u32, p: u64 },
    #[error("dimension {0} is too small")]
    DimensionTooSmall(usize),
    #[error("form is singular")]
    SingularForm,
    #[error("matrix size {found} does not match the form size {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Number(#[from] NumberError),
    #[error(transparent)]
    Pell(#[from] PellError),
    #[error(transparent)]
    Vol3(#[from] Vol3Error),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    FuncField(#[from] FuncFieldError),
}
