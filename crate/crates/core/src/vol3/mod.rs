//! The vol3 group, its orbifold supergroup generated by `u` (order 4) and
//! `c` (order 2), the appendix representations, and the pipelines built on
//! them.

mod constants;
mod pipelines;
mod reps;
mod words;

pub use constants::{
    appendix, parse_constants, sha256_hex, AppendixConstants, APPENDIX_SHA256, APPENDIX_TEXT, APPENDIX_VERSION,
};
pub use pipelines::{
    build_left_regular, compute_invariant_form_j, paper_j_determinant, rho_invariant_forms, search_spanning_words,
    verify_double_conjugacy, ConjugacyResult, InvariantFormResult, LeftRegular, RhoFormResult, SpanningSet,
    REFERENCE_T, DEFAULT_MAX_WORD_LEN,
};
pub use reps::{
    evaluate_word, m_form, omega_gaussian, omega_generators, orbifold_relations, rho_generators, verify_presentation,
    vol3_generator_words, PresentationReport, RelationCheck, RepGenerators,
};
pub use words::{
    expand_to_orbifold, orbifold_a, orbifold_b, orbifold_words_by_length, vol3_relators, GroupWord, Letter,
};

use thiserror::Error;

use crate::funcfield::FuncFieldError;
use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Vol3Error {
    #[error("no image for generator {0}")]
    MissingGenerator(char),
    #[error("malformed word {0:?}")]
    BadWord(String),
    #[error("invalid representation: {0}")]
    BadRepresentation(String),
    #[error("invariant-form solution space has dimension {dimension}, expected {expected}")]
    SolverFailed { dimension: usize, expected: usize },
    #[error("no invertible conjugator found")]
    NoConjugatorFound,
    #[error("word search up to length {max_len} reached only rank {rank}")]
    SearchExhausted { max_len: usize, rank: usize },
    #[error("word images do not form a basis")]
    BasisDegenerate,
    #[error("constants checksum mismatch: expected {expected}, found {found}")]
    ChecksumMismatch { expected: String, found: String },
    #[error("constants file line {line}: {msg}")]
    ConstantsFormat { line: usize, msg: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    FuncField(#[from] FuncFieldError),
}
