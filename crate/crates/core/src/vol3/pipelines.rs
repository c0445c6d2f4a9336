//! Invariant forms, the conjugacy ω_t ≅ ρ_t ⊕ ρ_t, and the left-regular
//! construction η_t.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::reps::{evaluate_word, omega_generators, rho_generators, m_form, verify_presentation, PresentationReport, RepGenerators};
use super::words::{orbifold_words_by_length, GroupWord};
use super::Vol3Error;
use crate::funcfield::{specialize_biquad, BiquadElem, Poly, RatFunc, TowerElem};
use crate::linalg::{det_field, rank, solve, solve_conjugator, solve_invariant_forms, ExactMatrix, HermitianForm, IncrementalBasis};
use crate::ring::{Field, Ring};

/// Specialisation used for rank decisions in the word search.
pub const REFERENCE_T: i64 = 2;
pub const DEFAULT_MAX_WORD_LEN: usize = 8;

#[derive(Clone, Debug)]
pub struct InvariantFormResult {
    pub dimension: usize,
    pub free_entries: Vec<(usize, usize)>,
    pub j: HermitianForm<TowerElem>,
    /// Every entry of `J_t` lies in Q(t, s).
    pub entries_in_qts: bool,
    pub det: RatFunc,
    pub det_sqrt: Option<RatFunc>,
    /// `det(J_t) / (16(3−4t²)⁴/(1−4t²)²)`.
    pub ratio_to_paper_det: RatFunc,
    pub ratio_is_square: bool,
}

/// `16(3−4t²)⁴ / (1−4t²)²`.
pub fn paper_j_determinant() -> RatFunc {
    let a = Poly::from_i64s(&[3, 0, -4]);
    let b = Poly::from_i64s(&[1, 0, -4]);
    RatFunc::from_parts(BigRational::from_integer(BigInt::from(16)), a.pow(4), b.pow(2))
}

/// The ω_t-invariant sesquilinear forms and the canonical Hermitian one.
pub fn compute_invariant_form_j() -> Result<InvariantFormResult, Vol3Error> {
    let om = omega_generators();
    let gens = [om.image('u')?.clone(), om.image('c')?.clone()];
    let sol = solve_invariant_forms(&gens, &TowerElem::zero())?;
    if sol.dimension != 4 {
        return Err(Vol3Error::SolverFailed {
            dimension: sol.dimension,
            expected: 4,
        });
    }
    let j = sol.forms[0].clone();
    let d = det_field(j.matrix())?;
    if !d.in_base() || d.c00().is_zero() {
        return Err(Vol3Error::SolverFailed {
            dimension: sol.dimension,
            expected: 4,
        });
    }
    let det = d.c00().clone();
    let ratio = det.div(&paper_j_determinant()).expect("nonzero");
    Ok(InvariantFormResult {
        dimension: sol.dimension,
        free_entries: sol.free_entries,
        entries_in_qts: j.matrix().entries().iter().all(TowerElem::in_qts),
        det_sqrt: det.sqrt(),
        ratio_is_square: ratio.sqrt().is_some(),
        ratio_to_paper_det: ratio,
        det,
        j,
    })
}

#[derive(Clone, Debug)]
pub struct RhoFormResult {
    pub dimension: usize,
    /// `M_t = λ·J` for the single basis solution `J`.
    pub m_in_span: bool,
}

/// Solves for the ρ_t-invariant forms and checks M_t is among them.
pub fn rho_invariant_forms() -> Result<RhoFormResult, Vol3Error> {
    let rho = rho_generators();
    let gens = [rho.image('u')?.clone(), rho.image('c')?.clone()];
    let sol = solve_invariant_forms(&gens, &TowerElem::zero())?;
    let m = m_form();
    let m_in_span = match sol.raw_basis.as_slice() {
        [j] => {
            let (k, x) = j
                .entries()
                .iter()
                .enumerate()
                .find(|(_, x)| !x.is_zero_elem())
                .expect("basis vectors are nonzero");
            let mk = &m.matrix().entries()[k];
            let lambda = mk.div(x).expect("nonzero pivot");
            j.scale(&lambda) == *m.matrix()
        }
        _ => false,
    };
    Ok(RhoFormResult {
        dimension: sol.dimension,
        m_in_span,
    })
}

#[derive(Clone, Debug)]
pub struct ConjugacyResult {
    /// `P·ω_t(g) = (ρ_t ⊕ ρ_t)(g)·P` for g = u, c.
    pub p: ExactMatrix<TowerElem>,
    pub det_p: TowerElem,
    pub seed: u64,
}

/// Finds and re-verifies an invertible `P` conjugating ω_t to ρ_t ⊕ ρ_t.
pub fn verify_double_conjugacy(seed: u64) -> Result<ConjugacyResult, Vol3Error> {
    let om = omega_generators();
    let rho = rho_generators();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for g in ['u', 'c'] {
        let w = om.image(g)?.clone();
        let r = rho.image(g)?;
        let rr = ExactMatrix::block_diag(&[r, r]);
        if w.trace() != r.trace().add(&r.trace()) {
            return Err(Vol3Error::NoConjugatorFound);
        }
        a.push(w);
        b.push(rr);
    }
    let p = solve_conjugator(&a, &b, &TowerElem::zero(), seed, 64)?.ok_or(Vol3Error::NoConjugatorFound)?;
    let det_p = det_field(&p)?;
    let ok = !det_p.is_zero_elem() && a.iter().zip(&b).all(|(x, y)| p.mul(x) == y.mul(&p));
    if !ok {
        return Err(Vol3Error::NoConjugatorFound);
    }
    Ok(ConjugacyResult { p, det_p, seed })
}

#[derive(Clone, Debug)]
pub struct SpanningSet {
    pub words: Vec<GroupWord>,
    /// Determinant of the 16×16 matrix of vectorised images at `t = 2`.
    pub certificate_det: BiquadElem,
    /// Number of words examined.
    pub examined: usize,
}

fn rho_at_reference() -> Result<RepGenerators<BiquadElem>, Vol3Error> {
    let t0 = BigRational::from_integer(BigInt::from(REFERENCE_T));
    Ok(rho_generators().try_map("Q(√3, √6)", |x| specialize_biquad(x, &t0))?)
}

/// Greedy breadth-first search for 16 words whose ρ-images span M₄.
pub fn search_spanning_words(max_len: usize) -> Result<SpanningSet, Vol3Error> {
    let rep = rho_at_reference()?;
    let mut basis = IncrementalBasis::new();
    let mut words = Vec::new();
    let mut columns = Vec::new();
    let mut examined = 0;
    for w in orbifold_words_by_length(max_len) {
        examined += 1;
        let v = evaluate_word(&w, &rep)?.vectorize();
        if basis.insert(&v) {
            words.push(w);
            columns.push(v);
            if words.len() == 16 {
                break;
            }
        }
    }
    if words.len() < 16 {
        return Err(Vol3Error::SearchExhausted {
            max_len,
            rank: words.len(),
        });
    }
    let certificate = ExactMatrix::from_fn(16, 16, |i, j| columns[j][i].clone());
    let certificate_det = det_field(&certificate)?;
    Ok(SpanningSet {
        words,
        certificate_det,
        examined,
    })
}

#[derive(Clone, Debug)]
pub struct LeftRegular {
    pub eta: RepGenerators<TowerElem>,
    pub presentation: PresentationReport,
    /// Every entry of η_t(u), η_t(c) lies in Z[t, s].
    pub integral: bool,
    pub trace_u: TowerElem,
    pub trace_c: TowerElem,
}

fn in_z_t_s(x: &TowerElem) -> bool {
    x.in_qts()
        && [x.c00(), x.c10()]
            .iter()
            .all(|c| c.is_polynomial() && c.content().is_integer())
}

/// η_t(g): the matrix of left multiplication by ρ_t(g) in the basis
/// `{ρ_t(g_j)}` of M₄.
pub fn build_left_regular(words: &[GroupWord]) -> Result<LeftRegular, Vol3Error> {
    if words.len() != 16 {
        return Err(Vol3Error::BasisDegenerate);
    }
    let reference = rho_at_reference()?;
    let ref_cols = words
        .iter()
        .map(|w| evaluate_word(w, &reference).map(|m| m.vectorize()))
        .collect::<Result<Vec<_>, _>>()?;
    if rank(&ExactMatrix::from_fn(16, 16, |i, j| ref_cols[j][i].clone())) != 16 {
        return Err(Vol3Error::BasisDegenerate);
    }

    let rho = rho_generators();
    let images = words
        .iter()
        .map(|w| evaluate_word(w, &rho))
        .collect::<Result<Vec<_>, _>>()?;
    let v = ExactMatrix::from_fn(16, 16, |i, j| images[j].entries()[i].clone());
    let mut multipliers = Vec::new();
    for g in ['u', 'c'] {
        multipliers.push(rho.image(g)?.clone());
        multipliers.push(rho.inverse_image(g)?.clone());
    }
    let rhs_cols: Vec<Vec<TowerElem>> = multipliers
        .iter()
        .flat_map(|m| images.iter().map(move |x| m.mul(x).vectorize()))
        .collect();
    let rhs = ExactMatrix::from_fn(16, rhs_cols.len(), |i, j| rhs_cols[j][i].clone());
    let x = solve(&v, &rhs)?.ok_or(Vol3Error::BasisDegenerate)?;
    let block = |k: usize| ExactMatrix::from_fn(16, 16, |i, j| x.get(i, 16 * k + j).clone());
    let eta = RepGenerators::new(
        "tower",
        vec![('u', block(0), block(1)), ('c', block(2), block(3))],
    )?;
    let presentation = verify_presentation(&eta)?;
    let integral = ['u', 'c']
        .iter()
        .all(|&g| eta.image(g).is_ok_and(|m| m.entries().iter().all(in_z_t_s)));
    Ok(LeftRegular {
        trace_u: eta.image('u')?.trace(),
        trace_c: eta.image('c')?.trace(),
        presentation,
        integral,
        eta,
    })
}
