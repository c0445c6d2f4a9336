use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::elim::{det_field, nullspace_from_rref, rref};
use super::matrix::ExactMatrix;
use super::LinalgError;
use crate::numbers::QuadElem;
use crate::ring::{Field, Involution, InvolutionKind, Ring};

/// A matrix with `J* = J` under a declared involution.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianForm<E> {
    matrix: ExactMatrix<E>,
    involution: InvolutionKind,
}

impl<E: Ring + Involution> HermitianForm<E> {
    pub fn new(matrix: ExactMatrix<E>) -> Result<Self, LinalgError> {
        if !matrix.is_square() {
            return Err(LinalgError::NonSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.conj_transpose() != matrix {
            return Err(LinalgError::NotHermitian);
        }
        Ok(HermitianForm {
            matrix,
            involution: E::KIND,
        })
    }

    pub fn matrix(&self) -> &ExactMatrix<E> {
        &self.matrix
    }

    pub fn involution(&self) -> InvolutionKind {
        self.involution
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// True when `g*·J·g = J`.
    pub fn is_preserved_by(&self, g: &ExactMatrix<E>) -> bool {
        g.conj_transpose().mul(&self.matrix).mul(g) == self.matrix
    }

    /// Evaluates `x*·J·x`.
    pub fn value(&self, x: &[E]) -> E {
        let jx = self.matrix.mul_vec(x);
        let mut acc = x[0].zero_like();
        for (a, b) in x.iter().zip(&jx) {
            acc = acc.add(&a.conj().mul(b));
        }
        acc
    }
}

/// Solution space of `g*·J·g = J` over all generators.
#[derive(Clone, Debug)]
pub struct InvariantForms<E> {
    /// Dimension of the solution space over the coefficient field.
    pub dimension: usize,
    /// Free entries `(k, l)` of `J`, in the canonical (lexicographic) order.
    pub free_entries: Vec<(usize, usize)>,
    /// Nullspace basis; element `i` sets free entry `i` to 1, the others to 0.
    pub raw_basis: Vec<ExactMatrix<E>>,
    /// `J + J*` for each raw basis element.
    pub forms: Vec<HermitianForm<E>>,
}

impl<E: Clone> InvariantForms<E> {
    /// The representative with the first free entry 1 and the rest 0.
    pub fn canonical(&self) -> Option<&HermitianForm<E>> {
        self.forms.first()
    }
}

fn check_square_family<E: Ring>(gens: &[ExactMatrix<E>]) -> Result<usize, LinalgError> {
    let n = gens.first().map_or(0, ExactMatrix::rows);
    for g in gens {
        if !g.is_square() {
            return Err(LinalgError::NonSquare {
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        if g.rows() != n {
            return Err(LinalgError::DimensionMismatch(format!(
                "generators of sizes {n} and {}",
                g.rows()
            )));
        }
    }
    Ok(n)
}

/// Basis of `{J : g*·J·g = J for every g}` with the sesqui-symmetrised
/// representatives `J + J*`.
///
/// The equation for entry `(i, j)` reads
/// `Σ_{k,l} conj(g_ki)·g_lj·J_kl − J_ij = 0`; the unknown `J_kl` sits in
/// column `k·n + l`.
pub fn solve_invariant_forms<E>(gens: &[ExactMatrix<E>], proto: &E) -> Result<InvariantForms<E>, LinalgError>
where
    E: Field + Involution + Send + Sync,
{
    let n = match check_square_family(gens)? {
        0 => {
            return Err(LinalgError::DimensionMismatch(
                "no generators: the matrix size is unknown".into(),
            ))
        }
        n => n,
    };
    let zero = proto.zero_like();
    let mut rows = Vec::new();
    for g in gens {
        let gc = g.map(Involution::conj);
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![zero.clone(); n * n];
                for k in 0..n {
                    let a = gc.get(k, i);
                    if a.is_zero_elem() {
                        continue;
                    }
                    for l in 0..n {
                        let b = g.get(l, j);
                        if !b.is_zero_elem() {
                            row[k * n + l] = row[k * n + l].add(&a.mul(b));
                        }
                    }
                }
                row[i * n + j] = row[i * n + j].sub(&proto.one_like());
                if row.iter().any(|x| !x.is_zero_elem()) {
                    rows.push(row);
                }
            }
        }
    }
    let (free, basis) = if rows.is_empty() {
        // identity generators impose nothing
        let free: Vec<usize> = (0..n * n).collect();
        let basis = free
            .iter()
            .map(|&c| {
                let mut v = vec![zero.clone(); n * n];
                v[c] = proto.one_like();
                v
            })
            .collect();
        (free, basis)
    } else {
        let system = ExactMatrix::from_rows(rows)?;
        let rr = rref(&system);
        let free: Vec<usize> = (0..n * n).filter(|c| !rr.pivots.contains(c)).collect();
        (free, nullspace_from_rref(&rr, n * n, proto))
    };
    let raw_basis: Vec<ExactMatrix<E>> = basis
        .into_iter()
        .map(|v| ExactMatrix::from_vec(n, n, v).expect("n² entries"))
        .collect();
    let free_entries = free.iter().map(|&c| (c / n, c % n)).collect();
    let forms = raw_basis
        .iter()
        .map(|j| HermitianForm::new(j.add(&j.conj_transpose())).expect("J + J* is Hermitian"))
        .collect();
    Ok(InvariantForms {
        dimension: raw_basis.len(),
        free_entries,
        raw_basis,
        forms,
    })
}

/// Basis of `{P : P·A_i = B_i·P}`.
///
/// Row `(j, k)` collects `Σ_l P_jl·A_lk − Σ_l B_jl·P_lk`; the unknown `P_jl`
/// sits in column `j·n + l`.
pub fn intertwiner_space<E>(
    a_gens: &[ExactMatrix<E>],
    b_gens: &[ExactMatrix<E>],
    proto: &E,
) -> Result<Vec<ExactMatrix<E>>, LinalgError>
where
    E: Field + Send + Sync,
{
    if a_gens.len() != b_gens.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} source generators, {} targets",
            a_gens.len(),
            b_gens.len()
        )));
    }
    let all: Vec<ExactMatrix<E>> = a_gens.iter().chain(b_gens).cloned().collect();
    let n = check_square_family(&all)?;
    if n == 0 {
        return Err(LinalgError::DimensionMismatch("no generators".into()));
    }
    let zero = proto.zero_like();
    let mut rows = Vec::new();
    for (a, b) in a_gens.iter().zip(b_gens) {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![zero.clone(); n * n];
                for l in 0..n {
                    let x = a.get(l, k);
                    if !x.is_zero_elem() {
                        row[j * n + l] = row[j * n + l].add(x);
                    }
                    let y = b.get(j, l);
                    if !y.is_zero_elem() {
                        row[l * n + k] = row[l * n + k].sub(y);
                    }
                }
                if row.iter().any(|x| !x.is_zero_elem()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = ExactMatrix::from_rows(rows)?;
    let rr = rref(&system);
    Ok(nullspace_from_rref(&rr, n * n, proto)
        .into_iter()
        .map(|v| ExactMatrix::from_vec(n, n, v).expect("n² entries"))
        .collect())
}

/// Searches the intertwiner space for an invertible `P` with
/// `P·A_i·P⁻¹ = B_i`, trying seeded random small-integer combinations of
/// the basis.
pub fn solve_conjugator<E>(
    a_gens: &[ExactMatrix<E>],
    b_gens: &[ExactMatrix<E>],
    proto: &E,
    seed: u64,
    attempts: usize,
) -> Result<Option<ExactMatrix<E>>, LinalgError>
where
    E: Field + Send + Sync,
{
    let basis = intertwiner_space(a_gens, b_gens, proto)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let mut p = basis[0].scale(&proto.from_int_like(rng.gen_range(-3..=3)));
        for b in &basis[1..] {
            let k: i64 = rng.gen_range(-3..=3);
            if k != 0 {
                p = p.add(&b.scale(&proto.from_int_like(k)));
            }
        }
        if p.is_zero() || det_field(&p)?.is_zero_elem() {
            continue;
        }
        let ok = a_gens
            .iter()
            .zip(b_gens)
            .all(|(a, b)| p.mul(a) == b.mul(&p));
        if ok {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Exact sign under the real embedding with `√d > 0`.
pub trait RealSign {
    fn real_sign(&self) -> Ordering;
}

impl RealSign for QuadElem {
    fn real_sign(&self) -> Ordering {
        QuadElem::real_sign(self)
    }
}

impl RealSign for BigRational {
    fn real_sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// `(positive, negative)` counts of the diagonal entries.
pub fn signature_of_diagonal<E: Ring + RealSign>(d: &ExactMatrix<E>) -> Result<(usize, usize), LinalgError> {
    if !d.is_square() {
        return Err(LinalgError::NonSquare {
            rows: d.rows(),
            cols: d.cols(),
        });
    }
    if !d.is_diagonal() {
        return Err(LinalgError::NonDiagonal);
    }
    let (mut pos, mut neg) = (0, 0);
    for i in 0..d.rows() {
        match d.get(i, i).real_sign() {
            Ordering::Greater => pos += 1,
            Ordering::Less => neg += 1,
            Ordering::Equal => return Err(LinalgError::ZeroDiagonalEntry(i)),
        }
    }
    Ok((pos, neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn q(rows: &[&[i64]]) -> ExactMatrix<BigRational> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_generator_leaves_everything_free() {
        let z = rat(0, 1);
        let sol = solve_invariant_forms(&[ExactMatrix::identity(3, &z)], &z).unwrap();
        assert_eq!(sol.dimension, 9);
        assert_eq!(sol.free_entries[0], (0, 0));
        for f in &sol.forms {
            assert_eq!(f.matrix().conj_transpose(), *f.matrix());
        }
    }

    #[test]
    fn rotation_invariants() {
        // forms preserved by an order-4 plane rotation: a·I + b·S with S skew
        let z = rat(0, 1);
        let r = q(&[&[0, -1], &[1, 0]]);
        let sol = solve_invariant_forms(std::slice::from_ref(&r), &z).unwrap();
        assert_eq!(sol.dimension, 2);
        assert_eq!(sol.free_entries, vec![(1, 0), (1, 1)]);
        // the skew solution symmetrises to zero, the other to 2·I
        assert!(sol.forms[0].matrix().is_zero());
        assert_eq!(sol.forms[1].matrix(), &q(&[&[2, 0], &[0, 2]]));
        for (raw, f) in sol.raw_basis.iter().zip(&sol.forms) {
            assert_eq!(r.transpose().mul(raw).mul(&r), *raw);
            assert!(f.is_preserved_by(&r));
        }
    }

    #[test]
    fn conjugator_between_similar_matrices() {
        let z = rat(0, 1);
        let a = q(&[&[1, 1], &[0, 2]]);
        let p0 = q(&[&[1, 2], &[1, 3]]);
        let p0i = crate::linalg::inverse(&p0).unwrap().unwrap();
        let b = p0.mul(&a).mul(&p0i);
        let p = solve_conjugator(std::slice::from_ref(&a), std::slice::from_ref(&b), &z, 7, 32).unwrap().unwrap();
        assert_eq!(p.mul(&a), b.mul(&p));
        assert!(!det_field(&p).unwrap().is_zero_elem());
        // identical families admit the identity
        let id = solve_conjugator(std::slice::from_ref(&a), std::slice::from_ref(&a), &z, 7, 32).unwrap();
        assert!(id.is_some());
    }

    #[test]
    fn no_conjugator_between_i_and_minus_i() {
        let z = rat(0, 1);
        let id = ExactMatrix::identity(3, &z);
        assert_eq!(solve_conjugator(std::slice::from_ref(&id), &[id.neg()], &z, 1, 8).unwrap(), None);
    }

    #[test]
    fn signatures() {
        let d = ExactMatrix::diagonal(&[rat(1, 1), rat(-1, 1)]);
        assert_eq!(signature_of_diagonal(&d).unwrap(), (1, 1));
        let id = ExactMatrix::identity(4, &rat(0, 1));
        assert_eq!(signature_of_diagonal(&id).unwrap(), (4, 0));
        assert_eq!(signature_of_diagonal(&q(&[&[1, 1], &[0, 1]])), Err(LinalgError::NonDiagonal));
        assert_eq!(
            signature_of_diagonal(&ExactMatrix::diagonal(&[rat(1, 1), rat(0, 1)])),
            Err(LinalgError::ZeroDiagonalEntry(1))
        );
        // 1 − √3 < 0 < 2 − √3
        let a = QuadElem::from_ints(1, -1, 3).unwrap();
        let b = QuadElem::from_ints(2, -1, 3).unwrap();
        assert_eq!(signature_of_diagonal(&ExactMatrix::diagonal(&[a, b])).unwrap(), (1, 1));
    }

    #[test]
    fn hermitian_check() {
        let x = QuadElem::from_ints(1, 1, 3).unwrap();
        let one = QuadElem::from_ints(1, 0, 3).unwrap();
        let m = ExactMatrix::from_rows(vec![vec![one.clone(), x.clone()], vec![x.tau(), one.clone()]]).unwrap();
        assert!(HermitianForm::new(m).is_ok());
        let bad = ExactMatrix::from_rows(vec![vec![one.clone(), x.clone()], vec![x, one]]).unwrap();
        assert_eq!(HermitianForm::new(bad).err(), Some(LinalgError::NotHermitian));
    }
}
