use rayon::prelude::*;

use super::matrix::ExactMatrix;
use super::LinalgError;
use crate::ring::{ExactDiv, Field, Ring};

/// Reduced row echelon form and its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<E> {
    pub matrix: ExactMatrix<E>,
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination over a field.
///
/// Pivot columns are taken left to right. Among the candidate rows the one
/// with the smallest [`Ring::size_hint`] pivot is chosen, which keeps
/// rational-function coefficients small; the RREF itself is unique, so the
/// choice does not affect the result. Row updates run in parallel but each
/// row is computed by the same sequence of operations as a sequential pass.
pub fn rref<E>(m: &ExactMatrix<E>) -> Rref<E>
where
    E: Field + Send + Sync,
{
    let (nr, nc) = (m.rows(), m.cols());
    let mut rows: Vec<Vec<E>> = (0..nr).map(|i| m.row(i).to_vec()).collect();
    rows.retain(|r| r.iter().any(|x| !x.is_zero_elem()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nc {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero_elem())
            .min_by_key(|&i| rows[i][col].size_hint());
        let Some(best) = best else { continue };
        rows.swap(r, best);
        let inv = rows[r][col].inv().expect("nonzero pivot is invertible");
        let pivot_row: Vec<E> = rows[r]
            .iter()
            .enumerate()
            .map(|(j, x)| {
                if j < col || x.is_zero_elem() {
                    x.zero_like()
                } else if j == col {
                    x.one_like()
                } else {
                    x.mul(&inv)
                }
            })
            .collect();
        rows[r] = pivot_row.clone();
        rows.par_iter_mut().enumerate().for_each(|(k, row)| {
            if k == r || row[col].is_zero_elem() {
                return;
            }
            let f = row[col].clone();
            for j in col..nc {
                if !pivot_row[j].is_zero_elem() {
                    row[j] = row[j].sub(&f.mul(&pivot_row[j]));
                }
            }
        });
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    let proto = m.entries().first().map(Ring::zero_like);
    let mut out = Vec::with_capacity(nr * nc);
    for row in &rows {
        out.extend(row.iter().cloned());
    }
    if let Some(z) = proto {
        out.resize(nr * nc, z);
    }
    Rref {
        matrix: ExactMatrix::from_vec(if nc == 0 { 0 } else { nr }, nc, out)
            .expect("rref keeps the shape"),
        pivots,
    }
}

pub fn rank<E: Field + Send + Sync>(m: &ExactMatrix<E>) -> usize {
    rref(m).pivots.len()
}

/// Basis of the right nullspace, one vector per free column in increasing
/// column order; each has a 1 in its own free column and 0 in the others.
pub fn nullspace<E: Field + Send + Sync>(m: &ExactMatrix<E>) -> Vec<Vec<E>> {
    let Some(proto) = m.entries().first() else {
        return Vec::new();
    };
    let rr = rref(m);
    nullspace_from_rref(&rr, m.cols(), proto)
}

pub(crate) fn nullspace_from_rref<E: Field>(rr: &Rref<E>, cols: usize, proto: &E) -> Vec<Vec<E>> {
    let free: Vec<usize> = (0..cols).filter(|c| !rr.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![proto.zero_like(); cols];
            v[f] = proto.one_like();
            for (i, &pc) in rr.pivots.iter().enumerate() {
                v[pc] = rr.matrix.get(i, f).neg();
            }
            v
        })
        .collect()
}

/// Free (non-pivot) columns of `m`.
pub fn free_columns<E: Field + Send + Sync>(m: &ExactMatrix<E>) -> Vec<usize> {
    let rr = rref(m);
    (0..m.cols()).filter(|c| !rr.pivots.contains(c)).collect()
}

/// A solution `X` of `A·X = B` with free variables set to zero, or `None`
/// when the system is inconsistent.
pub fn solve<E: Field + Send + Sync>(
    a: &ExactMatrix<E>,
    b: &ExactMatrix<E>,
) -> Result<Option<ExactMatrix<E>>, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "system with {} rows, right-hand side with {}",
            a.rows(),
            b.rows()
        )));
    }
    let (n, k) = (a.cols(), b.cols());
    let aug = ExactMatrix::from_fn(a.rows(), n + k, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            b.get(i, j - n).clone()
        }
    });
    let rr = rref(&aug);
    if rr.pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let proto = a.get(0, 0);
    let mut x = ExactMatrix::zeros(n, k, proto);
    for (i, &pc) in rr.pivots.iter().enumerate() {
        for j in 0..k {
            x.set(pc, j, rr.matrix.get(i, n + j).clone());
        }
    }
    Ok(Some(x))
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<E: Field + Send + Sync>(m: &ExactMatrix<E>) -> Result<Option<ExactMatrix<E>>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    // a singular matrix puts a pivot inside the identity block
    let id = ExactMatrix::identity(m.rows(), m.get(0, 0));
    solve(m, &id)
}

/// Determinant by fraction-free (Bareiss) elimination over an integral domain.
pub fn det<E: ExactDiv>(m: &ExactMatrix<E>) -> Result<E, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Err(LinalgError::DimensionMismatch("empty matrix".into()));
    }
    let mut a: Vec<Vec<E>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = a[0][0].one_like();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero_elem()) else {
                return Ok(a[0][0].zero_like());
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev);
            }
            a[i][k] = a[i][k].zero_like();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Determinant by ordinary elimination with field division.
pub fn det_field<E: Field>(m: &ExactMatrix<E>) -> Result<E, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Err(LinalgError::DimensionMismatch("empty matrix".into()));
    }
    let mut a: Vec<Vec<E>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut d = a[0][0].one_like();
    for c in 0..n {
        let best = (c..n)
            .filter(|&i| !a[i][c].is_zero_elem())
            .min_by_key(|&i| a[i][c].size_hint());
        let Some(p) = best else {
            return Ok(a[0][0].zero_like());
        };
        if p != c {
            a.swap(c, p);
            d = d.neg();
        }
        d = d.mul(&a[c][c]);
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero_elem() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c + 1..n {
                if !a[c][j].is_zero_elem() {
                    a[i][j] = a[i][j].sub(&f.mul(&a[c][j]));
                }
            }
        }
    }
    Ok(d)
}

/// Incrementally maintained semi-echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct IncrementalBasis<E> {
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Field> Default for IncrementalBasis<E> {
    fn default() -> Self {
        IncrementalBasis { rows: Vec::new() }
    }
}

impl<E: Field> IncrementalBasis<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the stored vectors; returns whether
    /// the rank grew.
    pub fn insert(&mut self, v: &[E]) -> bool {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero_elem() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero_elem() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero_elem()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero entry");
        let v: Vec<E> = v.iter().map(|x| x.mul(&inv)).collect();
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> ExactMatrix<BigRational> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_and_zero_nullspaces() {
        let id = ExactMatrix::identity(4, &rat(0, 1));
        assert!(nullspace(&id).is_empty());
        let z = ExactMatrix::zeros(3, 3, &rat(0, 1));
        assert_eq!(nullspace(&z).len(), 3);
        assert_eq!(det(&ExactMatrix::identity(8, &rat(0, 1))).unwrap(), rat(1, 1));
    }

    #[test]
    fn diagonal_determinant() {
        let d = ExactMatrix::diagonal(&[rat(1, 1), rat(-1, 1), rat(-5, 1), rat(1, 1)]);
        assert_eq!(det(&d).unwrap(), rat(5, 1));
        assert_eq!(det_field(&d).unwrap(), rat(5, 1));
    }

    #[test]
    fn non_square_rejected() {
        let m = q(&[&[1, 2, 3]]);
        assert_eq!(det(&m), Err(LinalgError::NonSquare { rows: 1, cols: 3 }));
        assert!(inverse(&m).is_err());
    }

    #[test]
    fn bareiss_needs_row_swaps() {
        let m = q(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(det(&m).unwrap(), rat(-2, 1));
        let mi = m.map(|x| x.to_integer());
        assert_eq!(det(&mi).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn inverse_and_solve() {
        let m = q(&[&[2, 1], &[5, 3]]);
        let inv = inverse(&m).unwrap().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(inverse(&q(&[&[1, 2], &[2, 4]])).unwrap(), None);
        let b = q(&[&[1], &[2]]);
        let x = solve(&m, &b).unwrap().unwrap();
        assert_eq!(m.mul(&x), b);
        assert_eq!(solve(&q(&[&[1, 1], &[1, 1]]), &b).unwrap(), None);
    }

    #[test]
    fn incremental_rank() {
        let mut b = IncrementalBasis::new();
        assert!(b.insert(&[rat(1, 1), rat(2, 1), rat(0, 1)]));
        assert!(!b.insert(&[rat(2, 1), rat(4, 1), rat(0, 1)]));
        assert!(b.insert(&[rat(0, 1), rat(0, 1), rat(3, 1)]));
        assert!(!b.insert(&[rat(1, 1), rat(2, 1), rat(7, 1)]));
        assert_eq!(b.rank(), 2);
    }

    fn arb_matrix(r: usize, c: usize) -> impl Strategy<Value = ExactMatrix<BigRational>> {
        prop::collection::vec(-6i64..6, r * c)
            .prop_map(move |v| ExactMatrix::from_vec(r, c, v.into_iter().map(|x| rat(x, 1)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in arb_matrix(4, 4), b in arb_matrix(4, 4)) {
            let lhs = det(&a.mul(&b)).unwrap();
            prop_assert_eq!(&lhs, &(det(&a).unwrap() * det(&b).unwrap()));
            prop_assert_eq!(det_field(&a).unwrap(), det(&a).unwrap());
        }

        #[test]
        fn nullity_of_low_rank_products(b in arb_matrix(5, 2), c in arb_matrix(2, 6)) {
            let m = b.mul(&c);
            let ns = nullspace(&m);
            let r = rank(&m);
            prop_assert!(r <= 2);
            prop_assert_eq!(ns.len(), 6 - r);
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(|x| x == &rat(0, 1)));
            }
        }

        #[test]
        fn integer_bareiss_matches_rational(a in arb_matrix(5, 5)) {
            let ai = a.map(|x| x.to_integer());
            prop_assert_eq!(BigRational::from_integer(det(&ai).unwrap()), det(&a).unwrap());
        }
    }
}
