use std::fmt;

use super::LinalgError;
use crate::ring::{Involution, Ring};

/// Dense row-major matrix over an exact coefficient domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Ring> ExactMatrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Builds a matrix from a row-major vector of length `rows·cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    /// Zero matrix; `proto` supplies the coefficient context.
    pub fn zeros(rows: usize, cols: usize, proto: &E) -> Self {
        let z = proto.zero_like();
        ExactMatrix {
            rows,
            cols,
            data: vec![z; rows * cols],
        }
    }

    pub fn identity(n: usize, proto: &E) -> Self {
        let z = proto.zero_like();
        let o = proto.one_like();
        ExactMatrix::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn diagonal(entries: &[E]) -> Self {
        let n = entries.len();
        let z = entries.first().map(Ring::zero_like);
        ExactMatrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                z.clone().unwrap()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    /// Row-major flattening.
    pub fn vectorize(&self) -> Vec<E> {
        self.data.clone()
    }

    pub fn map<F: Ring>(&self, f: impl FnMut(&E) -> F) -> ExactMatrix<F> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<F: Ring, X>(&self, f: impl FnMut(&E) -> Result<F, X>) -> Result<ExactMatrix<F>, X> {
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    fn same_shape(&self, o: &Self, op: &str) {
        assert!(
            self.rows == o.rows && self.cols == o.cols,
            "{op}: {}×{} vs {}×{}",
            self.rows,
            self.cols,
            o.rows,
            o.cols
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_shape(o, "add");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_shape(o, "sub");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, k: &E) -> Self {
        self.map(|x| x.mul(k))
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    /// Matrix product; panics on a dimension mismatch.
    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("matrix product dimension mismatch")
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * o.cols);
        let proto = self.data.first().or(o.data.first());
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc: Option<E> = None;
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if a.is_zero_elem() || b.is_zero_elem() {
                        continue;
                    }
                    let p = a.mul(b);
                    acc = Some(match acc {
                        None => p,
                        Some(x) => x.add(&p),
                    });
                }
                data.push(acc.unwrap_or_else(|| proto.expect("nonempty").zero_like()));
            }
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: o.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero_elem() && !b.is_zero_elem() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Non-negative integer power of a square matrix.
    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = ExactMatrix::identity(self.rows, &self.data[0]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> E {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let proto = blocks.iter().find_map(|b| b.data.first()).expect("nonempty block");
        let mut m = ExactMatrix::zeros(rows, cols, proto);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        ExactMatrix::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols).mul(o.get(i % o.rows, j % o.cols))
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one_elem()
                    } else {
                        x.is_zero_elem()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero_elem)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero_elem()))
    }
}

impl<E: Ring + Involution> ExactMatrix<E> {
    /// `M* = conj(M)ᵀ` under the coefficient involution.
    pub fn conj_transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }
}

impl<E: Ring + fmt::Display> fmt::Display for ExactMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<E: fmt::Debug> fmt::Debug for ExactMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}
