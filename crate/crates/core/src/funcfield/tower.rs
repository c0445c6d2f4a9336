use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::FuncFieldError;
use crate::ring::{ExactDiv, Field, Involution, InvolutionKind, Ring};

/// `t² − 1`, the square of `s`.
pub fn s_squared() -> &'static RatFunc {
    static S2: OnceLock<RatFunc> = OnceLock::new();
    S2.get_or_init(|| RatFunc::from_poly(Poly::from_i64s(&[-1, 0, 1])))
}

/// `t² + 2`, the square of `w`.
pub fn w_squared() -> &'static RatFunc {
    static W2: OnceLock<RatFunc> = OnceLock::new();
    W2.get_or_init(|| RatFunc::from_poly(Poly::from_i64s(&[2, 0, 1])))
}

fn sw_squared() -> &'static RatFunc {
    static SW2: OnceLock<RatFunc> = OnceLock::new();
    SW2.get_or_init(|| s_squared().mul(w_squared()))
}

/// `c00 + c10·s + c01·w + c11·s·w` with `s² = t² − 1`, `w² = t² + 2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TowerElem {
    c: [RatFunc; 4],
}

impl TowerElem {
    pub fn new(c00: RatFunc, c10: RatFunc, c01: RatFunc, c11: RatFunc) -> Self {
        TowerElem {
            c: [c00, c10, c01, c11],
        }
    }

    pub fn zero() -> Self {
        TowerElem::from_base(RatFunc::zero())
    }

    pub fn one() -> Self {
        TowerElem::from_base(RatFunc::one())
    }

    pub fn from_int(n: i64) -> Self {
        TowerElem::from_base(RatFunc::from_int(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        TowerElem::from_base(RatFunc::from_rational(q))
    }

    pub fn from_base(x: RatFunc) -> Self {
        TowerElem::new(x, RatFunc::zero(), RatFunc::zero(), RatFunc::zero())
    }

    pub fn t() -> Self {
        TowerElem::from_base(RatFunc::t())
    }

    pub fn s() -> Self {
        TowerElem::new(RatFunc::zero(), RatFunc::one(), RatFunc::zero(), RatFunc::zero())
    }

    pub fn w() -> Self {
        TowerElem::new(RatFunc::zero(), RatFunc::zero(), RatFunc::one(), RatFunc::zero())
    }

    pub fn c00(&self) -> &RatFunc {
        &self.c[0]
    }
    pub fn c10(&self) -> &RatFunc {
        &self.c[1]
    }
    pub fn c01(&self) -> &RatFunc {
        &self.c[2]
    }
    pub fn c11(&self) -> &RatFunc {
        &self.c[3]
    }

    pub fn components(&self) -> &[RatFunc; 4] {
        &self.c
    }

    /// True when the element lies in Q(t).
    pub fn in_base(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// True when the element lies in the subfield Q(t, s).
    pub fn in_qts(&self) -> bool {
        self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// True when every component is a polynomial in `t`.
    pub fn is_polynomial(&self) -> bool {
        self.c.iter().all(RatFunc::is_polynomial)
    }

    pub fn tau_s(&self) -> Self {
        TowerElem::new(
            self.c[0].clone(),
            Ring::neg(&self.c[1]),
            self.c[2].clone(),
            Ring::neg(&self.c[3]),
        )
    }

    pub fn tau_w(&self) -> Self {
        TowerElem::new(
            self.c[0].clone(),
            self.c[1].clone(),
            Ring::neg(&self.c[2]),
            Ring::neg(&self.c[3]),
        )
    }

    pub fn scale_base(&self, k: &RatFunc) -> Self {
        TowerElem {
            c: std::array::from_fn(|i| self.c[i].mul(k)),
        }
    }

    /// Multiplicative inverse, by multiplying through by conjugates until
    /// the norm lands in Q(t).
    pub fn try_inverse(&self) -> Result<Self, FuncFieldError> {
        if self.in_base() {
            return self.c[0]
                .inv()
                .map(TowerElem::from_base)
                .ok_or(FuncFieldError::DivisionByZero);
        }
        let xs = self.tau_s();
        let y = self.mul(&xs);
        let yw = y.tau_w();
        let n = y.mul(&yw);
        debug_assert!(n.in_base());
        let ninv = n.c[0].inv().ok_or(FuncFieldError::DivisionByZero)?;
        Ok(xs.mul(&yw).scale_base(&ninv))
    }
}

/// Products of components, skipping zeros since most entries are sparse in
/// the basis 1, s, w, sw.
fn prod(a: &RatFunc, b: &RatFunc) -> Option<RatFunc> {
    (!a.is_zero() && !b.is_zero()).then(|| a.mul(b))
}

fn sum(parts: impl IntoIterator<Item = Option<RatFunc>>) -> RatFunc {
    let mut acc: Option<RatFunc> = None;
    for p in parts.into_iter().flatten() {
        acc = Some(match acc {
            None => p,
            Some(a) => a.add(&p),
        });
    }
    acc.unwrap_or_else(RatFunc::zero)
}

impl Ring for TowerElem {
    fn zero_like(&self) -> Self {
        TowerElem::zero()
    }
    fn one_like(&self) -> Self {
        TowerElem::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.c.iter().all(RatFunc::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        TowerElem {
            c: std::array::from_fn(|i| self.c[i].add(&rhs.c[i])),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        TowerElem {
            c: std::array::from_fn(|i| self.c[i].sub(&rhs.c[i])),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &rhs.c;
        let s2 = s_squared();
        let w2 = w_squared();
        let c0 = sum([
            prod(a0, b0),
            prod(a1, b1).map(|x| x.mul(s2)),
            prod(a2, b2).map(|x| x.mul(w2)),
            prod(a3, b3).map(|x| x.mul(sw_squared())),
        ]);
        let c1 = sum([
            prod(a0, b1),
            prod(a1, b0),
            Some(sum([prod(a2, b3), prod(a3, b2)]))
                .filter(|x| !x.is_zero())
                .map(|x| x.mul(w2)),
        ]);
        let c2 = sum([
            prod(a0, b2),
            prod(a2, b0),
            Some(sum([prod(a1, b3), prod(a3, b1)]))
                .filter(|x| !x.is_zero())
                .map(|x| x.mul(s2)),
        ]);
        let c3 = sum([prod(a0, b3), prod(a3, b0), prod(a1, b2), prod(a2, b1)]);
        TowerElem { c: [c0, c1, c2, c3] }
    }
    fn neg(&self) -> Self {
        TowerElem {
            c: std::array::from_fn(|i| Ring::neg(&self.c[i])),
        }
    }
    fn from_int_like(&self, n: i64) -> Self {
        TowerElem::from_int(n)
    }
    fn is_one_elem(&self) -> bool {
        self.in_base() && self.c[0].is_one_elem()
    }
    fn size_hint(&self) -> usize {
        self.c.iter().map(|x| x.size_hint()).sum()
    }
}

impl Field for TowerElem {
    fn inv(&self) -> Option<Self> {
        self.try_inverse().ok()
    }
}

impl ExactDiv for TowerElem {
    fn div_exact(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero in the tower"))
    }
}

impl Involution for TowerElem {
    const KIND: InvolutionKind = InvolutionKind::TauS;
    fn conj(&self) -> Self {
        self.tau_s()
    }
}

crate::impl_ring_ops!(TowerElem);

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_elem() {
            return write!(f, "0");
        }
        let mut first = true;
        for (x, basis) in self.c.iter().zip(["", "s", "w", "s*w"]) {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (basis.is_empty(), x.is_one_elem()) {
                (true, _) => write!(f, "{x}")?,
                (false, true) => write!(f, "{basis}")?,
                (false, false) => write!(f, "({x})*{basis}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
