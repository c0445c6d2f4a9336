use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::{NumberError, QuadElem};
use crate::ring::{Involution, InvolutionKind, Ring};

/// `(p + q√d)/2` in the ring of integers O_d.
///
/// One representation covers both cases: for `d ≡ 2, 3 (mod 4)` both halves
/// are even, for `d ≡ 1 (mod 4)` they share a parity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OdElem {
    p: BigInt,
    q: BigInt,
    d: i64,
}

fn parity_ok(p: &BigInt, q: &BigInt, d: i64) -> bool {
    if d.rem_euclid(4) == 1 {
        p.is_even() == q.is_even()
    } else {
        p.is_even() && q.is_even()
    }
}

impl OdElem {
    pub fn new(p: BigInt, q: BigInt, d: i64) -> Result<Self, NumberError> {
        super::check_radicand(d)?;
        if !parity_ok(&p, &q, d) {
            return Err(NumberError::ParityViolation {
                p: p.to_string(),
                q: q.to_string(),
                d,
            });
        }
        Ok(OdElem { p, q, d })
    }

    /// The element `a + b√d` with integer `a`, `b`.
    pub fn from_ints(a: impl Into<BigInt>, b: impl Into<BigInt>, d: i64) -> Result<Self, NumberError> {
        let two = BigInt::from(2);
        Self::new(a.into() * &two, b.into() * two, d)
    }

    /// Twice the rational part.
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    /// Twice the `√d` coefficient.
    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn to_quad(&self) -> QuadElem {
        let two = BigInt::from(2);
        QuadElem::new_unchecked(
            BigRational::new(self.p.clone(), two.clone()),
            BigRational::new(self.q.clone(), two),
            self.d,
        )
    }

    pub fn tau(&self) -> Self {
        OdElem {
            p: self.p.clone(),
            q: -&self.q,
            d: self.d,
        }
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixing O_{} with O_{}", self.d, other.d);
    }
}

impl Ring for OdElem {
    fn zero_like(&self) -> Self {
        OdElem {
            p: BigInt::zero(),
            q: BigInt::zero(),
            d: self.d,
        }
    }
    fn one_like(&self) -> Self {
        OdElem {
            p: BigInt::from(2),
            q: BigInt::zero(),
            d: self.d,
        }
    }
    fn is_zero_elem(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.same_ring(rhs);
        OdElem {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
            d: self.d,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.same_ring(rhs);
        OdElem {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
            d: self.d,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.same_ring(rhs);
        // ((p1 + q1√d)(p2 + q2√d))/4, and the product is again in O_d
        let d = BigInt::from(self.d);
        let p = &self.p * &rhs.p + &self.q * &rhs.q * d;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        let two = BigInt::from(2);
        debug_assert!(p.is_even() && q.is_even());
        OdElem {
            p: p / &two,
            q: q / two,
            d: self.d,
        }
    }
    fn neg(&self) -> Self {
        OdElem {
            p: -&self.p,
            q: -&self.q,
            d: self.d,
        }
    }
    fn from_int_like(&self, n: i64) -> Self {
        OdElem {
            p: BigInt::from(2 * n),
            q: BigInt::zero(),
            d: self.d,
        }
    }
    fn is_one_elem(&self) -> bool {
        self.q.is_zero() && self.p == BigInt::from(2)
    }
    fn size_hint(&self) -> usize {
        (self.p.bits() + self.q.bits()) as usize
    }
}

impl Involution for OdElem {
    const KIND: InvolutionKind = InvolutionKind::Tau;
    fn conj(&self) -> Self {
        self.tau()
    }
}

crate::impl_ring_ops!(OdElem);

impl fmt::Display for OdElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_quad())
    }
}

impl fmt::Debug for OdElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OdElem({})", self.to_quad())
    }
}

impl From<OdElem> for QuadElem {
    fn from(x: OdElem) -> Self {
        x.to_quad()
    }
}
