use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{check_radicand, rat_int, NumberError, OdElem};
use crate::ring::{ExactDiv, Field, Involution, InvolutionKind, Ring};

/// `a + b√d` in the real quadratic field Q(√d).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: BigRational,
    b: BigRational,
    d: i64,
}

impl QuadElem {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Result<Self, NumberError> {
        check_radicand(d)?;
        Ok(QuadElem { a, b, d })
    }

    /// Constructor for callers that already validated `d`.
    pub(crate) fn new_unchecked(a: BigRational, b: BigRational, d: i64) -> Self {
        debug_assert!(check_radicand(d).is_ok());
        QuadElem { a, b, d }
    }

    pub fn from_ints(a: i64, b: i64, d: i64) -> Result<Self, NumberError> {
        Self::new(rat_int(a), rat_int(b), d)
    }

    pub fn rational(a: BigRational, d: i64) -> Result<Self, NumberError> {
        Self::new(a, BigRational::zero(), d)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: i64) -> Result<Self, NumberError> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The Galois involution `√d ↦ −√d`.
    pub fn tau(&self) -> Self {
        QuadElem {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// `x·τ(x) = a² − d·b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat_int(self.d)
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Membership in O_d, split on `d mod 4`.
    pub fn is_integral(&self) -> bool {
        self.to_od().is_ok()
    }

    /// Rewrites the element as `(p + q√d)/2` when it lies in O_d.
    pub fn to_od(&self) -> Result<OdElem, NumberError> {
        let two = rat_int(2);
        let p = &self.a * &two;
        let q = &self.b * &two;
        if !p.is_integer() || !q.is_integer() {
            return Err(NumberError::NotIntegral(self.d));
        }
        OdElem::new(p.to_integer(), q.to_integer(), self.d)
            .map_err(|_| NumberError::NotIntegral(self.d))
    }

    /// Sign under the real embedding with `√d > 0`.
    pub fn real_sign(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a² with d·b²
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let db2 = &self.b * &self.b * rat_int(self.d);
                match a2.cmp(&db2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixing Q(√{}) with Q(√{})", self.d, other.d);
    }
}

impl Ring for QuadElem {
    fn zero_like(&self) -> Self {
        QuadElem {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: self.d,
        }
    }
    fn one_like(&self) -> Self {
        QuadElem {
            a: BigRational::one(),
            b: BigRational::zero(),
            d: self.d,
        }
    }
    fn is_zero_elem(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        QuadElem {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: self.d,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        QuadElem {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d: self.d,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        let d = rat_int(self.d);
        QuadElem {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        }
    }
    fn neg(&self) -> Self {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
    fn from_int_like(&self, n: i64) -> Self {
        QuadElem {
            a: rat_int(n),
            b: BigRational::zero(),
            d: self.d,
        }
    }
    fn size_hint(&self) -> usize {
        self.a.size_hint() + self.b.size_hint()
    }
}

impl Field for QuadElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero_elem() {
            return None;
        }
        // d is not a square, so the norm of a nonzero element is nonzero
        let n = self.norm();
        Some(QuadElem {
            a: &self.a / &n,
            b: -&self.b / &n,
            d: self.d,
        })
    }
}

impl ExactDiv for QuadElem {
    fn div_exact(&self, rhs: &Self) -> Self {
        self.div(rhs).expect("division by zero in Q(√d)")
    }
}

impl Involution for QuadElem {
    const KIND: InvolutionKind = InvolutionKind::Tau;
    fn conj(&self) -> Self {
        self.tau()
    }
}

crate::impl_ring_ops!(QuadElem);

fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let b_abs = self.b.abs();
        let b_str = if b_abs.is_one() {
            String::new()
        } else {
            fmt_rat(&b_abs)
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{b_str}√{}", self.d)
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {b_str}√{}", fmt_rat(&self.a), self.d)
        }
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadElem({self})")
    }
}

/// Integer multiple helper used by Pell code: `(t + y√d)` with integer parts.
pub(crate) fn quad_from_bigints(t: &BigInt, y: &BigInt, d: i64) -> QuadElem {
    QuadElem::new_unchecked(rat_int(t.clone()), rat_int(y.clone()), d)
}
