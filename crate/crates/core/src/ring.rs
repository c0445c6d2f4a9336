//! Coefficient-domain traits shared by every exact type in the crate.
//!
//! Elements carry whatever context they need (the radicand `d`, the residue
//! prime `p`), so constants are produced from an existing element with
//! [`Ring::zero_like`] / [`Ring::one_like`] rather than from a bare type.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Image of the integer `n` under the canonical map `Z -> Self`.
    fn from_int_like(&self, n: i64) -> Self;

    fn is_one_elem(&self) -> bool {
        *self == self.one_like()
    }

    /// Rough size of the element, used only to rank pivot candidates.
    fn size_hint(&self) -> usize {
        0
    }
}

/// A ring in which nonzero elements may be inverted. `inv` returns `None` for
/// non-units, which lets residue rings that are not fields share the trait.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// Integral domain with exact division, as needed by fraction-free elimination.
pub trait ExactDiv: Ring {
    /// `self / rhs`, assuming the quotient exists in the ring.
    fn div_exact(&self, rhs: &Self) -> Self;
}

/// Which conjugation a Hermitian form is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum InvolutionKind {
    /// Identity map (rational entries).
    Trivial,
    /// `√d ↦ −√d` on Q(√d).
    Tau,
    /// `√(t²−1) ↦ −√(t²−1)` on the function-field tower, fixing `√(t²+2)`.
    TauS,
    /// `i ↦ −i` on Z[i].
    ComplexConjugation,
}

/// Ring involution used to form conjugate transposes.
pub trait Involution {
    const KIND: InvolutionKind;
    fn conj(&self) -> Self;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn size_hint(&self) -> usize {
        self.bits() as usize
    }
}

impl ExactDiv for BigInt {
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)), "inexact integer division");
        self / rhs
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn size_hint(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl ExactDiv for BigRational {
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Involution for BigRational {
    const KIND: InvolutionKind = InvolutionKind::Trivial;
    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Implements `std::ops` arithmetic for a type by delegating to its [`Ring`]
/// methods, for both owned values and references.
#[macro_export]
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl ::std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::ring::Ring::add(&self, &rhs)
            }
        }
        impl<'a> ::std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                $crate::ring::Ring::add(self, rhs)
            }
        }
        impl ::std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::ring::Ring::sub(&self, &rhs)
            }
        }
        impl<'a> ::std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                $crate::ring::Ring::sub(self, rhs)
            }
        }
        impl ::std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::ring::Ring::mul(&self, &rhs)
            }
        }
        impl<'a> ::std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                $crate::ring::Ring::mul(self, rhs)
            }
        }
        impl ::std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::Ring::neg(&self)
            }
        }
        impl<'a> ::std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::Ring::neg(self)
            }
        }
    };
}
