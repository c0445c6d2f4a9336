use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ring::{ExactDiv, Involution, InvolutionKind, Ring};

/// Gaussian integer `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn i() -> Self {
        GaussianInt::new(0, 1)
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Appends a canonical byte encoding, used as a hash key for matrices.
    pub fn write_key(&self, out: &mut Vec<u8>) {
        for part in [&self.re, &self.im] {
            let bytes = part.to_signed_bytes_le();
            out.push(bytes.len() as u8);
            out.extend_from_slice(&bytes);
        }
    }
}

impl Ring for GaussianInt {
    fn zero_like(&self) -> Self {
        GaussianInt::new(0, 0)
    }
    fn one_like(&self) -> Self {
        GaussianInt::new(1, 0)
    }
    fn is_zero_elem(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        GaussianInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        GaussianInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn neg(&self) -> Self {
        GaussianInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn from_int_like(&self, n: i64) -> Self {
        GaussianInt::new(n, 0)
    }
    fn is_one_elem(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    fn size_hint(&self) -> usize {
        (self.re.bits() + self.im.bits()) as usize
    }
}

impl ExactDiv for GaussianInt {
    fn div_exact(&self, rhs: &Self) -> Self {
        let n = rhs.norm();
        let num = self.mul(&rhs.conj());
        debug_assert!(num.re.is_multiple_of(&n) && num.im.is_multiple_of(&n));
        GaussianInt {
            re: num.re / &n,
            im: num.im / n,
        }
    }
}

impl Involution for GaussianInt {
    const KIND: InvolutionKind = InvolutionKind::ComplexConjugation;
    fn conj(&self) -> Self {
        GaussianInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
}

crate::impl_ring_ops!(GaussianInt);

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im.is_one() => write!(f, "i"),
            (true, false) if (-&self.im).is_one() => write!(f, "-i"),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                let m = self.im.abs();
                if m.is_one() {
                    write!(f, "{} {sign} i", self.re)
                } else {
                    write!(f, "{} {sign} {m}i", self.re)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
