use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::FuncFieldError;
use crate::numbers::is_rational_square;
use crate::ring::{Field, Involution, InvolutionKind, Ring};

/// `c00 + c10·σ + c01·ω + c11·σω` over Q with `σ² = S`, `ω² = W`.
///
/// This is the tower specialised at a rational `t0`, where `S = t0² − 1`
/// and `W = t0² + 2`. It is a field exactly when none of `S`, `W`, `S·W` is
/// a rational square, which [`BiquadElem::context`] enforces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiquadElem {
    c: [BigRational; 4],
    s2: BigRational,
    w2: BigRational,
}

impl BiquadElem {
    /// Zero of Q(√S, √W), after checking that the algebra is a field.
    pub fn context(s2: BigRational, w2: BigRational) -> Result<Self, FuncFieldError> {
        for x in [&s2, &w2, &(&s2 * &w2)] {
            if is_rational_square(x).is_some() {
                return Err(FuncFieldError::InvalidSpecialization(format!(
                    "{x} is a rational square, Q(√{s2}, √{w2}) is not a degree-4 field"
                )));
            }
        }
        Ok(BiquadElem {
            c: std::array::from_fn(|_| BigRational::zero()),
            s2,
            w2,
        })
    }

    pub fn with_coeffs(&self, c: [BigRational; 4]) -> Self {
        BiquadElem {
            c,
            s2: self.s2.clone(),
            w2: self.w2.clone(),
        }
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    fn map(&self, f: impl Fn(usize, &BigRational) -> BigRational) -> Self {
        self.with_coeffs(std::array::from_fn(|i| f(i, &self.c[i])))
    }

    pub fn conj_s(&self) -> Self {
        self.map(|i, x| if i % 2 == 1 { -x } else { x.clone() })
    }

    pub fn conj_w(&self) -> Self {
        self.map(|i, x| if i >= 2 { -x } else { x.clone() })
    }

    fn in_q(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }
}

impl Ring for BiquadElem {
    fn zero_like(&self) -> Self {
        self.map(|_, _| BigRational::zero())
    }
    fn one_like(&self) -> Self {
        self.map(|i, _| if i == 0 { BigRational::one() } else { BigRational::zero() })
    }
    fn is_zero_elem(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.map(|i, x| x + &rhs.c[i])
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.map(|i, x| x - &rhs.c[i])
    }
    fn mul(&self, rhs: &Self) -> Self {
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &rhs.c;
        let (s, w) = (&self.s2, &self.w2);
        self.with_coeffs([
            a0 * b0 + s * (a1 * b1) + w * (a2 * b2) + s * w * (a3 * b3),
            a0 * b1 + a1 * b0 + w * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + s * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ])
    }
    fn neg(&self) -> Self {
        self.map(|_, x| -x)
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.map(|i, _| {
            if i == 0 {
                BigRational::from_integer(n.into())
            } else {
                BigRational::zero()
            }
        })
    }
    fn size_hint(&self) -> usize {
        self.c
            .iter()
            .map(|x| (x.numer().bits() + x.denom().bits()) as usize)
            .sum()
    }
}

impl Field for BiquadElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero_elem() {
            return None;
        }
        if self.in_q() {
            return Some(self.map(|i, x| if i == 0 { x.recip() } else { BigRational::zero() }));
        }
        let xs = self.conj_s();
        let y = self.mul(&xs);
        let yw = y.conj_w();
        let n = y.mul(&yw);
        debug_assert!(n.in_q());
        let k = n.c[0].recip();
        Some(xs.mul(&yw).map(|_, x| x * &k))
    }
}

impl Involution for BiquadElem {
    const KIND: InvolutionKind = InvolutionKind::TauS;
    fn conj(&self) -> Self {
        self.conj_s()
    }
}

crate::impl_ring_ops!(BiquadElem);

impl fmt::Debug for BiquadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}·√{} + {}·√{} + {}·√{}√{}",
            self.c[0], self.c[1], self.s2, self.c[2], self.w2, self.c[3], self.s2, self.w2
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;
    use proptest::prelude::*;

    fn ctx() -> BiquadElem {
        BiquadElem::context(rat(3, 1), rat(6, 1)).unwrap()
    }

    #[test]
    fn rejects_degenerate_fields() {
        assert!(BiquadElem::context(rat(4, 1), rat(6, 1)).is_err());
        assert!(BiquadElem::context(rat(3, 1), rat(12, 1)).is_err());
    }

    #[test]
    fn radicals() {
        let z = ctx();
        let s = z.with_coeffs([rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)]);
        let w = z.with_coeffs([rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)]);
        assert_eq!(s.mul(&s), z.from_int_like(3));
        assert_eq!(s.mul(&w).mul(&s.mul(&w)), z.from_int_like(18));
    }

    proptest! {
        #[test]
        fn inverses(c in prop::array::uniform4(-20i64..20)) {
            let z = ctx();
            let x = z.with_coeffs(c.map(|v| rat(v, 1)));
            prop_assume!(!x.is_zero_elem());
            prop_assert!(x.mul(&x.inv().unwrap()).is_one_elem());
        }
    }
}
