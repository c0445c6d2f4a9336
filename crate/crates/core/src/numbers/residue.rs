use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{check_odd_prime, GaussianInt, NumberError, OdElem};
use crate::ring::{Field, Ring};

/// `a + b·x` in F_p[x]/(x² − d).
///
/// Whether `x² − d` is irreducible mod `p` is never decided: the quotient ring
/// is all the congruence kernel needs. The Gaussian case Z[i]/(p) is `d = −1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueElem {
    a: u64,
    b: u64,
    p: u64,
    d: u64,
}

pub(crate) fn mod_big(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

impl ResidueElem {
    /// Builds `a + b·x` mod `p` in F_p[x]/(x² − d); `p` must be an odd prime.
    pub fn new(a: i64, b: i64, p: u64, d: i64) -> Result<Self, NumberError> {
        check_odd_prime(p)?;
        let r = |v: i64| v.rem_euclid(p as i64) as u64;
        Ok(ResidueElem {
            a: r(a),
            b: r(b),
            p,
            d: r(d),
        })
    }

    pub(crate) fn from_parts(a: u64, b: u64, p: u64, d: u64) -> Self {
        ResidueElem {
            a: a % p,
            b: b % p,
            p,
            d: d % p,
        }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `d mod p`.
    pub fn d(&self) -> u64 {
        self.d
    }

    fn same_ring(&self, o: &Self) {
        assert!(
            self.p == o.p && self.d == o.d,
            "mixing residue rings ({}, {}) and ({}, {})",
            self.p,
            self.d,
            o.p,
            o.d
        );
    }
}

impl Ring for ResidueElem {
    fn zero_like(&self) -> Self {
        ResidueElem::from_parts(0, 0, self.p, self.d)
    }
    fn one_like(&self) -> Self {
        ResidueElem::from_parts(1, 0, self.p, self.d)
    }
    fn is_zero_elem(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self.same_ring(rhs);
        ResidueElem::from_parts(self.a + rhs.a, self.b + rhs.b, self.p, self.d)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.same_ring(rhs);
        ResidueElem::from_parts(
            self.a + self.p - rhs.a,
            self.b + self.p - rhs.b,
            self.p,
            self.d,
        )
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.same_ring(rhs);
        let p = self.p;
        let bb = mulmod(mulmod(self.b, rhs.b, p), self.d, p);
        let a = (mulmod(self.a, rhs.a, p) + bb) % p;
        let b = (mulmod(self.a, rhs.b, p) + mulmod(self.b, rhs.a, p)) % p;
        ResidueElem::from_parts(a, b, p, self.d)
    }
    fn neg(&self) -> Self {
        ResidueElem::from_parts(self.p - self.a, self.p - self.b, self.p, self.d)
    }
    fn from_int_like(&self, n: i64) -> Self {
        ResidueElem::from_parts(n.rem_euclid(self.p as i64) as u64, 0, self.p, self.d)
    }
}

impl Field for ResidueElem {
    /// Units are exactly the elements of nonzero norm `a² − d·b²`.
    fn inv(&self) -> Option<Self> {
        let p = self.p;
        let n = (mulmod(self.a, self.a, p) + p - mulmod(mulmod(self.b, self.b, p), self.d, p)) % p;
        if n == 0 {
            return None;
        }
        let ninv = powmod(n, p - 2, p);
        Some(ResidueElem::from_parts(
            mulmod(self.a, ninv, p),
            mulmod(p - self.b, ninv, p),
            p,
            self.d,
        ))
    }
}

crate::impl_ring_ops!(ResidueElem);

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}x", self.a, self.b)
        }
    }
}

impl fmt::Debug for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {}, x²={})", self.p, self.d)
    }
}

/// Reduction O_d → F_p[x]/(x² − d), `√d ↦ x`.
///
/// Odd `p` makes 2 invertible, which covers the half-integers of `d ≡ 1 (mod 4)`.
pub fn reduce_mod_p(x: &OdElem, p: u64) -> Result<ResidueElem, NumberError> {
    check_odd_prime(p)?;
    let half = p.div_ceil(2);
    let d = mod_big(&BigInt::from(x.d()), p);
    Ok(ResidueElem::from_parts(
        mulmod(mod_big(x.p(), p), half, p),
        mulmod(mod_big(x.q(), p), half, p),
        p,
        d,
    ))
}

/// The map Z[i]/(p) → O_d/(p) with `1 ↦ 1`, `i ↦ y·√d`.
///
/// Well-defined exactly when `d·y² ≡ −1 (mod p)`, which holds whenever `p`
/// divides the `t` of a Pell solution `t² − d·y² = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianHom {
    y: u64,
    p: u64,
    d: u64,
}

impl GaussianHom {
    pub fn new(y: &BigInt, d: i64, p: u64) -> Result<Self, NumberError> {
        check_odd_prime(p)?;
        let y = mod_big(y, p);
        let d = mod_big(&BigInt::from(d), p);
        if !(mulmod(d, mulmod(y, y, p), p) + 1).is_multiple_of(p) {
            return Err(NumberError::NotAHomomorphism { p });
        }
        Ok(GaussianHom { y, p, d })
    }

    pub fn apply(&self, z: &GaussianInt) -> ResidueElem {
        let re = mod_big(&z.re, self.p);
        let im = mod_big(&z.im, self.p);
        ResidueElem::from_parts(re, mulmod(im, self.y, self.p), self.p, self.d)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

/// One-shot form of [`GaussianHom::apply`].
pub fn gaussian_hom_f(
    z: &GaussianInt,
    y: &BigInt,
    d: i64,
    p: u64,
) -> Result<ResidueElem, NumberError> {
    Ok(GaussianHom::new(y, d, p)?.apply(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        let x = OdElem::from_ints(7, 4, 3).unwrap();
        assert_eq!(reduce_mod_p(&x, 7).unwrap(), ResidueElem::new(0, 4, 7, 3).unwrap());
        let one = OdElem::from_ints(1, 0, 3).unwrap();
        assert!(reduce_mod_p(&one, 11).unwrap().is_one_elem());
        assert_eq!(reduce_mod_p(&one, 2), Err(NumberError::EvenPrime));
    }

    #[test]
    fn half_integers_reduce() {
        // (1 + √5)/2 mod 11: 2⁻¹ = 6
        let phi = OdElem::new(1.into(), 1.into(), 5).unwrap();
        assert_eq!(reduce_mod_p(&phi, 11).unwrap(), ResidueElem::new(6, 6, 11, 5).unwrap());
    }

    #[test]
    fn hom_examples() {
        let f = GaussianHom::new(&BigInt::from(4), 3, 7).unwrap();
        assert_eq!(f.apply(&GaussianInt::i()), ResidueElem::new(0, 4, 7, 3).unwrap());
        assert!(GaussianHom::new(&BigInt::from(15), 3, 13).is_ok());
        assert_eq!(
            GaussianHom::new(&BigInt::from(1), 3, 7),
            Err(NumberError::NotAHomomorphism { p: 7 })
        );
    }

    #[test]
    fn image_of_i_squares_to_minus_one() {
        for (y, d, p) in [(4i64, 3i64, 7u64), (15, 3, 13), (4, 5, 3), (72, 5, 7)] {
            let f = GaussianHom::new(&BigInt::from(y), d, p).unwrap();
            let fi = f.apply(&GaussianInt::i());
            assert_eq!(fi.mul(&fi), fi.from_int_like(-1));
        }
    }

    #[test]
    fn units_and_zero_divisors() {
        // x² − 4 splits mod 7, so x − 2 is a zero divisor
        let z = ResidueElem::new(-2, 1, 7, 4).unwrap();
        assert!(z.inv().is_none());
        let u = ResidueElem::new(3, 1, 7, 3).unwrap();
        assert!(u.mul(&u.inv().unwrap()).is_one_elem());
    }

    proptest! {
        #[test]
        fn reduction_is_ring_hom(a in -500i64..500, b in -500i64..500, c in -500i64..500, e in -500i64..500) {
            let x = OdElem::from_ints(a, b, 3).unwrap();
            let y = OdElem::from_ints(c, e, 3).unwrap();
            let r = |v: &OdElem| reduce_mod_p(v, 13).unwrap();
            prop_assert_eq!(r(&x.mul(&y)), r(&x).mul(&r(&y)));
            prop_assert_eq!(r(&x.add(&y)), r(&x).add(&r(&y)));
            prop_assert_eq!(r(&x.sub(&y)), r(&x).sub(&r(&y)));
        }

        #[test]
        fn gaussian_hom_is_ring_hom(a in -99i64..99, b in -99i64..99, c in -99i64..99, e in -99i64..99) {
            let f = GaussianHom::new(&BigInt::from(15), 3, 13).unwrap();
            let x = GaussianInt::new(a, b);
            let y = GaussianInt::new(c, e);
            prop_assert_eq!(f.apply(&x.mul(&y)), f.apply(&x).mul(&f.apply(&y)));
            prop_assert_eq!(f.apply(&x.add(&y)), f.apply(&x).add(&f.apply(&y)));
        }
    }
}
