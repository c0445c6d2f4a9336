use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial in `t` with integer coefficients, lowest degree first.
/// Trailing zeros are never stored, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigInt>,
}

impl Poly {
    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(k: BigInt) -> Self {
        Poly::from_coeffs(vec![k])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Poly::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.c.last()
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and fixes the sign so the leading coefficient
    /// is positive. Zero maps to zero.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lc().unwrap().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    /// Coefficient-wise exact division by a nonzero integer.
    pub fn div_scalar(&self, k: &BigInt) -> Poly {
        if k.is_one() {
            return self.clone();
        }
        Poly {
            c: self.c.iter().map(|x| x / k).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (long, short) = if self.c.len() >= o.c.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut c = long.c.clone();
        for (x, y) in c.iter_mut().zip(&short.c) {
            *x += y;
        }
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i);
            let b = o.c.get(i);
            c.push(match (a, b) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Pseudo-remainder of `self` by `o`: the remainder of
    /// `lc(o)^(deg self − deg o + 1)·self` on division by `o`.
    pub fn pseudo_rem(&self, o: &Poly) -> Poly {
        let db = o.degree().expect("pseudo-division by zero");
        let lb = o.lc().unwrap();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc().unwrap().clone();
            let shift = dr - db;
            let mut c: Vec<BigInt> = r.c.iter().map(|x| x * lb).collect();
            for (j, b) in o.c.iter().enumerate() {
                c[j + shift] -= &lr * b;
            }
            r = Poly::from_coeffs(c);
        }
        r
    }

    /// `self / o` when the quotient lies in Z[t].
    pub fn div_exact(&self, o: &Poly) -> Option<Poly> {
        let db = o.degree().expect("division by zero polynomial");
        if o.is_one() {
            return Some(self.clone());
        }
        let Some(da) = self.degree() else {
            return Some(Poly::zero());
        };
        if da < db {
            return None;
        }
        let lb = o.lc().unwrap();
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[k + j] -= &qk * b;
            }
            q[k] = qk;
        }
        r.iter().all(|x| x.is_zero()).then(|| Poly::from_coeffs(q))
    }

    /// Gcd of two primitive polynomials, normalised to positive leading
    /// coefficient. Uses the primitive polynomial remainder sequence.
    pub fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.primitive_part();
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a == b {
            return a.primitive_part();
        }
        let (mut x, mut y) = if a.c.len() >= b.c.len() {
            (a.primitive_part(), b.primitive_part())
        } else {
            (b.primitive_part(), a.primitive_part())
        };
        while !y.is_zero() {
            let r = x.pseudo_rem(&y);
            x = y;
            y = r.primitive_part();
            if y.is_constant() && !y.is_zero() {
                return Poly::one();
            }
        }
        x.primitive_part()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for k in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(k.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for k in self.c.iter().rev() {
            acc = acc * x + k;
        }
        acc
    }

    /// Square root in Z[t] with positive leading coefficient, if one exists.
    pub fn sqrt(&self) -> Option<Poly> {
        let Some(d) = self.degree() else {
            return Some(Poly::zero());
        };
        if d % 2 == 1 || self.lc().unwrap().is_negative() {
            return None;
        }
        let m = d / 2;
        let top = crate::numbers::isqrt_exact(self.lc().unwrap())?;
        let two_top = &top * 2;
        let mut r = vec![BigInt::zero(); m + 1];
        r[m] = top;
        for k in 1..=m {
            // coefficient of t^(2m−k) in R² is 2·r_m·r_(m−k) + Σ r_i·r_j over
            // i + j = 2m − k with m−k < i, j < m
            let target = &self.c[2 * m - k];
            let mut rest = BigInt::zero();
            for i in (m - k + 1)..m {
                let j = 2 * m - k - i;
                if j > m - k && j < m {
                    rest += &r[i] * &r[j];
                }
            }
            let (q, rem) = (target - rest).div_rem(&two_top);
            if !rem.is_zero() {
                return None;
            }
            r[m - k] = q;
        }
        let root = Poly::from_coeffs(r);
        (root.mul(&root) == *self).then_some(root)
    }

    /// Total bit size of the coefficients, a cheap measure of complexity.
    pub fn bit_size(&self) -> usize {
        self.c.iter().map(|x| x.bits() as usize + 1).sum()
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, k: &BigInt, e: usize, var: &str) -> fmt::Result {
    let neg = k.is_negative();
    let a = k.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    }
    let unit = a.is_one();
    match e {
        0 => write!(f, "{a}"),
        1 if unit => write!(f, "{var}"),
        1 => write!(f, "{a}*{var}"),
        _ if unit => write!(f, "{var}^{e}"),
        _ => write!(f, "{a}*{var}^{e}"),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, k) in self.c.iter().enumerate().rev() {
            if k.is_zero() {
                continue;
            }
            write_term(f, first, k, e, "t")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "t^2 - 1");
        assert_eq!(p(&[3, -4]).to_string(), "-4*t + 3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = p(&[-1, 0, 1]).mul(&p(&[2, 1]));
        let b = p(&[1, 1]).mul(&p(&[5, 0, 3]));
        assert_eq!(Poly::gcd_primitive(&a, &b), p(&[1, 1]));
        assert_eq!(Poly::gcd_primitive(&p(&[1, 1]), &p(&[-1, 1])), Poly::one());
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[1, 2])), Some(p(&[2])));
    }

    #[test]
    fn square_roots() {
        let r = p(&[3, 0, -4]);
        assert_eq!(r.mul(&r).sqrt(), Some(r.neg()));
        assert_eq!(p(&[-1, 0, 1]).sqrt(), None);
        assert_eq!(p(&[4]).sqrt(), Some(p(&[2])));
        assert_eq!(p(&[2]).sqrt(), None);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-20i64..20, 0..5).prop_map(|v| Poly::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly(), g in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !g.is_zero());
            let x = a.mul(&g).primitive_part();
            let y = b.mul(&g).primitive_part();
            let h = Poly::gcd_primitive(&x, &y);
            prop_assert!(x.div_exact(&h).is_some());
            prop_assert!(y.div_exact(&h).is_some());
            prop_assert!(x.div_exact(&g.primitive_part()).is_some());
            // g's primitive part divides the gcd
            prop_assert!(h.div_exact(&g.primitive_part()).is_some());
        }

        #[test]
        fn eval_is_ring_hom(a in arb_poly(), b in arb_poly(), x in -9i64..9) {
            let q = BigRational::from_integer(x.into());
            prop_assert_eq!(a.mul(&b).eval(&q), a.eval(&q) * b.eval(&q));
            prop_assert_eq!(a.add(&b).eval(&q), a.eval(&q) + b.eval(&q));
        }

        #[test]
        fn square_root_of_square(a in arb_poly()) {
            let r = a.mul(&a).sqrt().unwrap();
            prop_assert!(r == a || r == a.neg());
        }
    }
}
