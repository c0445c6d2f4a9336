use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::ring::{ExactDiv, Field, Involution, InvolutionKind, Ring};

/// Element of Q(t) stored as `content · num / den`.
///
/// `num` and `den` are primitive in Z[t] with positive leading coefficient
/// and coprime, so equal fractions have identical representations. Zero is
/// `0 · 1/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    content: BigRational,
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            content: BigRational::zero(),
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        RatFunc {
            content: q,
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn t() -> Self {
        RatFunc::from_poly(Poly::t())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc::from_parts(BigRational::one(), p, Poly::one())
    }

    /// Normalises `q · num / den`. Panics if `den` is zero.
    pub fn from_parts(q: BigRational, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if q.is_zero() || num.is_zero() {
            return RatFunc::zero();
        }
        let (qn, num) = split_content(&num);
        let (qd, den) = split_content(&den);
        let content = q * BigRational::new(qn, qd);
        let g = Poly::gcd_primitive(&num, &den);
        if g.is_one() {
            return RatFunc { content, num, den };
        }
        RatFunc {
            content,
            num: num.div_exact(&g).expect("gcd divides numerator"),
            den: den.div_exact(&g).expect("gcd divides denominator"),
        }
    }

    pub fn content(&self) -> &BigRational {
        &self.content
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.content.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, when this is an element of Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.num.is_one() && self.den.is_one()).then_some(&self.content)
    }

    /// Numerator scaled by the content, as a polynomial over Q split into an
    /// integer polynomial and a positive integer divisor.
    pub fn numer_over_z(&self) -> (Poly, BigInt) {
        (
            self.num.scale(self.content.numer()),
            self.content.denom().clone(),
        )
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()))
    }

    pub fn scale(&self, q: &BigRational) -> RatFunc {
        if q.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            content: &self.content * q,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// Value at `t = x`, or `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.content * self.num.eval(x) / d)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        if self.is_zero() {
            return if e == 0 { RatFunc::one() } else { RatFunc::zero() };
        }
        // coprime primitive parts stay coprime and primitive under powers
        RatFunc {
            content: num_traits::pow(self.content.clone(), e as usize),
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Square root in Q(t), choosing the root whose content is positive.
    pub fn sqrt(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return Some(RatFunc::zero());
        }
        let q = crate::numbers::is_rational_square(&self.content)?;
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(RatFunc {
            content: q,
            num: n,
            den: d,
        })
    }

    pub(crate) fn size(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.num.bit_size()
            + self.den.bit_size()
            + (self.content.numer().bits() + self.content.denom().bits()) as usize
    }
}

/// Splits a nonzero polynomial into (signed content, primitive part).
fn split_content(p: &Poly) -> (BigInt, Poly) {
    let pp = p.primitive_part();
    let mut g = p.content();
    if p.lc().unwrap().is_negative() {
        g = -g;
    }
    (g, pp)
}

/// Returns `(L/qa, L/qb)` for `L = lcm(qa, qb)`.
fn cofactors(qa: &BigInt, qb: &BigInt) -> (BigInt, BigInt) {
    if qa == qb {
        return (BigInt::one(), BigInt::one());
    }
    let g = qa.gcd(qb);
    (qb / &g, qa / g)
}

impl RatFunc {
    fn add_signed(&self, o: &RatFunc, negate: bool) -> RatFunc {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { Ring::neg(o) } else { o.clone() };
        }
        let ob = if negate {
            -o.content.clone()
        } else {
            o.content.clone()
        };
        if self.num == o.num && self.den == o.den {
            let c = &self.content + ob;
            if c.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc {
                content: c,
                num: self.num.clone(),
                den: self.den.clone(),
            };
        }
        // put both contents over their common denominator L
        let (fa, fb) = cofactors(self.content.denom(), ob.denom());
        let l = self.content.denom() * &fa;
        let ka = self.content.numer() * fa;
        let kb = ob.numer() * fb;
        if self.den == o.den {
            let n = self.num.scale(&ka).add(&o.num.scale(&kb));
            return RatFunc::from_parts(
                BigRational::new(BigInt::one(), l),
                n,
                self.den.clone(),
            );
        }
        let g = Poly::gcd_primitive(&self.den, &o.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), o.den.clone())
        } else {
            (
                self.den.div_exact(&g).unwrap(),
                o.den.div_exact(&g).unwrap(),
            )
        };
        let n = self.num.mul(&db).scale(&ka).add(&o.num.mul(&da).scale(&kb));
        let den = self.den.mul(&db);
        RatFunc::from_parts(BigRational::new(BigInt::one(), l), n, den)
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero()
    }
    fn one_like(&self) -> Self {
        RatFunc::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_signed(rhs, false)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add_signed(rhs, true)
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let content = &self.content * &rhs.content;
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                content,
                num: self.num.mul(&rhs.num),
                den: Poly::one(),
            };
        }
        // cross-cancel; the products of primitive coprime pieces need no
        // further normalisation
        let g1 = Poly::gcd_primitive(&self.num, &rhs.den);
        let g2 = Poly::gcd_primitive(&rhs.num, &self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.div_exact(&g1).unwrap(),
                rhs.den.div_exact(&g1).unwrap(),
            )
        };
        let (n2, d1) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.div_exact(&g2).unwrap(),
                self.den.div_exact(&g2).unwrap(),
            )
        };
        RatFunc {
            content,
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
    }
    fn neg(&self) -> Self {
        RatFunc {
            content: -&self.content,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }
    fn from_int_like(&self, n: i64) -> Self {
        RatFunc::from_int(n)
    }
    fn is_one_elem(&self) -> bool {
        self.content.is_one() && self.num.is_one() && self.den.is_one()
    }
    fn size_hint(&self) -> usize {
        self.size()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc {
            content: self.content.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }
}

impl ExactDiv for RatFunc {
    fn div_exact(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero in Q(t)"))
    }
}

impl Involution for RatFunc {
    const KIND: InvolutionKind = InvolutionKind::Trivial;
    fn conj(&self) -> Self {
        self.clone()
    }
}

crate::impl_ring_ops!(RatFunc);

fn fmt_poly_over_q(f: &mut fmt::Formatter<'_>, p: &Poly, q: &BigRational) -> fmt::Result {
    // q·p written with rational coefficients
    let mut first = true;
    for (e, k) in p.coeffs().iter().enumerate().rev() {
        if k.is_zero() {
            continue;
        }
        let c = q * BigRational::from_integer(k.clone());
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match e {
            0 => write!(f, "{a}")?,
            _ => {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{e}")?;
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.den.is_one() {
            return fmt_poly_over_q(f, &self.num, &self.content);
        }
        write!(f, "(")?;
        fmt_poly_over_q(f, &self.num, &self.content)?;
        write!(f, ")/({})", self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
