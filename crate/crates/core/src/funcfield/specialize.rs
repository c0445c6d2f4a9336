use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::biquad::BiquadElem;
use super::tower::TowerElem;
use super::FuncFieldError;
use crate::numbers::{check_radicand, GaussianInt, QuadElem};
use crate::ring::Ring;

fn ratq(a: BigRational, d: i64) -> QuadElem {
    QuadElem::new_unchecked(a, BigRational::zero(), d)
}

/// Evaluation data `t ↦ t0`, `s ↦ s_value`, `w ↦ w_value` into Q(√d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    t0: BigRational,
    d: i64,
    s_value: QuadElem,
    w_value: Option<QuadElem>,
}

impl Specialization {
    pub fn new(
        t0: BigRational,
        d: i64,
        s_value: QuadElem,
        w_value: Option<QuadElem>,
    ) -> Result<Self, FuncFieldError> {
        check_radicand(d).map_err(|_| FuncFieldError::InvalidRadicand(d))?;
        let one = BigRational::one();
        let t2 = &t0 * &t0;
        let s_target = ratq(&t2 - &one, d);
        if s_value.d() != d || s_value.mul(&s_value) != s_target {
            return Err(FuncFieldError::InvalidSpecialization(format!(
                "s = {s_value} does not square to t0² − 1 at t0 = {t0}"
            )));
        }
        if let Some(w) = &w_value {
            let w_target = ratq(&t2 + BigRational::from_integer(2.into()), d);
            if w.d() != d || w.mul(w) != w_target {
                return Err(FuncFieldError::InvalidSpecialization(format!(
                    "w = {w} does not square to t0² + 2 at t0 = {t0}"
                )));
            }
        }
        Ok(Specialization {
            t0,
            d,
            s_value,
            w_value,
        })
    }

    /// The point `t = t_n`, `s = y_n·√d` of a Pell solution `t² − d·y² = 1`.
    pub fn pell(d: i64, t: &BigInt, y: &BigInt) -> Result<Self, FuncFieldError> {
        let s = QuadElem::new(BigRational::zero(), BigRational::from_integer(y.clone()), d)
            .map_err(|_| FuncFieldError::InvalidRadicand(d))?;
        Specialization::new(BigRational::from_integer(t.clone()), d, s, None)
    }

    pub fn t0(&self) -> &BigRational {
        &self.t0
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn s_value(&self) -> &QuadElem {
        &self.s_value
    }

    pub fn w_value(&self) -> Option<&QuadElem> {
        self.w_value.as_ref()
    }

    pub fn apply(&self, x: &TowerElem) -> Result<QuadElem, FuncFieldError> {
        let d = self.d;
        let mut acc = ratq(BigRational::zero(), d);
        for (i, c) in x.components().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.eval(&self.t0).ok_or(FuncFieldError::PoleAtSpecialization)?;
            let basis = match i {
                0 => ratq(BigRational::one(), d),
                1 => self.s_value.clone(),
                _ => {
                    let w = self.w_value.as_ref().ok_or(FuncFieldError::MissingRadicalValue)?;
                    if i == 2 {
                        w.clone()
                    } else {
                        self.s_value.mul(w)
                    }
                }
            };
            acc = acc.add(&basis.mul(&ratq(v, d)));
        }
        Ok(acc)
    }
}

/// Evaluates at `t = 0`, where `s² = −1`, sending `s ↦ i`.
///
/// Only elements of Z[t, s] specialise into Z[i].
pub fn specialize_gaussian_at_zero(x: &TowerElem) -> Result<GaussianInt, FuncFieldError> {
    if !x.in_qts() {
        return Err(FuncFieldError::MissingRadicalValue);
    }
    let zero = BigRational::zero();
    let mut parts = [BigInt::zero(), BigInt::zero()];
    for (k, c) in [x.c00(), x.c10()].into_iter().enumerate() {
        let v = c.eval(&zero).ok_or(FuncFieldError::PoleAtSpecialization)?;
        if !v.is_integer() {
            return Err(FuncFieldError::NotIntegral(v.to_string()));
        }
        parts[k] = v.to_integer();
    }
    let [re, im] = parts;
    Ok(GaussianInt { re, im })
}

/// Evaluates at a rational `t0` into Q(√(t0²−1), √(t0²+2)).
pub fn specialize_biquad(x: &TowerElem, t0: &BigRational) -> Result<BiquadElem, FuncFieldError> {
    let ctx = biquad_context(t0)?;
    let mut c: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
    for (slot, comp) in c.iter_mut().zip(x.components()) {
        *slot = comp.eval(t0).ok_or(FuncFieldError::PoleAtSpecialization)?;
    }
    Ok(ctx.with_coeffs(c))
}

/// The zero element of the biquadratic field attached to `t0`.
pub fn biquad_context(t0: &BigRational) -> Result<BiquadElem, FuncFieldError> {
    let t2 = t0 * t0;
    BiquadElem::context(
        &t2 - BigRational::one(),
        &t2 + BigRational::from_integer(2.into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{Poly, RatFunc};
    use crate::ring::Field;
    use crate::numbers::rat;
    use proptest::prelude::*;

    fn pell7() -> Specialization {
        Specialization::pell(3, &BigInt::from(7), &BigInt::from(4)).unwrap()
    }

    #[test]
    fn s_at_pell_point() {
        let sp = pell7();
        let v = sp.apply(&TowerElem::s()).unwrap();
        assert_eq!(v, QuadElem::from_ints(0, 4, 3).unwrap());
        let s2 = TowerElem::s().mul(&TowerElem::s());
        assert_eq!(sp.apply(&s2).unwrap(), QuadElem::from_ints(48, 0, 3).unwrap());
        assert_eq!(v.mul(&v), QuadElem::from_ints(48, 0, 3).unwrap());
    }

    #[test]
    fn pole_and_missing_radical() {
        let sp = pell7();
        let x = TowerElem::from_base(RatFunc::from_poly(Poly::from_i64s(&[-7, 1])).inv().unwrap());
        assert_eq!(sp.apply(&x), Err(FuncFieldError::PoleAtSpecialization));
        assert_eq!(sp.apply(&TowerElem::w()), Err(FuncFieldError::MissingRadicalValue));
    }

    #[test]
    fn rejects_bad_data() {
        assert!(Specialization::pell(3, &BigInt::from(7), &BigInt::from(3)).is_err());
        assert!(Specialization::pell(4, &BigInt::from(3), &BigInt::from(1)).is_err());
    }

    #[test]
    fn at_one_with_w() {
        // t = 1: s = 0, w = √3
        let sp = Specialization::new(
            rat(1, 1),
            3,
            QuadElem::from_ints(0, 0, 3).unwrap(),
            Some(QuadElem::from_ints(0, 1, 3).unwrap()),
        )
        .unwrap();
        let x = TowerElem::w().add(&TowerElem::s());
        assert_eq!(sp.apply(&x).unwrap(), QuadElem::from_ints(0, 1, 3).unwrap());
    }

    #[test]
    fn gaussian_at_zero() {
        let x = TowerElem::t().sub(&TowerElem::s()).add(&TowerElem::one());
        assert_eq!(specialize_gaussian_at_zero(&x).unwrap(), GaussianInt::new(1, -1));
        let y = TowerElem::s().mul(&TowerElem::s());
        assert_eq!(specialize_gaussian_at_zero(&y).unwrap(), GaussianInt::new(-1, 0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn specialization_is_ring_hom(
            x in crate::funcfield::tower::tests::arb_tower(),
            y in crate::funcfield::tower::tests::arb_tower(),
        ) {
            let sp = pell7();
            let x = TowerElem::new(x.c00().clone(), x.c10().clone(), RatFunc::zero(), RatFunc::zero());
            let y = TowerElem::new(y.c00().clone(), y.c10().clone(), RatFunc::zero(), RatFunc::zero());
            let (vx, vy) = (sp.apply(&x).unwrap(), sp.apply(&y).unwrap());
            prop_assert_eq!(sp.apply(&x.mul(&y)).unwrap(), vx.mul(&vy));
            prop_assert_eq!(sp.apply(&x.add(&y)).unwrap(), vx.add(&vy));
        }

        #[test]
        fn biquad_specialization_is_ring_hom(
            x in crate::funcfield::tower::tests::arb_tower(),
            y in crate::funcfield::tower::tests::arb_tower(),
        ) {
            let t0 = rat(2, 1);
            let vx = specialize_biquad(&x, &t0).unwrap();
            let vy = specialize_biquad(&y, &t0).unwrap();
            prop_assert_eq!(specialize_biquad(&x.mul(&y), &t0).unwrap(), vx.mul(&vy));
        }
    }
}
