//! Solutions of `t² − d·y² = 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::PellError;
use crate::numbers::{check_radicand, quad_from_bigints, QuadElem};
use crate::ring::{Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    pub d: i64,
    pub n: u32,
    pub t: BigInt,
    pub y: BigInt,
}

impl PellSolution {
    pub fn satisfies_identity(&self) -> bool {
        &self.t * &self.t - BigInt::from(self.d) * &self.y * &self.y == BigInt::one()
    }

    /// `t + y√d` as an element of Q(√d).
    pub fn as_quad(&self) -> QuadElem {
        quad_from_bigints(&self.t, &self.y, self.d)
    }
}

fn check_d(d: i64) -> Result<(), PellError> {
    check_radicand(d).map(|_| ()).map_err(|_| PellError::InvalidD(d))
}

/// Minimal positive solution from the continued fraction of √d.
pub fn pell_fundamental(d: i64) -> Result<PellSolution, PellError> {
    check_d(d)?;
    let a0 = (d as f64).sqrt() as i64;
    let a0 = (a0 - 1..=a0 + 1).filter(|a| a * a <= d).max().expect("nonempty");
    let (mut m, mut q, mut a) = (0i64, 1i64, a0);
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(a0));
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    let db = BigInt::from(d);
    loop {
        if &h * &h - &db * &k * &k == BigInt::one() {
            let sol = PellSolution { d, n: 1, t: h, y: k };
            debug_assert!(sol.satisfies_identity());
            return Ok(sol);
        }
        m = q * a - m;
        q = (d - m * m) / q;
        a = (a0 + m) / q;
        let h_next = BigInt::from(a) * &h + &h_prev;
        let k_next = BigInt::from(a) * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// The unit `t₁ + y₁√d` generating all positive solutions.
pub fn pell_unit(d: i64) -> Result<QuadElem, PellError> {
    Ok(pell_fundamental(d)?.as_quad())
}

/// `(t₁ + y₁√d)ⁿ` by binary powering, cross-checked against the
/// recurrence `t_{k+1} = 2t₁t_k − t_{k−1}`.
pub fn pell_solution(d: i64, n: u32) -> Result<PellSolution, PellError> {
    if n == 0 {
        return Err(PellError::InvalidIndex);
    }
    let f = pell_fundamental(d)?;
    let db = BigInt::from(d);
    let mul = |a: &BigInt, b: &BigInt, c: &BigInt, e: &BigInt| (a * c + &db * b * e, a * e + b * c);
    let (mut rt, mut ry) = (BigInt::one(), BigInt::zero());
    let (mut bt, mut by) = (f.t.clone(), f.y.clone());
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            (rt, ry) = mul(&rt, &ry, &bt, &by);
        }
        (bt, by) = mul(&bt, &by, &bt, &by);
        e >>= 1;
    }
    let sol = PellSolution { d, n, t: rt, y: ry };
    let seq = pell_sequence(d, n)?;
    let last = seq.last().expect("n ≥ 1");
    if *last != sol || !sol.satisfies_identity() {
        return Err(PellError::CrossCheckFailed(n));
    }
    Ok(sol)
}

/// Solutions `1..=n` by the recurrence `t_{k+1} = 2t₁t_k − t_{k−1}`
/// (same for `y`), starting from `(t₀, y₀) = (1, 0)`.
pub fn pell_sequence(d: i64, n: u32) -> Result<Vec<PellSolution>, PellError> {
    let f = pell_fundamental(d)?;
    let two_t1 = BigInt::from(2) * &f.t;
    let mut out = Vec::with_capacity(n as usize);
    let (mut t_prev, mut y_prev) = (BigInt::one(), BigInt::zero());
    let (mut t, mut y) = (f.t.clone(), f.y.clone());
    for k in 1..=n {
        out.push(PellSolution {
            d,
            n: k,
            t: t.clone(),
            y: y.clone(),
        });
        let t_next = &two_t1 * &t - &t_prev;
        let y_next = &two_t1 * &y - &y_prev;
        t_prev = std::mem::replace(&mut t, t_next);
        y_prev = std::mem::replace(&mut y, y_next);
    }
    Ok(out)
}

/// `S_n = 2t_n = uⁿ + u⁻ⁿ` for `n = 0..=n`, via `S_{k+1} = 2t₁S_k − S_{k−1}`.
pub fn lucas_terms(d: i64, n: u32) -> Result<Vec<BigInt>, PellError> {
    let f = pell_fundamental(d)?;
    let two_t1 = BigInt::from(2) * &f.t;
    let mut out = vec![BigInt::from(2)];
    if n >= 1 {
        out.push(two_t1.clone());
    }
    for k in 2..=n as usize {
        let next = &two_t1 * &out[k - 1] - &out[k - 2];
        out.push(next);
    }
    Ok(out)
}

/// Outcome of checking that `(u, 1/u)` is a Lucas pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LucasPairCheck {
    pub d: i64,
    /// `u + 1/u`, expected `2t₁`.
    pub sum: BigInt,
    /// `u · 1/u`, expected 1.
    pub product: BigInt,
    pub holds: bool,
}

/// Verifies in Q(√d) that `u + u⁻¹ = 2t₁` and `u·u⁻¹ = 1` are nonzero coprime
/// integers; `u/u⁻¹ = u²` is not a root of unity since `u > 1`.
pub fn lucas_pair_check(d: i64) -> Result<LucasPairCheck, PellError> {
    let f = pell_fundamental(d)?;
    let u = f.as_quad();
    let uinv = u.inv().ok_or(PellError::InvalidD(d))?;
    let sum = u.add(&uinv);
    let prod = u.mul(&uinv);
    let as_int = |q: &QuadElem| {
        (q.is_rational() && q.a().is_integer()).then(|| q.a().to_integer())
    };
    let (Some(s), Some(p)) = (as_int(&sum), as_int(&prod)) else {
        return Ok(LucasPairCheck {
            d,
            sum: BigInt::zero(),
            product: BigInt::zero(),
            holds: false,
        });
    };
    use num_integer::Integer;
    let holds = s == BigInt::from(2) * &f.t && p.is_one() && !s.is_zero() && s.gcd(&p).is_one();
    Ok(LucasPairCheck {
        d,
        sum: s,
        product: p,
        holds,
    })
}
