//! Lower bounds for translation lengths and congruence systoles, in f64
//! with a running error bound. Nothing here feeds back into exact code.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pell::{select_prime_sequence, PellError, PrimeRule, SkippedIndex};

/// The matrix size of the lattices in question.
pub const DEFAULT_M: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SystoleError {
    #[error("|tr| = {0} < 1 violates the trace-length hypothesis")]
    HypothesisViolated(f64),
    #[error("matrix size m = {0} must be at least 2")]
    InvalidDimension(u32),
    #[error("prime {0} does not fit in 64 bits")]
    PrimeTooLarge(String),
    #[error(transparent)]
    Pell(#[from] PellError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundInput {
    Trace { trace_abs: f64, m: u32 },
    Level { p: u64, m: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthBound {
    pub value: f64,
    /// Bound on `|value − exact|` from rounding.
    pub abs_error: f64,
    pub input: BoundInput,
}

const EPS: f64 = f64::EPSILON;

/// `arccosh(x) = ln(x + √((x−1)(x+1)))` for `x ≥ 1`, with an absolute error
/// bound that accounts for the conditioning `1/√(x²−1)` near 1 and assumes
/// `x` itself carries relative error `x_rel_err`.
fn arccosh_with_error(x: f64, x_rel_err: f64) -> (f64, f64) {
    debug_assert!(x >= 1.0);
    if x == 1.0 {
        // the exact value is 0; a perturbation δ of x moves it by ≈ √(2δ)
        return (0.0, (2.0 * x_rel_err).sqrt());
    }
    let r = ((x - 1.0) * (x + 1.0)).sqrt();
    let v = (x + r).ln();
    let cond = x / r;
    let err = cond * (x_rel_err + 4.0 * EPS) + 2.0 * EPS * v.abs();
    (v, err)
}

/// `√2·arccosh(max{1, |tr γ|/m})`.
pub fn trace_length_lower_bound(trace_abs: f64, m: u32) -> Result<LengthBound, SystoleError> {
    if !(trace_abs >= 1.0) {
        return Err(SystoleError::HypothesisViolated(trace_abs));
    }
    if m < 2 {
        return Err(SystoleError::InvalidDimension(m));
    }
    let x = (trace_abs / m as f64).max(1.0);
    let (a, e) = arccosh_with_error(x, EPS);
    let s = std::f64::consts::SQRT_2;
    Ok(LengthBound {
        value: s * a,
        abs_error: s * e + 2.0 * EPS * s * a,
        input: BoundInput::Trace { trace_abs, m },
    })
}

/// `(2√2/m)·arccosh(p/m − 1)` when `p ≥ 2m`, otherwise 0.
///
/// This is the supremum over admissible `M` (with `M ≥ 2`, `p > mM`) of the
/// bound `(2√2/m)·arccosh(M − 1)`.
pub fn congruence_systole_lower_bound(p: u64, m: u32) -> Result<LengthBound, SystoleError> {
    if m < 2 {
        return Err(SystoleError::InvalidDimension(m));
    }
    let input = BoundInput::Level { p, m };
    if p < 2 * m as u64 {
        return Ok(LengthBound {
            value: 0.0,
            abs_error: 0.0,
            input,
        });
    }
    // p/m − 1 = (p − m)/m; p − m is exact in u64, and rounds once to f64
    let x = (p - m as u64) as f64 / m as f64;
    let (a, e) = arccosh_with_error(x, 3.0 * EPS);
    let k = 2.0 * std::f64::consts::SQRT_2 / m as f64;
    Ok(LengthBound {
        value: k * a,
        abs_error: k * e + 2.0 * EPS * k * a,
        input,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystoleRow {
    pub n: u32,
    pub t: BigInt,
    pub y: BigInt,
    pub p: BigInt,
    pub bound: LengthBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystoleTable {
    pub d: i64,
    pub m: u32,
    pub rule: PrimeRule,
    pub rows: Vec<SystoleRow>,
    pub skipped: Vec<SkippedIndex>,
}

impl SystoleTable {
    /// Bounds strictly increase along rows whose prime exceeds `2m`.
    pub fn increasing_beyond_threshold(&self) -> bool {
        let vals: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.p > BigInt::from(2 * self.m))
            .map(|r| r.bound.value)
            .collect();
        vals.windows(2).all(|w| w[0] < w[1])
    }
}

/// Congruence systole bounds along the selected prime sequence.
pub fn systole_report(d: i64, depth: u32, rule: PrimeRule) -> Result<SystoleTable, SystoleError> {
    let sel = select_prime_sequence(d, depth, rule)?;
    let mut rows = Vec::with_capacity(sel.rows.len());
    for r in sel.rows {
        let p = r.p.to_u64().ok_or_else(|| SystoleError::PrimeTooLarge(r.p.to_string()))?;
        rows.push(SystoleRow {
            n: r.n,
            t: r.t,
            y: r.y,
            bound: congruence_systole_lower_bound(p, DEFAULT_M)?,
            p: r.p,
        });
    }
    Ok(SystoleTable {
        d,
        m: DEFAULT_M,
        rule,
        rows,
        skipped: sel.skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // 100-digit evaluations, truncated to 40 digits
    const SQRT2_ACOSH2: f64 = 1.862459718905424354524676755760698216776;
    const LEVEL_97: f64 = 1.096127203212397550607170967759333491351;
    const LEVEL_1E9: f64 = 6.836651826255460063185841515989563103598;

    #[test]
    fn trace_bound_examples() {
        assert_eq!(trace_length_lower_bound(8.0, 8).unwrap().value, 0.0);
        let b = trace_length_lower_bound(16.0, 8).unwrap();
        assert!((b.value - SQRT2_ACOSH2).abs() < 1e-12 * SQRT2_ACOSH2);
        assert!((b.value - SQRT2_ACOSH2).abs() <= b.abs_error);
        assert_eq!(
            trace_length_lower_bound(0.5, 8),
            Err(SystoleError::HypothesisViolated(0.5))
        );
        assert!(trace_length_lower_bound(f64::NAN, 8).is_err());
    }

    #[test]
    fn congruence_bound_examples() {
        let b = congruence_systole_lower_bound(97, 8).unwrap();
        assert!((b.value - LEVEL_97).abs() < 1e-12);
        assert_eq!(congruence_systole_lower_bound(13, 8).unwrap().value, 0.0);
        assert!(
            congruence_systole_lower_bound(1103, 8).unwrap().value
                > congruence_systole_lower_bound(107, 8).unwrap().value
        );
        let b = congruence_systole_lower_bound(1_000_000_000, 8).unwrap();
        assert!((b.value - LEVEL_1E9).abs() < 1e-12 * LEVEL_1E9);
    }

    #[test]
    fn report_tables() {
        let t = systole_report(3, 5, PrimeRule::LargestPrimitive).unwrap();
        let ps: Vec<u64> = t.rows.iter().map(|r| r.p.to_u64().unwrap()).collect();
        assert_eq!(ps, [7, 13, 97, 181]);
        assert!(t.increasing_beyond_threshold());
        let t = systole_report(5, 5, PrimeRule::PaperTable).unwrap();
        let ps: Vec<u64> = t.rows.iter().map(|r| r.p.to_u64().unwrap()).collect();
        assert_eq!(ps, [3, 7, 107, 1103, 2521]);
        assert!(t.increasing_beyond_threshold());
        assert!(systole_report(3, 0, PrimeRule::LargestPrimitive).unwrap().rows.is_empty());
    }

    proptest! {
        #[test]
        fn level_bound_monotone(p in 2u64..1u64 << 40, q in 2u64..1u64 << 40, m in 2u32..20) {
            let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
            let a = congruence_systole_lower_bound(lo, m).unwrap().value;
            let b = congruence_systole_lower_bound(hi, m).unwrap().value;
            prop_assert!(a <= b);
            prop_assert!(a >= 0.0);
        }

        #[test]
        fn trace_bound_monotone(x in 1.0f64..1e12, y in 1.0f64..1e12, m in 2u32..20) {
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            prop_assert!(trace_length_lower_bound(lo, m).unwrap().value <= trace_length_lower_bound(hi, m).unwrap().value);
        }
    }
}
