//! Primitive prime divisors of `S_n = 2t_n` and the choice of one prime per
//! level.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::factor::factorize;
use super::solve::{lucas_pair_check, lucas_terms, pell_sequence, LucasPairCheck};
use super::PellError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivePrimeRecord {
    pub d: i64,
    pub n: u32,
    pub s_n: BigInt,
    pub factorization: Vec<(BigInt, u32)>,
    pub primitive_primes: BTreeSet<BigInt>,
    pub selected: Option<BigInt>,
}

/// Splits `n` into pieces along gcds with `others`, so that each piece is
/// cheaper to factor. The product of the pieces is `n`.
fn coprime_pieces(n: &BigInt, others: &[BigInt]) -> Vec<BigInt> {
    let mut pieces = vec![n.clone()];
    for m in others {
        if m.is_zero() {
            continue;
        }
        let mut next = Vec::with_capacity(pieces.len());
        for p in pieces {
            let g = p.gcd(m);
            if g.is_one() || g == p {
                next.push(p);
            } else {
                let q = &p / &g;
                next.push(g);
                next.push(q);
            }
        }
        pieces = next;
    }
    pieces
}

fn factor_with_hints(n: &BigInt, hints: &[BigInt]) -> Vec<(BigInt, u32)> {
    let mut all: Vec<(BigInt, u32)> = Vec::new();
    for piece in coprime_pieces(n, hints) {
        for (p, e) in factorize(&piece) {
            match all.iter_mut().find(|(q, _)| *q == p) {
                Some((_, f)) => *f += e,
                None => all.push((p, e)),
            }
        }
    }
    all.sort();
    all
}

fn record_from_terms(d: i64, n: u32, terms: &[BigInt]) -> PrimitivePrimeRecord {
    let s_n = terms[n as usize].clone();
    let earlier = &terms[1..n as usize];
    let factorization = factor_with_hints(&s_n, earlier);
    let primitive_primes = factorization
        .iter()
        .map(|(p, _)| p.clone())
        .filter(|p| earlier.iter().all(|s| !(s % p).is_zero()))
        .collect();
    PrimitivePrimeRecord {
        d,
        n,
        s_n,
        factorization,
        primitive_primes,
        selected: None,
    }
}

/// Primes dividing `S_n` and none of `S_1, …, S_{n−1}`.
pub fn primitive_prime_divisors(d: i64, n: u32) -> Result<PrimitivePrimeRecord, PellError> {
    if n == 0 {
        return Err(PellError::InvalidIndex);
    }
    if !lucas_pair_check(d)?.holds {
        return Err(PellError::NotALucasPair(d));
    }
    let terms = lucas_terms(d, n)?;
    Ok(record_from_terms(d, n, &terms))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeRule {
    SmallestOddPrimitive,
    #[default]
    LargestPrimitive,
    /// The primes printed in the worked examples where available, otherwise
    /// the largest primitive prime.
    PaperTable,
}

impl PrimeRule {
    pub const ALL: [PrimeRule; 3] = [
        PrimeRule::SmallestOddPrimitive,
        PrimeRule::LargestPrimitive,
        PrimeRule::PaperTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrimeRule::SmallestOddPrimitive => "smallest-odd-primitive",
            PrimeRule::LargestPrimitive => "largest-primitive",
            PrimeRule::PaperTable => "paper-table",
        }
    }
}

impl fmt::Display for PrimeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrimeRule {
    type Err = PellError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PrimeRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| PellError::UnknownRule(s.to_string()))
    }
}

/// `(n, t_n, y_n, p_n)` rows of the worked examples.
pub fn paper_table(d: i64) -> Option<&'static [(u32, u64, u64, u64)]> {
    const D3: [(u32, u64, u64, u64); 5] = [(1, 2, 1, 2), (2, 7, 4, 7), (3, 26, 15, 13), (4, 97, 56, 97), (5, 362, 209, 181)];
    const D5: [(u32, u64, u64, u64); 5] = [
        (1, 9, 4, 3),
        (2, 161, 72, 7),
        (3, 2889, 1292, 107),
        (4, 51841, 23184, 1103),
        (5, 930249, 416020, 2521),
    ];
    match d {
        3 => Some(&D3),
        5 => Some(&D5),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectedPrime {
    pub n: u32,
    pub t: BigInt,
    pub y: BigInt,
    pub p: BigInt,
    pub primitive_primes: BTreeSet<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    /// Every primitive prime of `S_n` is 2.
    NoOddPrimitive,
    /// The table prime for this row is not an odd primitive divisor.
    TablePrimeUnusable(BigInt),
    /// The candidate does not exceed the previously emitted prime.
    NotIncreasing(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedIndex {
    pub n: u32,
    pub reason: SkipReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSelection {
    pub d: i64,
    pub rule: PrimeRule,
    pub lucas_pair: LucasPairCheck,
    pub records: Vec<PrimitivePrimeRecord>,
    pub rows: Vec<SelectedPrime>,
    pub skipped: Vec<SkippedIndex>,
}

/// One odd primitive prime per level, forming a strictly increasing sequence.
pub fn select_prime_sequence(d: i64, depth: u32, rule: PrimeRule) -> Result<PrimeSelection, PellError> {
    let lucas_pair = lucas_pair_check(d)?;
    if !lucas_pair.holds {
        return Err(PellError::NotALucasPair(d));
    }
    let terms = lucas_terms(d, depth)?;
    let sols = pell_sequence(d, depth)?;
    let mut records = Vec::new();
    let mut rows: Vec<SelectedPrime> = Vec::new();
    let mut skipped = Vec::new();
    for sol in sols {
        let n = sol.n;
        let mut rec = record_from_terms(d, n, &terms);
        let odd: Vec<&BigInt> = rec.primitive_primes.iter().filter(|p| p.is_odd()).collect();
        let table_p = paper_table(d)
            .and_then(|t| t.iter().find(|r| r.0 == n))
            .map(|r| BigInt::from(r.3));
        let candidate = match (rule, table_p) {
            (PrimeRule::PaperTable, Some(tp)) => {
                if tp.is_odd() && rec.primitive_primes.contains(&tp) {
                    Ok(tp)
                } else {
                    Err(SkipReason::TablePrimeUnusable(tp))
                }
            }
            (PrimeRule::SmallestOddPrimitive, _) => odd.first().map(|p| (*p).clone()).ok_or(SkipReason::NoOddPrimitive),
            _ => odd.last().map(|p| (*p).clone()).ok_or(SkipReason::NoOddPrimitive),
        };
        let candidate = candidate.and_then(|p| match rows.last() {
            Some(prev) if p <= prev.p => Err(SkipReason::NotIncreasing(p)),
            _ => Ok(p),
        });
        match candidate {
            Ok(p) => {
                debug_assert!((&sol.t % &p).is_zero());
                rec.selected = Some(p.clone());
                rows.push(SelectedPrime {
                    n,
                    t: sol.t,
                    y: sol.y,
                    p,
                    primitive_primes: rec.primitive_primes.clone(),
                });
            }
            Err(reason) => skipped.push(SkippedIndex { n, reason }),
        }
        records.push(rec);
    }
    Ok(PrimeSelection {
        d,
        rule,
        lucas_pair,
        records,
        rows,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> BTreeSet<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primitive_sets() {
        assert_eq!(primitive_prime_divisors(3, 1).unwrap().primitive_primes, set(&[2]));
        assert!(primitive_prime_divisors(3, 4).unwrap().primitive_primes.contains(&BigInt::from(97)));
        assert_eq!(primitive_prime_divisors(5, 2).unwrap().primitive_primes, set(&[7, 23]));
        assert_eq!(primitive_prime_divisors(5, 3).unwrap().primitive_primes, set(&[107]));
    }

    #[test]
    fn selection_rules() {
        let s = select_prime_sequence(3, 5, PrimeRule::LargestPrimitive).unwrap();
        let ps: Vec<u64> = s.rows.iter().map(|r| (&r.p).try_into().unwrap()).collect();
        assert_eq!(ps, [7, 13, 97, 181]);
        assert_eq!(s.skipped, vec![SkippedIndex { n: 1, reason: SkipReason::NoOddPrimitive }]);

        let s = select_prime_sequence(5, 3, PrimeRule::SmallestOddPrimitive).unwrap();
        let ps: Vec<u64> = s.rows.iter().map(|r| (&r.p).try_into().unwrap()).collect();
        assert_eq!(ps, [3, 7, 107]);

        let s = select_prime_sequence(5, 5, PrimeRule::PaperTable).unwrap();
        let ps: Vec<u64> = s.rows.iter().map(|r| (&r.p).try_into().unwrap()).collect();
        assert_eq!(ps, [3, 7, 107, 1103, 2521]);

        assert!(select_prime_sequence(7, 0, PrimeRule::LargestPrimitive).unwrap().rows.is_empty());
    }

    #[test]
    fn rule_names_roundtrip() {
        for r in PrimeRule::ALL {
            assert_eq!(r.name().parse::<PrimeRule>().unwrap(), r);
        }
        assert!("biggest".parse::<PrimeRule>().is_err());
    }

    #[test]
    fn selection_invariants_hold_deeper() {
        for d in [2, 3, 5, 6, 7] {
            let s = select_prime_sequence(d, 14, PrimeRule::LargestPrimitive).unwrap();
            let terms = lucas_terms(d, 14).unwrap();
            for w in s.rows.windows(2) {
                assert!(w[0].p < w[1].p);
            }
            for r in &s.rows {
                assert!(r.p.is_odd());
                assert!((&r.t % &r.p).is_zero());
                for m in 1..r.n as usize {
                    assert!(!(&terms[m] % &r.p).is_zero());
                }
            }
            for rec in &s.records {
                let prod = rec.factorization.iter().fold(BigInt::one(), |a, (p, e)| a * p.pow(*e));
                assert_eq!(prod, rec.s_n);
            }
        }
    }
}
