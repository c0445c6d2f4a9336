//! Exact arithmetic in Q, Q(√d), its ring of integers O_d, Z[i], and the
//! residue rings O_d/(p) and Z[i]/(p).

mod gaussian;
mod od;
mod quad;
mod rational;
mod residue;

pub use gaussian::GaussianInt;
pub use od::OdElem;
pub use quad::QuadElem;
pub(crate) use quad::quad_from_bigints;
pub use rational::{is_rational_square, isqrt_exact, rat, rat_int};
pub use residue::{gaussian_hom_f, reduce_mod_p, GaussianHom, ResidueElem};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberError {
    #[error("d = {0} must be a square-free integer >= 2")]
    InvalidRadicand(i64),
    #[error("({p} + {q}√{d})/2 violates the O_d parity condition")]
    ParityViolation { p: String, q: String, d: i64 },
    #[error("element is not integral in O_{0}")]
    NotIntegral(i64),
    #[error("residue arithmetic rejects p = 2")]
    EvenPrime,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("i ↦ y√d is not a homomorphism mod {p}: d·y² ≢ −1")]
    NotAHomomorphism { p: u64 },
}

/// True when `d` has no repeated prime factor. Zero is not square-free.
pub fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d.unsigned_abs();
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f * f) {
            return false;
        }
        if n.is_multiple_of(f) {
            n /= f;
        }
        f += 1;
    }
    true
}

/// Validates the radicand of a real quadratic field.
pub fn check_radicand(d: i64) -> Result<i64, NumberError> {
    if d >= 2 && is_squarefree(d) {
        Ok(d)
    } else {
        Err(NumberError::InvalidRadicand(d))
    }
}

/// Deterministic primality for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Validates an odd prime modulus for residue arithmetic.
pub fn check_odd_prime(p: u64) -> Result<u64, NumberError> {
    if p == 2 {
        return Err(NumberError::EvenPrime);
    }
    if !is_prime_u64(p) {
        return Err(NumberError::NotPrime(p));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_small() {
        let sf: Vec<i64> = (1..=20).filter(|&d| is_squarefree(d)).collect();
        assert_eq!(sf, vec![1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]);
        assert!(is_squarefree(-1));
        assert!(!is_squarefree(0));
    }

    #[test]
    fn radicand_validation() {
        assert!(check_radicand(3).is_ok());
        assert_eq!(check_radicand(1), Err(NumberError::InvalidRadicand(1)));
        assert_eq!(check_radicand(12), Err(NumberError::InvalidRadicand(12)));
    }

    #[test]
    fn primality_matches_sieve() {
        let limit = 5000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &expect) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(n as u64), expect, "n = {n}");
        }
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn odd_prime_guard() {
        assert_eq!(check_odd_prime(2), Err(NumberError::EvenPrime));
        assert_eq!(check_odd_prime(9), Err(NumberError::NotPrime(9)));
        assert_eq!(check_odd_prime(13), Ok(13));
    }
}
