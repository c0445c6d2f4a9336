//! Integer factorisation: trial division, then Pollard–Brent rho with a
//! Miller–Rabin primality test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;

/// First 20 primes. The first 13 make Miller–Rabin deterministic below
/// 3.3·10²⁴; above that the test is probabilistic with error < 4⁻²⁰.
const MR_BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().expect("n > 1");
    let d = &n1 >> s;
    'witness: for &b in &MR_BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n`.
fn pollard_brent(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let m: u64 = 128;
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

fn split_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let f = pollard_brent(&n);
    let g = &n / &f;
    split_into(f, out);
    split_into(g, out);
}

/// Complete factorisation of `n ≥ 1` as sorted `(prime, exponent)` pairs.
/// Non-positive input returns an empty list.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if !n.is_positive() {
        return out;
    }
    let mut m = n.clone();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        if let Ok(small) = u64::try_from(&m) {
            if p.saturating_mul(p) > small {
                break;
            }
            let mut e = 0;
            let mut v = small;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            if e > 0 {
                out.push((BigInt::from(p), e));
                m = BigInt::from(v);
            }
        } else {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            if e > 0 {
                out.push((BigInt::from(p), e));
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let mut primes = Vec::new();
        split_into(m, &mut primes);
        primes.sort();
        for q in primes {
            match out.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => out.push((q, 1)),
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_oracle(mut n: u64) -> Vec<(BigInt, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((BigInt::from(p), e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((BigInt::from(n), 1));
        }
        out
    }

    #[test]
    fn small_cases() {
        assert_eq!(factorize(&BigInt::from(52)), trial_oracle(52));
        assert_eq!(factorize(&BigInt::from(1)), vec![]);
        let f = factorize(&BigInt::from(103682));
        let expect: Vec<(BigInt, u32)> = vec![(2.into(), 1), (47.into(), 1), (1103.into(), 1)];
        assert_eq!(f, expect);
    }

    #[test]
    fn beyond_trial_division() {
        // two primes above the trial-division limit
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(998_244_353u64);
        let r: BigInt = "1000000000000000003".parse().unwrap();
        let n = &p * &q * &q * &r;
        let f = factorize(&n);
        assert_eq!(f, vec![(p, 1), (q, 2), (r, 1)]);
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigInt::from(2)));
        assert!(!is_probable_prime(&BigInt::from(561)));
        assert!(is_probable_prime(&"170141183460469231731687303715884105727".parse().unwrap()));
        assert!(!is_probable_prime(&BigInt::from(3_215_031_751u64)));
    }

    proptest! {
        #[test]
        fn matches_trial_division(n in 1u64..5_000_000) {
            prop_assert_eq!(factorize(&BigInt::from(n)), trial_oracle(n));
        }

        #[test]
        fn product_recovers_input(a in 2u64..u32::MAX as u64, b in 2u64..u32::MAX as u64) {
            let n = BigInt::from(a) * BigInt::from(b);
            let f = factorize(&n);
            let prod = f.iter().fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e));
            prop_assert_eq!(prod, n);
            prop_assert!(f.iter().all(|(p, _)| is_probable_prime(p)));
        }
    }
}
