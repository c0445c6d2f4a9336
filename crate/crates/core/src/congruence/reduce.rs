//! Reduction modulo p and the commuting square
//! `π_p ∘ ω_{t_n} = f_* ∘ π_p ∘ ω_0` on generators.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::su::omega_at_pell;
use super::CongruenceError;
use crate::linalg::ExactMatrix;
use crate::numbers::{check_odd_prime, reduce_mod_p, GaussianHom, NumberError, QuadElem, ResidueElem};
use crate::pell::pell_solution;
use crate::vol3::{evaluate_word, expand_to_orbifold, omega_gaussian, vol3_generator_words, GroupWord, RepGenerators};

fn check_prime(p: u64) -> Result<(), CongruenceError> {
    match check_odd_prime(p) {
        Err(NumberError::EvenPrime) => Err(CongruenceError::EvenPrime),
        other => other.map(|_| ()).map_err(Into::into),
    }
}

/// Entrywise reduction O_d → O_d/(p) of every generator image.
pub fn reduce_rep_mod_p(
    rep: &RepGenerators<QuadElem>,
    p: u64,
) -> Result<RepGenerators<ResidueElem>, CongruenceError> {
    check_prime(p)?;
    Ok(rep.try_map(format!("F_{p}[x]/(x^2 - d)"), |x| -> Result<ResidueElem, NumberError> {
        reduce_mod_p(&x.to_od()?, p)
    })?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramCheck {
    pub d: i64,
    pub n: u32,
    pub p: u64,
    pub t: BigInt,
    pub y: BigInt,
    /// `d·y² ≡ −1 (mod p)`, so that `i ↦ y√d` is a ring map.
    pub hom_precondition: bool,
    /// Per generator: the images and inverse images agree mod p.
    pub generators: Vec<(char, bool)>,
    pub commutes: bool,
}

/// Checks `f_*(π_p(ω_0(g))) = π_p(ω_{t_n}(g))` for `g ∈ {u, c}` and their inverses.
pub fn diagram_commutes(d: i64, n: u32, p: u64) -> Result<DiagramCheck, CongruenceError> {
    check_prime(p)?;
    let sol = pell_solution(d, n)?;
    if !(&sol.t % p).is_zero() {
        return Err(CongruenceError::PrimeDoesNotDivideT {
            p,
            t: sol.t.to_string(),
        });
    }
    let mut check = DiagramCheck {
        d,
        n,
        p,
        t: sol.t.clone(),
        y: sol.y.clone(),
        hom_precondition: false,
        generators: Vec::new(),
        commutes: false,
    };
    let hom = match GaussianHom::new(&sol.y, d, p) {
        Ok(h) => h,
        Err(NumberError::NotAHomomorphism { .. }) => return Ok(check),
        Err(e) => return Err(e.into()),
    };
    check.hom_precondition = true;
    let omega0 = omega_gaussian()?;
    let reduced = reduce_rep_mod_p(&omega_at_pell(d, n)?, p)?;
    for g in ['u', 'c'] {
        let pushed = omega0.image(g)?.map(|z| hom.apply(z));
        let pushed_inv = omega0.inverse_image(g)?.map(|z| hom.apply(z));
        let ok = pushed == *reduced.image(g)? && pushed_inv == *reduced.inverse_image(g)?;
        check.generators.push((g, ok));
    }
    check.commutes = check.generators.iter().all(|(_, ok)| *ok);
    Ok(check)
}

/// π_p ∘ ω_{t_n} at a triple where the diagram has been verified.
#[derive(Clone, Debug)]
pub struct KernelChecker {
    pub diagram: DiagramCheck,
    reduced: RepGenerators<ResidueElem>,
    reduced_ab: RepGenerators<ResidueElem>,
}

impl KernelChecker {
    pub fn new(d: i64, n: u32, p: u64) -> Result<Self, CongruenceError> {
        let diagram = diagram_commutes(d, n, p)?;
        if !diagram.commutes {
            return Err(CongruenceError::DiagramFails { d, n, p });
        }
        let reduced = reduce_rep_mod_p(&omega_at_pell(d, n)?, p)?;
        let reduced_ab = reduced.from_words("O_d/(p)", &vol3_generator_words())?;
        Ok(KernelChecker {
            diagram,
            reduced,
            reduced_ab,
        })
    }

    /// Image of a word in {a, b} or {u, c} modulo p.
    pub fn image(&self, w: &GroupWord) -> Result<ExactMatrix<ResidueElem>, CongruenceError> {
        if w.support().iter().all(|g| matches!(g, 'a' | 'b')) {
            return Ok(evaluate_word(w, &self.reduced_ab)?);
        }
        Ok(evaluate_word(&expand_to_orbifold(w), &self.reduced)?)
    }

    pub fn contains(&self, w: &GroupWord) -> Result<bool, CongruenceError> {
        Ok(self.image(w)?.is_identity())
    }
}

/// `π_p(ω_{t_n}(w)) = I`.
pub fn kernel_membership(w: &GroupWord, d: i64, n: u32, p: u64) -> Result<bool, CongruenceError> {
    KernelChecker::new(d, n, p)?.contains(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use proptest::prelude::*;

    #[test]
    fn table_triples_commute() {
        for (d, n, p) in [(3, 2, 7), (5, 1, 3), (3, 3, 13), (5, 2, 7)] {
            let c = diagram_commutes(d, n, p).unwrap();
            assert!(c.hom_precondition && c.commutes, "{c:?}");
        }
        assert!(matches!(
            diagram_commutes(3, 2, 5),
            Err(CongruenceError::PrimeDoesNotDivideT { p: 5, .. })
        ));
        assert_eq!(diagram_commutes(3, 1, 2), Err(CongruenceError::EvenPrime));
    }

    #[test]
    fn reduction_kills_t_terms() {
        let om = omega_at_pell(3, 2).unwrap();
        let red = reduce_rep_mod_p(&om, 7).unwrap();
        let u = red.image('u').unwrap();
        // entry (0, 3) is 2t, which vanishes mod 7
        assert!(u.get(0, 3).is_zero_elem());
        assert!(u.get(0, 0).is_one_elem());
        assert_eq!(reduce_rep_mod_p(&om, 2).unwrap_err(), CongruenceError::EvenPrime);
    }

    #[test]
    fn kernel_basics() {
        let k = KernelChecker::new(3, 2, 7).unwrap();
        assert!(k.contains(&GroupWord::identity()).unwrap());
        assert!(!k.contains(&GroupWord::parse("u").unwrap()).unwrap());
        assert!(kernel_membership(&GroupWord::identity(), 3, 2, 7).unwrap());
        // both evaluation routes agree
        let w = GroupWord::parse("abAAb").unwrap();
        assert_eq!(k.image(&w).unwrap(), evaluate_word(&expand_to_orbifold(&w), &k.reduced).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn reduction_is_multiplicative(w1 in "[uUc]{0,6}", w2 in "[uUc]{0,6}") {
            let om = omega_at_pell(5, 2).unwrap();
            let red = reduce_rep_mod_p(&om, 7).unwrap();
            let a = GroupWord::parse(&w1).unwrap();
            let b = GroupWord::parse(&w2).unwrap();
            let prod = evaluate_word(&a, &om).unwrap().mul(&evaluate_word(&b, &om).unwrap());
            let reduced_prod = prod.try_map(|x| reduce_mod_p(&x.to_od().unwrap(), 7)).unwrap();
            let prod_reduced = evaluate_word(&a, &red).unwrap().mul(&evaluate_word(&b, &red).unwrap());
            prop_assert_eq!(reduced_prod, prod_reduced);
        }
    }
}
