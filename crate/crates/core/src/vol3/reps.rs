//! Matrix representations given by generator images, and word evaluation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::constants::appendix;
use super::words::{expand_to_orbifold, orbifold_a, orbifold_b, vol3_relators, GroupWord};
use super::Vol3Error;
use crate::funcfield::{specialize_gaussian_at_zero, FuncFieldError, TowerElem};
use crate::linalg::{det, inverse, ExactMatrix, HermitianForm};
use crate::numbers::GaussianInt;
use crate::ring::{ExactDiv, Field, Ring};

/// Images of single-letter generators together with their exact inverses.
#[derive(Clone, Debug)]
pub struct RepGenerators<E> {
    dim: usize,
    domain: String,
    images: BTreeMap<char, ExactMatrix<E>>,
    inverses: BTreeMap<char, ExactMatrix<E>>,
}

impl<E: Ring> RepGenerators<E> {
    /// Builds a representation from `(generator, image, inverse image)` triples,
    /// checking sizes and that each pair multiplies to the identity.
    pub fn new(
        domain: impl Into<String>,
        gens: Vec<(char, ExactMatrix<E>, ExactMatrix<E>)>,
    ) -> Result<Self, Vol3Error> {
        let dim = gens.first().map_or(0, |g| g.1.rows());
        let mut images = BTreeMap::new();
        let mut inverses = BTreeMap::new();
        for (g, m, minv) in gens {
            for x in [&m, &minv] {
                if x.rows() != dim || x.cols() != dim {
                    return Err(Vol3Error::BadRepresentation(format!(
                        "image of {g} is {}×{}, expected {dim}×{dim}",
                        x.rows(),
                        x.cols()
                    )));
                }
            }
            if !m.mul(&minv).is_identity() {
                return Err(Vol3Error::BadRepresentation(format!(
                    "supplied inverse of {g} is wrong"
                )));
            }
            images.insert(g, m);
            inverses.insert(g, minv);
        }
        Ok(RepGenerators {
            dim,
            domain: domain.into(),
            images,
            inverses,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient domain tag, e.g. `"tower"` or `"Z[i]"`.
    pub fn domain(&self) -> &str {
        &self.domain
    }

    pub fn generators(&self) -> Vec<char> {
        self.images.keys().copied().collect()
    }

    pub fn image(&self, g: char) -> Result<&ExactMatrix<E>, Vol3Error> {
        self.images.get(&g).ok_or(Vol3Error::MissingGenerator(g))
    }

    pub fn inverse_image(&self, g: char) -> Result<&ExactMatrix<E>, Vol3Error> {
        self.inverses.get(&g).ok_or(Vol3Error::MissingGenerator(g))
    }

    /// Applies a ring map entrywise to every image and inverse.
    pub fn try_map<F: Ring, X>(
        &self,
        domain: impl Into<String>,
        mut f: impl FnMut(&E) -> Result<F, X>,
    ) -> Result<RepGenerators<F>, X> {
        let mut images = BTreeMap::new();
        let mut inverses = BTreeMap::new();
        for (g, m) in &self.images {
            images.insert(*g, m.try_map(&mut f)?);
            inverses.insert(*g, self.inverses[g].try_map(&mut f)?);
        }
        Ok(RepGenerators {
            dim: self.dim,
            domain: domain.into(),
            images,
            inverses,
        })
    }

    /// Replaces one generator image without re-checking the inverse;
    /// used to build negative controls.
    pub fn with_perturbed_image(&self, g: char, i: usize, j: usize, delta: &E) -> Result<Self, Vol3Error> {
        let mut out = self.clone();
        let m = out.images.get_mut(&g).ok_or(Vol3Error::MissingGenerator(g))?;
        let v = m.get(i, j).add(delta);
        m.set(i, j, v);
        Ok(out)
    }
}

impl<E: Ring> RepGenerators<E> {
    /// The representation of the subgroup generated by the given words,
    /// with the words' images as new generators.
    pub fn from_words(&self, domain: impl Into<String>, words: &[(char, GroupWord)]) -> Result<Self, Vol3Error> {
        let mut triples = Vec::with_capacity(words.len());
        for (g, w) in words {
            triples.push((*g, evaluate_word(w, self)?, evaluate_word(&w.inverse(), self)?));
        }
        RepGenerators::new(domain, triples)
    }
}

impl<E: Field + Send + Sync> RepGenerators<E> {
    /// Builds a representation over a field, computing inverses by elimination.
    pub fn from_images(domain: impl Into<String>, gens: Vec<(char, ExactMatrix<E>)>) -> Result<Self, Vol3Error> {
        let mut triples = Vec::with_capacity(gens.len());
        for (g, m) in gens {
            let inv = inverse(&m)?.ok_or_else(|| {
                Vol3Error::BadRepresentation(format!("image of {g} is singular"))
            })?;
            triples.push((g, m, inv));
        }
        RepGenerators::new(domain, triples)
    }
}

impl<E: ExactDiv> RepGenerators<E> {
    /// `det` of each generator image equals 1.
    pub fn has_unit_determinants(&self) -> Result<bool, Vol3Error> {
        for m in self.images.values() {
            if !det(m)?.is_one_elem() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Ordered product of generator images (inverse images for inverse letters).
pub fn evaluate_word<E: Ring>(w: &GroupWord, rep: &RepGenerators<E>) -> Result<ExactMatrix<E>, Vol3Error> {
    let mut letters = w.letters().iter();
    let Some(first) = letters.next() else {
        let proto = rep
            .images
            .values()
            .next()
            .map(|m| m.get(0, 0).clone())
            .ok_or(Vol3Error::BadRepresentation("no generators".into()))?;
        return Ok(ExactMatrix::identity(rep.dim, &proto));
    };
    let pick = |l: &super::words::Letter| {
        if l.inverse {
            rep.inverse_image(l.gen)
        } else {
            rep.image(l.gen)
        }
    };
    let mut acc = pick(first)?.clone();
    for l in letters {
        acc = acc.mul(pick(l)?);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    /// The word evaluated, in the generators of the representation.
    pub word: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub domain: String,
    pub checks: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The relations checked for a representation of the orbifold group:
/// `u⁴`, `c²`, and the vol3 relators rewritten in u and c.
pub fn orbifold_relations() -> Vec<(String, GroupWord)> {
    let mut out = vec![
        ("u^4".to_string(), GroupWord::parse("uuuu").expect("static")),
        ("c^2".to_string(), GroupWord::parse("cc").expect("static")),
    ];
    for r in vol3_relators() {
        out.push((r.to_string(), expand_to_orbifold(&r)));
    }
    out
}

/// Evaluates every orbifold relation and records whether it maps to the identity.
pub fn verify_presentation<E: Ring>(rep: &RepGenerators<E>) -> Result<PresentationReport, Vol3Error> {
    let mut checks = Vec::new();
    for (name, w) in orbifold_relations() {
        let passed = evaluate_word(&w, rep)?.is_identity();
        checks.push(RelationCheck {
            name,
            word: w.to_string(),
            passed,
        });
    }
    Ok(PresentationReport {
        domain: rep.domain.clone(),
        checks,
    })
}

fn tower_rep(u: &str, c: &str) -> RepGenerators<TowerElem> {
    let k = appendix();
    let u = k.get(u).expect("appendix matrix").clone();
    let c = k.get(c).expect("appendix matrix").clone();
    RepGenerators::from_images("tower", vec![('u', u), ('c', c)]).expect("appendix matrices are invertible")
}

/// ρ_t(u), ρ_t(c) over the tower Q(t)[s, w].
pub fn rho_generators() -> RepGenerators<TowerElem> {
    tower_rep("rho_u", "rho_c")
}

/// ω_t(u), ω_t(c); entries lie in Z[t, s].
pub fn omega_generators() -> RepGenerators<TowerElem> {
    tower_rep("omega_u", "omega_c")
}

/// The diagonal form M_t preserved by ρ_t.
pub fn m_form() -> HermitianForm<TowerElem> {
    HermitianForm::new(appendix().get("m_form").expect("appendix matrix").clone())
        .expect("M_t is diagonal over Q(t, w)")
}

/// `a ↦ u²c`, `b ↦ (aua)⁻¹u`.
pub fn vol3_generator_words() -> Vec<(char, GroupWord)> {
    vec![('a', orbifold_a()), ('b', orbifold_b())]
}

/// ω_0 over Z[i]: `t = 0`, `s ↦ i`.
pub fn omega_gaussian() -> Result<RepGenerators<GaussianInt>, FuncFieldError> {
    omega_generators().try_map("Z[i]", specialize_gaussian_at_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Specialization;
    use crate::linalg::signature_of_diagonal;
    use crate::numbers::{rat, QuadElem};

    #[test]
    fn appendix_entries_spot_checks() {
        let om = omega_generators();
        let oc = om.image('c').unwrap();
        for j in 0..8 {
            let expect = if j == 2 { 1 } else { 0 };
            assert_eq!(*oc.get(0, j), TowerElem::from_int(expect));
        }
        let ru = rho_generators();
        let ru = ru.image('u').unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*ru.get(i, j), TowerElem::from_int((i == j) as i64));
            }
        }
        assert_eq!(*m_form().matrix().get(2, 2), TowerElem::one());
    }

    #[test]
    fn evaluation_basics() {
        let om = omega_generators();
        assert!(evaluate_word(&GroupWord::identity(), &om).unwrap().is_identity());
        assert!(evaluate_word(&GroupWord::parse("cc").unwrap(), &om).unwrap().is_identity());
        let uu = GroupWord::from_letters([
            super::super::words::Letter::new('u', false),
            super::super::words::Letter::new('u', true),
        ]);
        assert!(evaluate_word(&uu, &om).unwrap().is_identity());
        assert!(matches!(
            evaluate_word(&GroupWord::parse("x").unwrap(), &om),
            Err(Vol3Error::MissingGenerator('x'))
        ));
    }

    #[test]
    fn omega_presentation_holds() {
        let r = verify_presentation(&omega_generators()).unwrap();
        assert_eq!(r.checks.len(), 4);
        assert!(r.all_passed(), "{r:?}");
        assert!(omega_generators().has_unit_determinants().unwrap());
    }

    #[test]
    fn rho_presentation_holds() {
        let rho = rho_generators();
        assert!(verify_presentation(&rho).unwrap().all_passed());
        assert!(rho.has_unit_determinants().unwrap());
    }

    #[test]
    fn perturbed_omega_fails() {
        let bad = omega_generators()
            .with_perturbed_image('u', 0, 3, &TowerElem::one())
            .unwrap();
        assert!(!verify_presentation(&bad).unwrap().all_passed());
    }

    #[test]
    fn rho_preserves_m() {
        let m = m_form();
        let rho = rho_generators();
        for g in ['u', 'c'] {
            assert!(m.is_preserved_by(rho.image(g).unwrap()));
        }
    }

    #[test]
    fn m_at_one_has_signature_3_1() {
        let one = rat(1, 1);
        let m = m_form();
        // at t = 1, s = 0 and w = √3
        let spec = Specialization::new(one, 3, QuadElem::from_ints(0, 0, 3).unwrap(), Some(QuadElem::from_ints(0, 1, 3).unwrap())).unwrap();
        let m1 = m.matrix().try_map(|x| spec.apply(x)).unwrap();
        assert_eq!(signature_of_diagonal(&m1).unwrap(), (3, 1));
        let rho1 = rho_generators().try_map("Q(√3)", |x| spec.apply(x)).unwrap();
        for g in ['u', 'c'] {
            let x = rho1.image(g).unwrap();
            // s = 0 here, so the involution acts trivially
            assert_eq!(x.transpose().mul(&m1).mul(x), m1);
        }
    }

    #[test]
    fn omega_zero_is_gaussian() {
        let g = omega_gaussian().unwrap();
        assert_eq!(g.dim(), 8);
        assert!(verify_presentation(&g).unwrap().all_passed());
    }
}
