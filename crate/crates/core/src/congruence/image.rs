//! Breadth-first enumeration of a finite matrix group over Z[i] and
//! Schreier generators of the kernel.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CongruenceError;
use crate::linalg::ExactMatrix;
use crate::numbers::GaussianInt;
use crate::vol3::{GroupWord, Letter, RepGenerators};

pub const DEFAULT_CAP: usize = 1_000_000;

fn matrix_key(m: &ExactMatrix<GaussianInt>) -> Vec<u8> {
    let mut out = Vec::with_capacity(m.entries().len() * 4 + 8);
    out.extend_from_slice(&(m.rows() as u32).to_le_bytes());
    out.extend_from_slice(&(m.cols() as u32).to_le_bytes());
    for z in m.entries() {
        z.write_key(&mut out);
    }
    out
}

/// All elements of the group generated by a representation, each with a
/// shortest word (first in breadth-first order) mapping to it.
#[derive(Clone, Debug)]
pub struct FiniteImage {
    pub generators: Vec<char>,
    pub elements: Vec<ExactMatrix<GaussianInt>>,
    pub transversal: Vec<GroupWord>,
    index: HashMap<Vec<u8>, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteImageExport {
    pub order: usize,
    pub generators: Vec<String>,
    pub transversal: Vec<String>,
}

impl FiniteImage {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, m: &ExactMatrix<GaussianInt>) -> Option<usize> {
        self.index.get(&matrix_key(m)).copied()
    }

    pub fn export(&self) -> FiniteImageExport {
        FiniteImageExport {
            order: self.order(),
            generators: self.generators.iter().map(char::to_string).collect(),
            transversal: self.transversal.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.export()).expect("plain data serialises")
    }
}

fn letters_of(rep: &RepGenerators<GaussianInt>) -> Vec<Letter> {
    rep.generators()
        .into_iter()
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect()
}

fn letter_image(rep: &RepGenerators<GaussianInt>, l: Letter) -> &ExactMatrix<GaussianInt> {
    if l.inverse {
        rep.inverse_image(l.gen).expect("letter from rep")
    } else {
        rep.image(l.gen).expect("letter from rep")
    }
}

/// Closure of the identity under right multiplication by the generators and
/// their inverses. Fails once more than `cap` elements are found.
pub fn enumerate_image(rep: &RepGenerators<GaussianInt>, cap: usize) -> Result<FiniteImage, CongruenceError> {
    let letters = letters_of(rep);
    let proto = GaussianInt::new(0, 0);
    let id = ExactMatrix::identity(rep.dim(), &proto);
    let mut image = FiniteImage {
        generators: rep.generators(),
        index: HashMap::from([(matrix_key(&id), 0)]),
        elements: vec![id],
        transversal: vec![GroupWord::identity()],
    };
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let products: Vec<Vec<(Vec<u8>, ExactMatrix<GaussianInt>)>> = frontier
            .par_iter()
            .map(|&i| {
                letters
                    .iter()
                    .map(|&l| {
                        let m = image.elements[i].mul(letter_image(rep, l));
                        (matrix_key(&m), m)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&i, row) in frontier.iter().zip(products) {
            for (&l, (key, m)) in letters.iter().zip(row) {
                if image.index.contains_key(&key) {
                    continue;
                }
                if image.elements.len() >= cap {
                    return Err(CongruenceError::CapExceeded(cap));
                }
                let j = image.elements.len();
                image.index.insert(key, j);
                image.elements.push(m);
                image
                    .transversal
                    .push(image.transversal[i].concat(&GroupWord::from_letters([l])));
                next.push(j);
            }
        }
        frontier = next;
    }
    Ok(image)
}

/// Schreier generators `r·g·rep(r·g)⁻¹` of the kernel of the map onto the
/// image, freely reduced, without trivial words or repeats.
pub fn schreier_kernel_generators(
    image: &FiniteImage,
    rep: &RepGenerators<GaussianInt>,
) -> Result<Vec<GroupWord>, CongruenceError> {
    let letters = letters_of(rep);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, r) in image.transversal.iter().enumerate() {
        for &l in &letters {
            let m = image.elements[i].mul(letter_image(rep, l));
            let j = image
                .index_of(&m)
                .ok_or_else(|| CongruenceError::CapExceeded(image.order()))?;
            let w = r
                .concat(&GroupWord::from_letters([l]))
                .concat(&image.transversal[j].inverse());
            if !w.is_empty() && seen.insert(w.clone()) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vol3::{evaluate_word, omega_gaussian, vol3_generator_words};

    fn omega0_ab() -> RepGenerators<GaussianInt> {
        omega_gaussian().unwrap().from_words("Z[i]", &vol3_generator_words()).unwrap()
    }

    #[test]
    fn vol3_image_has_order_320() {
        let rep = omega0_ab();
        let img = enumerate_image(&rep, DEFAULT_CAP).unwrap();
        assert_eq!(img.order(), 320);
        assert!(img.transversal[0].is_empty());
        for (w, m) in img.transversal.iter().zip(&img.elements) {
            assert_eq!(evaluate_word(w, &rep).unwrap(), *m);
        }
        let json: FiniteImageExport = serde_json::from_str(&img.to_json()).unwrap();
        assert_eq!(json.order, 320);
    }

    #[test]
    fn trivial_and_capped() {
        let id = ExactMatrix::identity(2, &GaussianInt::new(0, 0));
        let rep = RepGenerators::new("Z[i]", vec![('x', id.clone(), id)]).unwrap();
        assert_eq!(enumerate_image(&rep, 10).unwrap().order(), 1);
        let one = GaussianInt::new(1, 0);
        let zero = GaussianInt::new(0, 0);
        let shear = ExactMatrix::from_rows(vec![vec![one.clone(), one.clone()], vec![zero.clone(), one.clone()]]).unwrap();
        let shear_inv = ExactMatrix::from_rows(vec![vec![one.clone(), GaussianInt::new(-1, 0)], vec![zero, one]]).unwrap();
        let rep = RepGenerators::new("Z[i]", vec![('x', shear, shear_inv)]).unwrap();
        assert_eq!(enumerate_image(&rep, 50).unwrap_err(), CongruenceError::CapExceeded(50));
    }

    #[test]
    fn schreier_words_are_in_the_kernel() {
        let rep = omega0_ab();
        let img = enumerate_image(&rep, DEFAULT_CAP).unwrap();
        let gens = schreier_kernel_generators(&img, &rep).unwrap();
        assert!(!gens.is_empty() && gens.len() <= 4 * 320);
        for w in &gens {
            assert!(evaluate_word(w, &rep).unwrap().is_identity());
        }
    }
}
