//! Free-group words over single-letter generators; an uppercase letter is
//! the inverse of its lowercase generator.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Vol3Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: char,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: char, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}", self.gen.to_ascii_uppercase())
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    /// Builds a word from letters, freely reducing.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord { letters: out }
    }

    /// Parses `aabbABAbb`-style strings. `1`, `e` and the empty string are the identity.
    pub fn parse(s: &str) -> Result<Self, Vol3Error> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "e" {
            return Ok(GroupWord::identity());
        }
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            if !ch.is_ascii_alphabetic() || ch == 'e' || ch == 'E' {
                return Err(Vol3Error::BadWord(s.to_string()));
            }
            letters.push(Letter::new(ch.to_ascii_lowercase(), ch.is_ascii_uppercase()));
        }
        Ok(GroupWord::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, o: &Self) -> Self {
        GroupWord::from_letters(self.letters.iter().chain(&o.letters).copied())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = GroupWord::identity();
        for _ in 0..n {
            r = r.concat(self);
        }
        r
    }

    /// Generators occurring in the word, sorted.
    pub fn support(&self) -> Vec<char> {
        let mut v: Vec<char> = self.letters.iter().map(|l| l.gen).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Replaces each generator by a word, then freely reduces.
    pub fn substitute(&self, f: impl Fn(char) -> GroupWord) -> Self {
        let mut out = Vec::new();
        for l in &self.letters {
            let img = f(l.gen);
            if l.inverse {
                out.extend(img.inverse().letters);
            } else {
                out.extend(img.letters);
            }
        }
        GroupWord::from_letters(out)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GroupWord {
    type Err = Vol3Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupWord::parse(s)
    }
}

/// The two defining relators of vol3 in the generators a, b.
pub fn vol3_relators() -> Vec<GroupWord> {
    ["aabbABAbb", "aBaBabaaab"]
        .iter()
        .map(|s| GroupWord::parse(s).expect("static relator"))
        .collect()
}

/// Image of `a` in the orbifold generators: `u²c`.
pub fn orbifold_a() -> GroupWord {
    GroupWord::parse("uuc").expect("static word")
}

/// Image of `b`: `(aua)⁻¹u = a⁻¹u⁻¹a⁻¹u`, freely reduced.
pub fn orbifold_b() -> GroupWord {
    let a = orbifold_a();
    let u = GroupWord::parse("u").expect("static word");
    a.concat(&u).concat(&a).inverse().concat(&u)
}

/// Rewrites a word in {a, b} into {u, c}.
///
/// Letters other than a and b pass through unchanged.
pub fn expand_to_orbifold(w: &GroupWord) -> GroupWord {
    let a = orbifold_a();
    let b = orbifold_b();
    w.substitute(|g| match g {
        'a' => a.clone(),
        'b' => b.clone(),
        other => GroupWord::from_letters([Letter::new(other, false)]),
    })
}

/// Freely reduced words over `u, u⁻¹, c` in length order, then
/// lexicographically with `u < u⁻¹ < c`.
///
/// Words containing `cc` are skipped: `c` has order 2, so such a word equals
/// a shorter one already produced.
pub fn orbifold_words_by_length(max_len: usize) -> impl Iterator<Item = GroupWord> {
    let alphabet = [Letter::new('u', false), Letter::new('u', true), Letter::new('c', false)];
    let mut frontier = vec![GroupWord::identity()];
    let mut len = 0usize;
    std::iter::from_fn(move || {
        if len > max_len {
            return None;
        }
        let current = std::mem::take(&mut frontier);
        let mut next = Vec::new();
        if len < max_len {
            for w in &current {
                for &l in &alphabet {
                    if let Some(&last) = w.letters.last() {
                        if last == l.inv() || (l.gen == 'c' && last.gen == 'c') {
                            continue;
                        }
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(GroupWord { letters });
                }
            }
        }
        frontier = next;
        len += 1;
        Some(current)
    })
    .flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn relators_match_presentation() {
        let r = vol3_relators();
        assert_eq!(r[0].len(), 9);
        assert_eq!(r[1].len(), 10);
        assert_eq!(r[0].to_string(), "aabbABAbb");
        assert_eq!(r[1].to_string(), "aBaBabaaab");
        assert!(r.iter().all(GroupWord::is_freely_reduced));
    }

    #[test]
    fn orbifold_images() {
        assert_eq!(expand_to_orbifold(&GroupWord::parse("a").unwrap()).to_string(), "uuc");
        // (uucuuuc)⁻¹u = CUUUCUUu -> CUUUCU
        assert_eq!(orbifold_b().to_string(), "CUUUCU");
        assert!(expand_to_orbifold(&GroupWord::identity()).is_empty());
    }

    #[test]
    fn parse_and_reduce() {
        assert_eq!(GroupWord::parse("uUc").unwrap().to_string(), "c");
        assert!(GroupWord::parse("uU").unwrap().is_empty());
        assert!(GroupWord::parse("u1").is_err());
        assert_eq!(GroupWord::parse("1").unwrap(), GroupWord::identity());
    }

    #[test]
    fn bfs_order() {
        let w: Vec<String> = orbifold_words_by_length(2).map(|w| w.to_string()).collect();
        assert_eq!(w, ["1", "u", "U", "c", "uu", "uc", "UU", "Uc", "cu", "cU"]);
    }

    fn arb_word() -> impl Strategy<Value = GroupWord> {
        proptest::collection::vec((prop_oneof![Just('a'), Just('b')], any::<bool>()), 0..12)
            .prop_map(|v| GroupWord::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    proptest! {
        #[test]
        fn inverse_cancels(w in arb_word()) {
            prop_assert!(w.concat(&w.inverse()).is_empty());
            prop_assert!(w.is_freely_reduced());
        }

        #[test]
        fn expansion_is_a_homomorphism(x in arb_word(), y in arb_word()) {
            let lhs = expand_to_orbifold(&x.concat(&y));
            let rhs = expand_to_orbifold(&x).concat(&expand_to_orbifold(&y));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn display_roundtrip(x in arb_word()) {
            prop_assert_eq!(GroupWord::parse(&x.to_string()).unwrap(), x);
        }
    }
}
