//! Reduced words over `{a, a⁻¹, b, b⁻¹}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::affine::AffineElement;
use crate::error::{Error, Result};

pub const DEFAULT_WORD_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Self {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "a",
            Letter::AInv => "a⁻¹",
            Letter::B => "b",
            Letter::BInv => "b⁻¹",
        })
    }
}

/// Images of the four letters, in [`Letter::ALL`] order.
#[derive(Clone, Debug)]
pub struct Alphabet {
    pub images: [AffineElement; 4],
}

impl Alphabet {
    pub fn new(a: &AffineElement, b: &AffineElement) -> Self {
        Self {
            images: [a.clone(), a.inverse_elem(), b.clone(), b.inverse_elem()],
        }
    }

    pub fn image(&self, l: Letter) -> &AffineElement {
        &self.images[l.index()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordPath {
    pub letters: Vec<Letter>,
    pub evaluated: AffineElement,
}

impl WordPath {
    pub fn empty() -> Self {
        Self {
            letters: Vec::new(),
            evaluated: AffineElement::identity(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[1] != w[0].inverse())
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// `w·l`, assuming the result is reduced.
    pub fn push(&self, l: Letter, alphabet: &Alphabet) -> Self {
        let mut letters = self.letters.clone();
        letters.push(l);
        Self {
            letters,
            evaluated: self.evaluated.compose(alphabet.image(l)),
        }
    }

    pub fn from_letters(letters: &[Letter], alphabet: &Alphabet) -> Self {
        letters
            .iter()
            .fold(Self::empty(), |w, &l| w.push(l, alphabet))
    }

    /// Free reduction of `self · other`, evaluated from scratch.
    pub fn concat_reduced(&self, other: &Self, alphabet: &Alphabet) -> Self {
        let out = reduce_letters(self.letters.iter().chain(&other.letters).copied());
        Self::from_letters(&out, alphabet)
    }

    /// Canonical order: length, then lexicographic.
    pub fn canonical_key(&self) -> (usize, &[Letter]) {
        (self.letters.len(), &self.letters)
    }
}

impl fmt::Display for WordPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}

/// `"a b⁻¹"`, or `"1"` for the empty word.
pub fn format_letters(letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// Free reduction of a letter sequence.
pub fn reduce_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// `w⁻¹`.
pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// Extensions of `level` by one letter, in lexicographic order.
pub fn next_level(level: &[WordPath], alphabet: &Alphabet) -> Vec<WordPath> {
    let mut out = Vec::with_capacity(level.len() * 3);
    for w in level {
        for l in Letter::ALL {
            if w.last() != Some(l.inverse()) {
                out.push(w.push(l, alphabet));
            }
        }
    }
    out
}

/// All reduced words of length `1..=max_len`, by length then lexicographically.
pub fn enumerate_reduced(
    a: &AffineElement,
    b: &AffineElement,
    max_len: usize,
    cap: usize,
) -> Result<Vec<WordPath>> {
    if max_len > cap {
        return Err(Error::WordCapExceeded {
            requested: max_len,
            cap,
        });
    }
    let alphabet = Alphabet::new(a, b);
    let mut all = Vec::new();
    let mut level = vec![WordPath::empty()];
    for _ in 0..max_len {
        level = next_level(&level, &alphabet);
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

/// `4·3^{L−1}` words of length exactly `L`.
pub fn count_of_length(len: u32) -> u64 {
    if len == 0 {
        1
    } else {
        4 * 3u64.pow(len - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> (AffineElement, AffineElement) {
        (
            AffineElement::from_i64([1, 2, 0, 1, 0, 0]).unwrap(),
            AffineElement::from_i64([1, 0, 2, 1, 0, 0]).unwrap(),
        )
    }

    #[test]
    fn counts() {
        let (a, b) = pair();
        assert_eq!(enumerate_reduced(&a, &b, 1, 12).unwrap().len(), 4);
        let w2 = enumerate_reduced(&a, &b, 2, 12).unwrap();
        assert_eq!(w2.iter().filter(|w| w.len() == 2).count(), 12);
        let w3 = enumerate_reduced(&a, &b, 3, 12).unwrap();
        assert_eq!(w3.len(), 52);
        assert_eq!(w3.iter().filter(|w| w.len() == 3).count(), 36);
        assert_eq!(count_of_length(3), 36);
        assert!(w3.iter().all(|w| w.is_reduced()));
    }

    #[test]
    fn lexicographic_within_length() {
        let (a, b) = pair();
        let w = enumerate_reduced(&a, &b, 3, 12).unwrap();
        for pair in w.windows(2) {
            assert!(pair[0].canonical_key() < pair[1].canonical_key());
        }
        assert_eq!(w[4].to_string(), "a a");
        assert_eq!(w[5].to_string(), "a b");
    }

    #[test]
    fn cap_enforced() {
        let (a, b) = pair();
        assert!(matches!(
            enumerate_reduced(&a, &b, 13, 12),
            Err(Error::WordCapExceeded { requested: 13, cap: 12 })
        ));
    }

    #[test]
    fn concatenation_cancels() {
        let (a, b) = pair();
        let al = Alphabet::new(&a, &b);
        let u = WordPath::from_letters(&[Letter::A, Letter::B], &al);
        let v = WordPath::from_letters(&[Letter::BInv, Letter::A], &al);
        let uv = u.concat_reduced(&v, &al);
        assert_eq!(uv.letters, vec![Letter::A, Letter::A]);
        assert_eq!(uv.evaluated, u.evaluated.compose(&v.evaluated));
    }
}
