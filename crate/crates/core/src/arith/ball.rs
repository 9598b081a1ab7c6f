//! Breadth-first enumeration of the balls `S^k` with exact deduplication.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Signed;

use super::affine::AffineElement;
use super::norm::spectral_radius;
use super::quad::QuadNumber;
use crate::error::{Error, Result};

pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// A word over the generating set, as indices into `S`.
pub type SWord = Vec<usize>;

/// Evaluate `s[w₀]·s[w₁]⋯`.
pub fn eval_word(s: &[AffineElement], word: &[usize]) -> AffineElement {
    word.iter()
        .fold(AffineElement::identity(), |acc, &i| acc.compose(&s[i]))
}

pub fn format_sword(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|i| format!("s{i}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug)]
pub struct BallEntry {
    pub element: AffineElement,
    /// First word in (length, lexicographic) order reaching the element.
    pub word: SWord,
}

/// `S^0 ⊆ S^1 ⊆ …`, stored as the new elements of each level.
#[derive(Clone, Debug)]
pub struct Ball {
    generators: Vec<AffineElement>,
    levels: Vec<Vec<BallEntry>>,
    seen: HashSet<AffineElement>,
    cap: usize,
}

impl Ball {
    pub fn new(generators: &[AffineElement], cap: usize) -> Self {
        let id = AffineElement::identity();
        let mut seen = HashSet::new();
        seen.insert(id.clone());
        Self {
            generators: generators.to_vec(),
            levels: vec![vec![BallEntry {
                element: id,
                word: Vec::new(),
            }]],
            seen,
            cap,
        }
    }

    pub fn generators(&self) -> &[AffineElement] {
        &self.generators
    }

    /// Largest `k` with `S^k` fully enumerated.
    pub fn explored(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }

    /// Enumerate up to `S^k`.
    pub fn grow_to(&mut self, k: usize) -> Result<()> {
        while self.explored() < k {
            let last = self.levels.last().expect("level 0");
            let mut next = Vec::new();
            for entry in last {
                for (i, s) in self.generators.iter().enumerate() {
                    let g = entry.element.compose(s);
                    if self.seen.contains(&g) {
                        continue;
                    }
                    if self.seen.len() >= self.cap {
                        return Err(Error::BallBudgetExceeded {
                            limit: self.cap,
                            explored: self.explored(),
                        });
                    }
                    self.seen.insert(g.clone());
                    let mut word = entry.word.clone();
                    word.push(i);
                    next.push(BallEntry { element: g, word });
                }
            }
            self.levels.push(next);
        }
        Ok(())
    }

    /// New elements of level `k` (words of length exactly `k`).
    pub fn level(&self, k: usize) -> &[BallEntry] {
        &self.levels[k]
    }

    /// All of `S^k` in canonical order.
    pub fn up_to(&self, k: usize) -> impl Iterator<Item = &BallEntry> {
        self.levels[..=k.min(self.explored())].iter().flatten()
    }
}

/// Element of `S^k` with the largest spectral radius of its linear part.
#[derive(Clone, Debug)]
pub struct MaxRadius {
    pub radius: QuadNumber,
    pub entry: BallEntry,
}

/// Max of `Λ(θ(g))` over `S^k`; ties go to the first canonical word.
pub fn max_spectral_radius(ball: &Ball, k: usize) -> MaxRadius {
    let mut best: Option<(&BallEntry, BigInt)> = None;
    for e in ball.up_to(k) {
        let t = e.element.linear.trace().abs();
        if best.as_ref().map_or(true, |(_, bt)| t > *bt) {
            best = Some((e, t));
        }
    }
    let (entry, _) = best.expect("the ball contains the identity");
    MaxRadius {
        radius: spectral_radius(&entry.element.linear).expect("unimodular"),
        entry: entry.clone(),
    }
}

/// Convenience wrapper building the ball.
pub fn ball_max_spectral_radius(
    s: &[AffineElement],
    k: usize,
    cap: usize,
) -> Result<(QuadNumber, SWord)> {
    let mut ball = Ball::new(s, cap);
    ball.grow_to(k)?;
    let m = max_spectral_radius(&ball, k);
    Ok((m.radius, m.entry.word))
}
