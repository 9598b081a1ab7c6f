//! Brute-force freeness and local commutativity up to a word length.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::words::{next_level, Alphabet, WordPath};
use crate::arith::affine::{fixed_point, witness_point, AffineElement, FixedSet, RationalPoint};
use crate::arith::rational::ratvec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub max_len: usize,
    pub words_checked: u64,
    /// First reduced word (canonical order) evaluating to the identity.
    pub counterexample: Option<WordPath>,
}

impl FreenessReport {
    pub fn pass(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Level by level; only the previous level is kept.
pub fn freeness_check(a: &AffineElement, b: &AffineElement, max_len: usize) -> FreenessReport {
    let alphabet = Alphabet::new(a, b);
    let mut level = vec![WordPath::empty()];
    let mut words_checked = 0u64;
    for _ in 0..max_len {
        level = next_level(&level, &alphabet);
        for w in &level {
            words_checked += 1;
            if w.evaluated.is_identity() {
                return FreenessReport {
                    max_len,
                    words_checked,
                    counterexample: Some(w.clone()),
                };
            }
        }
    }
    FreenessReport {
        max_len,
        words_checked,
        counterexample: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutativityViolation {
    pub w1: WordPath,
    pub w2: WordPath,
    #[serde(with = "ratvec")]
    pub point: RationalPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutativityReport {
    pub max_len: usize,
    pub words: u64,
    /// Non-identity words with a point, a line, or no fixed point.
    pub point_words: u64,
    pub line_words: u64,
    pub fixed_point_free_words: u64,
    /// Pairs sharing a fixed point (commuting or not).
    pub shared_pairs: u64,
    /// Sorted canonically, truncated to `limit`.
    pub violations: Vec<CommutativityViolation>,
    pub violations_total: u64,
}

impl CommutativityReport {
    pub fn pass(&self) -> bool {
        self.violations_total == 0
    }
}

const VIOLATION_LIMIT: usize = 32;

/// Every pair of reduced words of length `≤ L` sharing a fixed point must commute.
pub fn local_commutativity_check(
    a: &AffineElement,
    b: &AffineElement,
    max_len: usize,
) -> CommutativityReport {
    let alphabet = Alphabet::new(a, b);
    let mut words = Vec::new();
    let mut level = vec![WordPath::empty()];
    for _ in 0..max_len {
        level = next_level(&level, &alphabet);
        words.extend(level.iter().cloned());
    }

    let mut by_point: HashMap<RationalPoint, Vec<usize>> = HashMap::new();
    let mut point_order: Vec<RationalPoint> = Vec::new();
    let mut lines = Vec::new();
    let mut free = 0u64;
    for (i, w) in words.iter().enumerate() {
        match fixed_point(&w.evaluated) {
            FixedSet::Point(p) => {
                let e = by_point.entry(p.clone()).or_default();
                if e.is_empty() {
                    point_order.push(p);
                }
                e.push(i);
            }
            FixedSet::Line(l) => lines.push((i, l)),
            FixedSet::Empty => free += 1,
            // identity: commutes with everything
            FixedSet::Plane => {}
        }
    }

    let mut shared = 0u64;
    let mut bad: Vec<(usize, usize, RationalPoint)> = Vec::new();
    let mut test = |i: usize, j: usize, p: &RationalPoint, bad: &mut Vec<_>| {
        shared += 1;
        let (x, y) = (&words[i].evaluated, &words[j].evaluated);
        if !x.commutes_with(y) {
            debug_assert!(x.apply_rational(p) == *p && y.apply_rational(p) == *p);
            bad.push((i.min(j), i.max(j), p.clone()));
        }
    };
    for p in &point_order {
        let group = &by_point[p];
        for (k, &i) in group.iter().enumerate() {
            for &j in &group[k + 1..] {
                test(i, j, p, &mut bad);
            }
        }
    }
    for (k, (i, l)) in lines.iter().enumerate() {
        for p in &point_order {
            if l.contains(p) {
                for &j in &by_point[p] {
                    test(*i, j, p, &mut bad);
                }
            }
        }
        for (j, m) in &lines[k + 1..] {
            let meet = FixedSet::Line(l.clone()).intersect(&FixedSet::Line(m.clone()));
            if let Some(p) = witness_point(&meet) {
                test(*i, *j, &p, &mut bad);
            }
        }
    }
    bad.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    let violations_total = bad.len() as u64;
    let violations = bad
        .into_iter()
        .take(VIOLATION_LIMIT)
        .map(|(i, j, point)| CommutativityViolation {
            w1: words[i].clone(),
            w2: words[j].clone(),
            point,
        })
        .collect();
    CommutativityReport {
        max_len,
        words: words.len() as u64,
        point_words: by_point.values().map(|v| v.len() as u64).sum(),
        line_words: lines.len() as u64,
        fixed_point_free_words: free,
        shared_pairs: shared,
        violations,
        violations_total,
    }
}
