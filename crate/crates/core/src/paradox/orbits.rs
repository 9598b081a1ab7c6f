//! Breadth-first exploration of orbits of `⟨a, b⟩` on rational points.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arith::affine::{AffineElement, RationalPoint};
use crate::arith::rational::ratvec;
use crate::verify::words::{format_letters, invert_letters, reduce_letters, Alphabet, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitMember {
    #[serde(with = "ratvec")]
    pub point: RationalPoint,
    /// Canonical word `w` with `point = w·representative`.
    pub word: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StabilizerStatus {
    /// No two reduced words of length `<= radius` meet.
    Free,
    /// `word` is a nontrivial reduced word fixing the representative.
    Stabilized { word: Vec<Letter>, display: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    #[serde(with = "ratvec")]
    pub representative: RationalPoint,
    /// Indices of the seeds that landed in this orbit, the first being the representative.
    pub seeds: Vec<usize>,
    pub radius: usize,
    /// In canonical (length, lexicographic) order.
    pub members: Vec<OrbitMember>,
    pub status: StabilizerStatus,
}

impl OrbitRecord {
    pub fn is_free(&self) -> bool {
        self.status == StabilizerStatus::Free
    }

    /// Members with `|w| < radius`: their neighbours are all explored.
    pub fn interior(&self) -> impl Iterator<Item = &OrbitMember> {
        self.members.iter().filter(move |m| m.word.len() < self.radius)
    }
}

/// Ball of radius `radius` around `seed`, stopping at the first collision.
fn explore(alphabet: &Alphabet, seed: &RationalPoint, radius: usize) -> (Vec<OrbitMember>, StabilizerStatus) {
    let mut members = vec![OrbitMember {
        point: seed.clone(),
        word: Vec::new(),
    }];
    let mut index: HashMap<RationalPoint, usize> = HashMap::new();
    index.insert(seed.clone(), 0);
    let mut level = 0..1;
    for _ in 0..radius {
        let start = members.len();
        // s·w in lexicographic order: first letter outermost
        for s in Letter::ALL {
            for i in level.clone() {
                let w = &members[i].word;
                if w.first() == Some(&s.inverse()) {
                    continue;
                }
                let point = alphabet.image(s).apply_rational(&members[i].point);
                let mut word = Vec::with_capacity(w.len() + 1);
                word.push(s);
                word.extend_from_slice(w);
                if let Some(&j) = index.get(&point) {
                    let fixer = reduce_letters(
                        invert_letters(&members[j].word).into_iter().chain(word.iter().copied()),
                    );
                    let display = format_letters(&fixer);
                    return (members, StabilizerStatus::Stabilized { word: fixer, display });
                }
                index.insert(point.clone(), members.len());
                members.push(OrbitMember { point, word });
            }
        }
        level = start..members.len();
    }
    (members, StabilizerStatus::Free)
}

/// Orbits of the seeds under `⟨a, b⟩` to word length `radius`. Seeds whose
/// explored balls meet an earlier orbit are merged into it.
pub fn orbit_decompose(
    a: &AffineElement,
    b: &AffineElement,
    seeds: &[RationalPoint],
    radius: usize,
) -> Vec<OrbitRecord> {
    let alphabet = Alphabet::new(a, b);
    let explored: Vec<(Vec<OrbitMember>, StabilizerStatus)> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|seed| {
                let alphabet = &alphabet;
                scope.spawn(move || explore(alphabet, seed, radius))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("orbit worker")).collect()
    });
    let mut records: Vec<OrbitRecord> = Vec::new();
    let mut owner: HashMap<RationalPoint, usize> = HashMap::new();
    for (i, (members, status)) in explored.into_iter().enumerate() {
        if let Some(&r) = members.iter().find_map(|m| owner.get(&m.point)) {
            records[r].seeds.push(i);
            continue;
        }
        let r = records.len();
        for m in &members {
            owner.insert(m.point.clone(), r);
        }
        records.push(OrbitRecord {
            representative: seeds[i].clone(),
            seeds: vec![i],
            radius,
            members,
            status,
        });
    }
    records
}
