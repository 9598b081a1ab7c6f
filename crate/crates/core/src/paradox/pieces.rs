//! The four-piece decomposition of free orbits by first letters.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::orbits::OrbitRecord;
use crate::arith::affine::{AffineElement, RationalPoint};
use crate::arith::rational::{ratstr, ratvec, Rational};
use crate::error::{Error, Result};
use crate::verify::words::{format_letters, Letter};

/// Piece of a canonical word: `A₁ = W(a) ∪ {1, a⁻¹, a⁻², …}`,
/// `A₂ = W(a⁻¹) ∖ {a⁻ᵏ}`, `A₃ = W(b)`, `A₄ = W(b⁻¹)`.
pub fn piece_of(word: &[Letter]) -> usize {
    if word.iter().all(|&l| l == Letter::AInv) {
        return 0;
    }
    match word[0] {
        Letter::A => 0,
        Letter::AInv => 1,
        Letter::B => 2,
        Letter::BInv => 3,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Multiplier {
    #[serde(rename = "1")]
    One,
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignedPoint {
    #[serde(with = "ratvec")]
    pub point: RationalPoint,
    pub orbit: usize,
    pub word: String,
    pub piece: usize,
    pub interior: bool,
}

/// One union `g_i A_i ∪ g_j A_j` checked against the interior sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCheck {
    pub terms: Vec<(Multiplier, usize)>,
    pub interior_points: usize,
    pub covered_once: usize,
    pub missed: usize,
    pub covered_twice_or_more: usize,
}

impl CoverCheck {
    pub fn exact(&self) -> bool {
        self.missed == 0 && self.covered_twice_or_more == 0 && self.covered_once == self.interior_points
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceAssignment {
    pub radius: usize,
    pub points: Vec<AssignedPoint>,
    /// Indices into `points`.
    pub pieces: [Vec<usize>; 4],
    pub disjoint: bool,
    pub covers: [CoverCheck; 2],
    /// Fraction of the sample lying in the outer shell `|w| = radius`.
    #[serde(with = "ratstr")]
    pub leakage: Rational,
}

impl PieceAssignment {
    pub fn pass(&self) -> bool {
        self.disjoint && self.covers.iter().all(CoverCheck::exact)
    }

    pub fn interior_count(&self) -> usize {
        self.points.iter().filter(|p| p.interior).count()
    }

    /// `x y piece` rows for plotting.
    pub fn plot_data(&self) -> String {
        let mut out = String::from("# x y piece\n");
        for p in &self.points {
            let _ = writeln!(
                out,
                "{} {} {}",
                crate::arith::rational::to_f64(&p.point.x),
                crate::arith::rational::to_f64(&p.point.y),
                p.piece + 1
            );
        }
        out
    }
}

fn cover(
    terms: &[(Multiplier, usize)],
    a: &AffineElement,
    b: &AffineElement,
    points: &[AssignedPoint],
    pieces: &[Vec<usize>; 4],
    index: &HashMap<&RationalPoint, usize>,
) -> CoverCheck {
    let mut hits = vec![0usize; points.len()];
    for &(g, piece) in terms {
        for &i in &pieces[piece] {
            let y = match g {
                Multiplier::One => points[i].point.clone(),
                Multiplier::A => a.apply_rational(&points[i].point),
                Multiplier::B => b.apply_rational(&points[i].point),
            };
            if let Some(&j) = index.get(&y) {
                hits[j] += 1;
            }
        }
    }
    let mut check = CoverCheck {
        terms: terms.to_vec(),
        interior_points: 0,
        covered_once: 0,
        missed: 0,
        covered_twice_or_more: 0,
    };
    for (p, &h) in points.iter().zip(&hits) {
        if !p.interior {
            continue;
        }
        check.interior_points += 1;
        match h {
            0 => check.missed += 1,
            1 => check.covered_once += 1,
            _ => check.covered_twice_or_more += 1,
        }
    }
    check
}

/// Assigns every explored point to a piece by the first letter of its
/// canonical word and verifies `A₁ ∪ aA₂ = A₃ ∪ bA₄` on the interior points.
pub fn dekker_pieces(
    a: &AffineElement,
    b: &AffineElement,
    orbits: &[OrbitRecord],
) -> Result<PieceAssignment> {
    if let Some(o) = orbits.iter().find(|o| !o.is_free()) {
        return Err(Error::Invalid(format!(
            "orbit of seed {} is stabilized; pieces need free orbits",
            o.seeds[0]
        )));
    }
    let radius = orbits.first().map_or(0, |o| o.radius);
    let mut points = Vec::new();
    let mut pieces: [Vec<usize>; 4] = Default::default();
    for (k, o) in orbits.iter().enumerate() {
        for m in &o.members {
            let piece = piece_of(&m.word);
            pieces[piece].push(points.len());
            points.push(AssignedPoint {
                point: m.point.clone(),
                orbit: k,
                word: format_letters(&m.word),
                piece,
                interior: m.word.len() < o.radius,
            });
        }
    }
    let mut index: HashMap<&RationalPoint, usize> = HashMap::new();
    let mut disjoint = true;
    for (i, p) in points.iter().enumerate() {
        disjoint &= index.insert(&p.point, i).is_none();
    }
    let covers = [
        cover(&[(Multiplier::One, 0), (Multiplier::A, 1)], a, b, &points, &pieces, &index),
        cover(&[(Multiplier::One, 2), (Multiplier::B, 3)], a, b, &points, &pieces, &index),
    ];
    let shell = points.iter().filter(|p| !p.interior).count();
    let leakage = if points.is_empty() {
        Rational::from_integer(0.into())
    } else {
        Rational::new(shell.into(), points.len().into())
    };
    Ok(PieceAssignment {
        radius,
        points,
        pieces,
        disjoint,
        covers,
        leakage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::matrix::Vec2;
    use crate::arith::rational::rat;
    use crate::paradox::orbit_decompose;

    #[test]
    fn pieces_by_first_letter() {
        use Letter::*;
        assert_eq!(piece_of(&[]), 0);
        assert_eq!(piece_of(&[AInv, AInv]), 0);
        assert_eq!(piece_of(&[AInv, B]), 1);
        assert_eq!(piece_of(&[A, B]), 0);
        assert_eq!(piece_of(&[B]), 2);
        assert_eq!(piece_of(&[BInv, A]), 3);
    }

    #[test]
    fn single_orbit_covers_exactly() {
        let a = AffineElement::from_i64([1, 2, 0, 1, 0, 0]).unwrap();
        let b = AffineElement::from_i64([1, 0, 2, 1, 1, 0]).unwrap();
        let orbits = orbit_decompose(&a, &b, &[Vec2::new(rat(1, 3), rat(1, 7))], 5);
        let p = dekker_pieces(&a, &b, &orbits).unwrap();
        assert!(p.pass(), "{:?}", p.covers);
        assert_eq!(p.interior_count(), 2 * (81 - 1) + 1);
        assert_eq!(p.leakage, rat(4 * 81, 2 * 243 - 1));
    }

    #[test]
    fn empty_input_is_vacuous() {
        let a = AffineElement::identity();
        let p = dekker_pieces(&a, &a, &[]).unwrap();
        assert!(p.pass());
        assert!(p.points.is_empty());
    }

    #[test]
    fn stabilized_orbit_is_rejected() {
        let a = AffineElement::from_i64([1, 2, 0, 1, 0, 0]).unwrap();
        let orbits = orbit_decompose(&a, &a, &[Vec2::new(rat(1, 3), rat(1, 7))], 3);
        assert!(!orbits[0].is_free());
        assert!(matches!(dekker_pieces(&a, &a, &orbits), Err(Error::Invalid(_))));
    }
}
