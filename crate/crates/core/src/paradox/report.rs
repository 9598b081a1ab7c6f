//! Displacement of sampled measures under the certified pair.

use std::collections::HashSet;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::pieces::{Multiplier, PieceAssignment};
use crate::arith::affine::{AffineElement, RationalPoint};
use crate::arith::rational::{ratstr, ratvec, Rational};
use crate::error::Result;
use crate::pingpong::FreePairCertificate;
use crate::verify::words::{enumerate_reduced, DEFAULT_WORD_CAP};
use crate::verify::TableSets;

fn rat(n: usize, d: usize) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `‖g_*μ − μ‖_TV` for `μ` uniform on `sample`: the fraction of the sample
/// that `g` moves outside it.
pub fn uniform_displacement(g: &AffineElement, sample: &HashSet<&RationalPoint>) -> Rational {
    if sample.is_empty() {
        return rat(0, 1);
    }
    let out = sample
        .iter()
        .filter(|p| !sample.contains(&g.apply_rational(p)))
        .count();
    rat(out, sample.len())
}

/// `2μ(I) <= μ(A₁ ∪ aA₂) + μ(A₃ ∪ bA₄) <= 1 + Σ|μ(gᵢAᵢ) − μ(Aᵢ)|` on the sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceChain {
    #[serde(with = "ratstr")]
    pub interior_mass_twice: Rational,
    #[serde(with = "ratstr")]
    pub union_mass: Rational,
    #[serde(with = "ratstr")]
    pub one_plus_moves: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NStepRow {
    pub n: usize,
    /// Max over reduced words of length `<= n`.
    #[serde(with = "ratstr")]
    pub sup_ball: Rational,
    #[serde(with = "ratstr")]
    pub n_times_sup_generators: Rational,
    pub holds: bool,
}

/// The point mass at the fixed point of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointMassReport {
    #[serde(with = "ratvec")]
    pub point: RationalPoint,
    pub in_a_repelling: bool,
    pub in_b_repelling: bool,
    #[serde(with = "ratstr")]
    pub displacement_a: Rational,
    #[serde(with = "ratstr")]
    pub displacement_b: Rational,
    pub at_least_half: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonamenabilityReport {
    /// Two pieces per cover: `1/(2+2)`.
    #[serde(with = "ratstr")]
    pub affine_constant: Rational,
    /// Disjoint ping-pong tables: `1/2`.
    #[serde(with = "ratstr")]
    pub linear_constant: Rational,
    pub sample_size: usize,
    pub interior: usize,
    #[serde(with = "ratstr")]
    pub leakage: Rational,
    #[serde(with = "ratstr")]
    pub displacement_a: Rational,
    #[serde(with = "ratstr")]
    pub displacement_b: Rational,
    #[serde(with = "ratstr")]
    pub displacement_sup: Rational,
    /// `(1 − μ(I))/2`; the sample bound is `1/4 − boundary_term`.
    #[serde(with = "ratstr")]
    pub boundary_term: Rational,
    pub bound_holds: bool,
    pub chain: PieceChain,
    pub n_step: Vec<NStepRow>,
    pub point_mass: PointMassReport,
}

impl NonamenabilityReport {
    pub fn pass(&self) -> bool {
        self.bound_holds
            && self.chain.holds
            && self.n_step.iter().all(|r| r.holds)
            && self.point_mass.at_least_half
    }
}

fn piece_chain(a: &AffineElement, b: &AffineElement, asg: &PieceAssignment, sample: &HashSet<&RationalPoint>) -> PieceChain {
    let n = asg.points.len().max(1);
    let interior = asg.interior_count();
    let image_mass = |g: Multiplier, piece: usize| {
        let hit = asg.pieces[piece]
            .iter()
            .filter(|&&i| {
                let p = &asg.points[i].point;
                match g {
                    Multiplier::One => true,
                    Multiplier::A => sample.contains(&a.apply_rational(p)),
                    Multiplier::B => sample.contains(&b.apply_rational(p)),
                }
            })
            .count();
        rat(hit, n)
    };
    let mut union_mass = rat(0, 1);
    let mut moves = rat(0, 1);
    for c in &asg.covers {
        for &(g, piece) in &c.terms {
            let moved = image_mass(g, piece);
            let own = rat(asg.pieces[piece].len(), n);
            moves += (&moved - &own).abs();
            union_mass += moved;
        }
    }
    let twice = rat(2 * interior, n);
    let one_plus_moves = rat(1, 1) + moves;
    PieceChain {
        holds: twice <= union_mass && union_mass <= one_plus_moves,
        interior_mass_twice: twice,
        union_mass,
        one_plus_moves,
    }
}

fn point_mass(cert: &FreePairCertificate) -> PointMassReport {
    use crate::verify::Letter;
    let x = cert.gamma.inverse_elem().apply_rational(&cert.frame.origin);
    let m = TableSets::from_certificate(cert).classify(&x);
    let moved = |g: &AffineElement| rat(usize::from(g.apply_rational(&x) != x), 1);
    let displacement_a = moved(&cert.a_final);
    let displacement_b = moved(&cert.b_final);
    PointMassReport {
        in_a_repelling: m.minus[Letter::A.index()] && m.minus[Letter::AInv.index()],
        in_b_repelling: m.minus[Letter::B.index()] || m.minus[Letter::BInv.index()],
        at_least_half: displacement_a.clone().max(displacement_b.clone()) >= rat(1, 2),
        point: x,
        displacement_a,
        displacement_b,
    }
}

/// Instantiates the paradoxical-to-non-amenable chain on the uniform measure
/// of the sampled orbits, the `N`-step triangle inequality for `N <= n_max`,
/// and the point mass at the fixed point of `a`.
pub fn nonamenability_report(
    cert: &FreePairCertificate,
    assignment: &PieceAssignment,
    n_max: usize,
) -> Result<NonamenabilityReport> {
    let (a, b) = (&cert.a_final, &cert.b_final);
    let sample: HashSet<&RationalPoint> = assignment.points.iter().map(|p| &p.point).collect();
    let displacement_a = uniform_displacement(a, &sample);
    let displacement_b = uniform_displacement(b, &sample);
    let displacement_sup = displacement_a.clone().max(displacement_b.clone());
    let n = assignment.points.len().max(1);
    let interior = assignment.interior_count();
    let boundary_term = rat(n - interior.min(n), 2 * n);
    let quarter = rat(1, 4);
    let bound_holds = displacement_sup >= &quarter - &boundary_term;

    let words = enumerate_reduced(a, b, n_max, DEFAULT_WORD_CAP)?;
    let sup_generators = words
        .iter()
        .filter(|w| w.len() == 1)
        .map(|w| uniform_displacement(&w.evaluated, &sample))
        .max()
        .unwrap_or_else(|| rat(0, 1));
    let mut n_step = Vec::new();
    let mut sup_ball = rat(0, 1);
    for k in 1..=n_max {
        for w in words.iter().filter(|w| w.len() == k) {
            sup_ball = sup_ball.max(uniform_displacement(&w.evaluated, &sample));
        }
        let bound = &sup_generators * rat(k, 1);
        n_step.push(NStepRow {
            n: k,
            holds: sup_ball <= bound,
            sup_ball: sup_ball.clone(),
            n_times_sup_generators: bound,
        });
    }

    Ok(NonamenabilityReport {
        affine_constant: quarter,
        linear_constant: rat(1, 2),
        sample_size: assignment.points.len(),
        interior,
        leakage: assignment.leakage.clone(),
        chain: piece_chain(a, b, assignment, &sample),
        displacement_a,
        displacement_b,
        displacement_sup,
        boundary_term,
        bound_holds,
        n_step,
        point_mass: point_mass(cert),
    })
}
