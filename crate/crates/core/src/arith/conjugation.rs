//! Beam search for an integral conjugator shrinking `‖θ(S)‖`.

use std::collections::HashSet;

use num_bigint::BigInt;

use super::interval::NormInterval;
use super::matrix::{lower_unipotent, upper_unipotent, Mat2};
use super::norm::op_norm;
use super::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeamConfig {
    pub width: usize,
    pub depth: usize,
}

impl Default for BeamConfig {
    fn default() -> Self {
        Self { width: 8, depth: 12 }
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub gamma: Mat2<BigInt>,
    pub reduced_norm: NormInterval,
    pub original_norm: NormInterval,
}

/// `max_{g∈S} ‖γgγ⁻¹‖²` is monotone in the Frobenius² for unimodular
/// matrices, so the search scores by the integer max Frobenius².
fn score(s: &[Mat2<BigInt>], gamma: &Mat2<BigInt>) -> BigInt {
    let inv = gamma.adjugate();
    s.iter()
        .map(|m| gamma.mul(m).mul(&inv).frobenius_sq())
        .max()
        .unwrap_or_default()
}

fn key(m: &Mat2<BigInt>) -> [BigInt; 4] {
    [m.a11.clone(), m.a12.clone(), m.a21.clone(), m.a22.clone()]
}

pub fn conjugate_set(s: &[Mat2<BigInt>], gamma: &Mat2<BigInt>) -> Vec<Mat2<BigInt>> {
    let inv = gamma.adjugate();
    s.iter().map(|m| gamma.mul(m).mul(&inv)).collect()
}

fn set_norm(s: &[Mat2<BigInt>], tol: &Rational) -> NormInterval {
    let i = super::norm::max_norm_index(s).expect("nonempty set");
    op_norm(&s[i], tol)
}

/// Greedy beam search over products of `L^±1`, `R^±1`; returns the identity
/// when nothing beats the input.
pub fn conjugation_reduce(s: &[Mat2<BigInt>], cfg: BeamConfig) -> Reduction {
    let tol = Rational::new(BigInt::from(1), BigInt::from(1u64 << 40));
    let moves = {
        let l = upper_unipotent();
        let r = lower_unipotent();
        [l.clone(), l.adjugate(), r.clone(), r.adjugate()]
    };
    let id = Mat2::<BigInt>::identity();
    let base = score(s, &id);
    let mut best = (base.clone(), id.clone());
    let mut frontier = vec![(base, id.clone())];
    let mut visited: HashSet<Mat2<BigInt>> = HashSet::from([id]);
    for _ in 0..cfg.depth {
        let mut cand = Vec::new();
        for (_, g) in &frontier {
            for m in &moves {
                let next = m.mul(g);
                if visited.insert(next.clone()) {
                    cand.push((score(s, &next), next));
                }
            }
        }
        if cand.is_empty() {
            break;
        }
        cand.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| key(&a.1).cmp(&key(&b.1))));
        cand.truncate(cfg.width);
        if cand[0].0 < best.0 {
            best = cand[0].clone();
        }
        frontier = cand;
    }
    let gamma = best.1;
    Reduction {
        reduced_norm: set_norm(&conjugate_set(s, &gamma), &tol),
        original_norm: set_norm(s, &tol),
        gamma,
    }
}
