//! Kazhdan lower bounds implied by a certified pair.

use serde::{Deserialize, Serialize};

use super::lanczos::{operator_norm_est, GapEstimate, NormConfig};
use super::operator::{schreier_operator, ActionMode};
use crate::arith::affine::AffineElement;
use crate::error::Result;
use crate::pingpong::FreePairCertificate;

/// `{1, T₁^±, T₂^±, e₁^±, e₂^±}` with `T₁ = [[1,1],[0,1]]`, `T₂ = [[1,0],[1,1]]`.
pub fn margulis_set() -> Vec<AffineElement> {
    [
        [1, 0, 0, 1, 0, 0],
        [1, 1, 0, 1, 0, 0],
        [1, -1, 0, 1, 0, 0],
        [1, 0, 1, 1, 0, 0],
        [1, 0, -1, 1, 0, 0],
        [1, 0, 0, 1, 1, 0],
        [1, 0, 0, 1, -1, 0],
        [1, 0, 0, 1, 0, 1],
        [1, 0, 0, 1, 0, -1],
    ]
    .into_iter()
    .map(|e| AffineElement::from_i64(e).expect("unimodular"))
    .collect()
}

/// `(1/4)/(2N)`: non-amenability `1/4` for `{a, b}`, divided by the word
/// length `N` of the pair in `S`, halved on passing to `ℓ²`.
pub fn implied_kazhdan(word_length: u64) -> f64 {
    0.25 / (2.0 * word_length as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KazhdanReport {
    pub nonamenability: f64,
    pub pair_word_length: u64,
    pub implied_lower: f64,
    pub measured: GapEstimate,
    /// Measured finite-quotient gap at least the implied bound.
    pub consistent: bool,
}

/// The implied bound for the certificate's generating set, next to the
/// measured gap of the plane action mod `n`.
pub fn l2_kazhdan_from_action(cert: &FreePairCertificate, n: u64, cfg: &NormConfig) -> Result<KazhdanReport> {
    let op = schreier_operator(&cert.generators, n, ActionMode::Plane)?;
    let measured = operator_norm_est(&op, cfg)?;
    let implied_lower = implied_kazhdan(cert.pair_word_length);
    Ok(KazhdanReport {
        nonamenability: 0.25,
        pair_word_length: cert.pair_word_length,
        implied_lower,
        consistent: measured.kazhdan_lower >= implied_lower,
        measured,
    })
}
