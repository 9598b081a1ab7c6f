//! Plane-action norm against the Cayley-graph norm on `SA(2, 𝔽_p)`.

use serde::{Deserialize, Serialize};

use super::lanczos::{operator_norm_est, GapEstimate, NormConfig};
use super::operator::{schreier_operator, ActionMode};
use crate::arith::affine::AffineElement;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HerzReport {
    pub p: u64,
    pub plane: GapEstimate,
    pub cayley: GapEstimate,
    /// `‖λ⁰_{SA(2,𝔽_p)}(μ)‖ − ‖λ⁰_p(μ)‖`.
    pub slack: f64,
    pub tol: f64,
    pub holds: bool,
}

/// `‖λ⁰_p(μ)‖ <= ‖λ⁰_{SA(2,𝔽_p)}(μ)‖ + tol`, norms from the dense solver when
/// available and from Lanczos otherwise.
pub fn herz_compare(s: &[AffineElement], p: u64, cfg: &NormConfig) -> Result<HerzReport> {
    let plane = operator_norm_est(&schreier_operator(s, p, ActionMode::Plane)?, cfg)?;
    let cayley = operator_norm_est(&schreier_operator(s, p, ActionMode::Cayley)?, cfg)?;
    let best = |g: &GapEstimate| g.dense_norm.unwrap_or(g.norm_estimate);
    let slack = best(&cayley) - best(&plane);
    Ok(HerzReport {
        p,
        slack,
        tol: cfg.tol.max(1e-9),
        holds: slack >= -cfg.tol.max(1e-9),
        plane,
        cayley,
    })
}
