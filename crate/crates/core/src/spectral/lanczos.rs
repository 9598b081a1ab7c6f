//! Norm of a Schreier operator on the mean-zero subspace.

use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::operator::{ActionMode, SchreierOperator};
use crate::error::{Error, Result};

/// State spaces up to this size also get a dense eigensolver cross-check.
pub const DENSE_CHECK_LIMIT: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub dense_limit: usize,
}

impl Default for NormConfig {
    fn default() -> Self {
        Self {
            tol: 1e-11,
            max_iter: 600,
            seed: 0,
            dense_limit: DENSE_CHECK_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapEstimate {
    pub modulus: u64,
    pub mode: ActionMode,
    pub states: usize,
    /// `|S|` counted with multiplicity.
    pub weight: usize,
    pub connected: bool,
    /// `‖P‖` on `ℓ²₀`: the largest `|θ|` over converged Ritz values.
    pub norm_estimate: f64,
    /// Ritz value plus residual norm, capped at 1.
    pub certified_upper: f64,
    /// `1 − certified_upper`.
    pub kazhdan_lower: f64,
    pub iterations: usize,
    pub residual: f64,
    pub dense_norm: Option<f64>,
}

impl GapEstimate {
    /// `κ̂ ≥ κ̂²/(16|S|)`, which must hold for every `κ̂ ∈ [0, 1]`.
    pub fn sandwich_holds(&self) -> bool {
        let k = self.kazhdan_lower;
        (0.0..=1.0).contains(&k) && k >= k * k / (16.0 * self.weight as f64)
    }

    pub fn dense_agrees(&self, tol: f64) -> Option<bool> {
        self.dense_norm.map(|d| (d - self.norm_estimate).abs() <= tol)
    }
}

pub const GAP_TABLE_HEADER: &str = "n,mode,states,weight,norm,certified_upper,kazhdan_lower,iterations,residual,connected";

/// One delimited row per estimate.
pub fn gap_table(rows: &[GapEstimate]) -> String {
    let mut out = String::from(GAP_TABLE_HEADER);
    out.push('\n');
    for r in rows {
        let mode = match r.mode {
            ActionMode::Plane => "plane",
            ActionMode::Cayley => "cayley",
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{:.15e},{:.15e},{:.15e},{},{:.3e},{}",
            r.modulus,
            mode,
            r.states,
            r.weight,
            r.norm_estimate,
            r.certified_upper,
            r.kazhdan_lower,
            r.iterations,
            r.residual,
            r.connected
        );
    }
    out
}

fn deflate(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|x| *x -= mean);
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(y, x)| *y += alpha * x);
}

fn tridiagonal_eigen(alpha: &[f64], beta: &[f64]) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let k = alpha.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    SymmetricEigen::new(t)
}

/// `‖Py − θy‖` for the Ritz vector of column `col`.
fn ritz_residual(op: &SchreierOperator, basis: &[Vec<f64>], vectors: &DMatrix<f64>, col: usize, theta: f64) -> f64 {
    let n = op.dim();
    let mut y = vec![0.0; n];
    for (j, v) in basis.iter().enumerate() {
        axpy(vectors[(j, col)], v, &mut y);
    }
    deflate(&mut y);
    let ny = norm(&y);
    y.iter_mut().for_each(|x| *x /= ny);
    let mut py = vec![0.0; n];
    op.apply(&y, &mut py);
    deflate(&mut py);
    axpy(-theta, &y, &mut py);
    norm(&py)
}

/// Largest eigenvalue modulus of the dense mean-zero matrix.
pub fn dense_norm(op: &SchreierOperator) -> f64 {
    op.dense_mean_zero()
        .symmetric_eigenvalues()
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Lanczos with full reorthogonalization on `ℓ²₀`, started from all-ones
/// perturbed by the seed. Both ends of the spectrum are tracked since the
/// norm may sit at the bottom.
pub fn operator_norm_est(op: &SchreierOperator, cfg: &NormConfig) -> Result<GapEstimate> {
    assert!(cfg.tol > 0.0, "tolerance must be positive");
    let n = op.dim();
    let connected = op.is_connected();
    let dense = (n <= cfg.dense_limit).then(|| dense_norm(op));
    let base = GapEstimate {
        modulus: op.modulus,
        mode: op.mode,
        states: n,
        weight: op.weight(),
        connected,
        norm_estimate: 1.0,
        certified_upper: 1.0,
        kazhdan_lower: 0.0,
        iterations: 0,
        residual: 0.0,
        dense_norm: dense,
    };
    if !connected {
        // the indicator of a component minus its mean is invariant
        return Ok(base);
    }
    if n <= 1 {
        return Ok(GapEstimate {
            norm_estimate: 0.0,
            certified_upper: 0.0,
            kazhdan_lower: 1.0,
            ..base
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut v: Vec<f64> = (0..n).map(|_| 1.0 + rng.gen_range(-0.5..0.5)).collect();
    deflate(&mut v);
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);

    let max_dim = (n - 1).min(cfg.max_iter);
    let mut basis: Vec<Vec<f64>> = vec![v];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    loop {
        let j = basis.len() - 1;
        op.apply(&basis[j], &mut w);
        deflate(&mut w);
        let a = dot(&w, &basis[j]);
        alpha.push(a);
        axpy(-a, &basis[j], &mut w);
        if j > 0 {
            axpy(-beta[j - 1], &basis[j - 1], &mut w);
        }
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                axpy(-c, q, &mut w);
            }
        }
        let b = norm(&w);
        let k = alpha.len();
        let invariant = b <= 1e-14 || k == max_dim.max(1) || k >= n - 1;
        if k % 5 == 0 || invariant {
            let eig = tridiagonal_eigen(&alpha, &beta);
            let (imin, imax) = extreme_indices(&eig.eigenvalues);
            let est = |i: usize| (b * eig.eigenvectors[(k - 1, i)]).abs();
            let estimate = est(imin).max(est(imax));
            if estimate <= cfg.tol || invariant {
                let lo = eig.eigenvalues[imin];
                let hi = eig.eigenvalues[imax];
                let r_lo = ritz_residual(op, &basis, &eig.eigenvectors, imin, lo);
                let r_hi = ritz_residual(op, &basis, &eig.eigenvectors, imax, hi);
                let residual = r_lo.max(r_hi);
                if residual > cfg.tol.max(1e-12) && k >= max_dim && k < n - 1 {
                    return Err(Error::NoConvergence {
                        iterations: k,
                        residual,
                    });
                }
                let norm_estimate = lo.abs().max(hi.abs());
                let certified_upper = (hi.abs() + r_hi).max(lo.abs() + r_lo).min(1.0);
                return Ok(GapEstimate {
                    norm_estimate,
                    certified_upper,
                    kazhdan_lower: 1.0 - certified_upper,
                    iterations: k,
                    residual,
                    ..base
                });
            }
            if k >= max_dim {
                return Err(Error::NoConvergence {
                    iterations: k,
                    residual: estimate,
                });
            }
        }
        beta.push(b);
        w.iter_mut().for_each(|x| *x /= b);
        basis.push(std::mem::replace(&mut w, vec![0.0; n]));
    }
}

fn extreme_indices(values: &nalgebra::DVector<f64>) -> (usize, usize) {
    let mut imin = 0;
    let mut imax = 0;
    for (i, &x) in values.iter().enumerate() {
        if x < values[imin] {
            imin = i;
        }
        if x > values[imax] {
            imax = i;
        }
    }
    (imin, imax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::affine::AffineElement;
    use crate::spectral::operator::schreier_operator;

    fn el(e: [i64; 6]) -> AffineElement {
        AffineElement::from_i64(e).unwrap()
    }

    fn translations() -> Vec<AffineElement> {
        vec![
            el([1, 0, 0, 1, 0, 0]),
            el([1, 0, 0, 1, 1, 0]),
            el([1, 0, 0, 1, -1, 0]),
            el([1, 0, 0, 1, 0, 1]),
            el([1, 0, 0, 1, 0, -1]),
        ]
    }

    #[test]
    fn torus_walk_matches_closed_form() {
        // eigenvalues (1 + 2cos(2πj/n) + 2cos(2πk/n))/5; the norm is at (1, 0)
        // or at the most negative frequency
        let n = 7u64;
        let op = schreier_operator(&translations(), n, ActionMode::Plane).unwrap();
        let est = operator_norm_est(&op, &NormConfig::default()).unwrap();
        let mut oracle = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                if j == 0 && k == 0 {
                    continue;
                }
                let c = |m: u64| (2.0 * std::f64::consts::PI * m as f64 / n as f64).cos();
                oracle = oracle.max(((1.0 + 2.0 * c(j) + 2.0 * c(k)) / 5.0).abs());
            }
        }
        assert!((est.norm_estimate - oracle).abs() < 1e-9, "{} vs {oracle}", est.norm_estimate);
        assert!(est.certified_upper >= est.norm_estimate);
        assert!(est.sandwich_holds());
        assert_eq!(est.dense_agrees(1e-9), Some(true));
    }

    #[test]
    fn disconnected_action_has_norm_one() {
        let op = schreier_operator(&[AffineElement::identity()], 3, ActionMode::Plane).unwrap();
        let est = operator_norm_est(&op, &NormConfig::default()).unwrap();
        assert_eq!(est.norm_estimate, 1.0);
        assert_eq!(est.kazhdan_lower, 0.0);
        assert!(!est.connected);
        assert!((est.dense_norm.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn table_rows() {
        let op = schreier_operator(&translations(), 3, ActionMode::Plane).unwrap();
        let est = operator_norm_est(&op, &NormConfig::default()).unwrap();
        let t = gap_table(&[est]);
        assert!(t.starts_with(GAP_TABLE_HEADER));
        assert_eq!(t.lines().count(), 2);
        assert_eq!(gap_table(&[]).lines().count(), 1);
    }
}
