//! Averaging operators `π(μ_S)` on finite `SA(2, ℤ/nℤ)`-sets.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::quotient::{enumerate_sa2, is_prime, reduce_mod, sa2_order, QuotientElement};
use crate::arith::affine::AffineElement;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionMode {
    /// `(ℤ/nℤ)²`, the quasi-regular representation on `G/H_n`.
    Plane,
    /// `SA(2, 𝔽_p)` acting on itself by left multiplication.
    Cayley,
}

pub const CAYLEY_MAX_PRIME: u64 = 7;

/// `(Pf)(x) = |S|⁻¹ Σ_s f(s·x)`, stored as one permutation per element of the multiset.
#[derive(Clone, Debug)]
pub struct SchreierOperator {
    pub modulus: u64,
    pub mode: ActionMode,
    pub generators: Vec<QuotientElement>,
    perms: Vec<Vec<u32>>,
}

impl SchreierOperator {
    pub fn dim(&self) -> usize {
        self.perms.first().map_or(0, Vec::len)
    }

    pub fn weight(&self) -> usize {
        self.perms.len()
    }

    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        let k = self.perms.len() as f64;
        out.iter_mut().for_each(|o| *o = 0.0);
        for p in &self.perms {
            for (o, &j) in out.iter_mut().zip(p) {
                *o += v[j as usize];
            }
        }
        out.iter_mut().for_each(|o| *o /= k);
    }

    /// Nonzero entries as multiplicities: `P[x][y] = count/|S|`.
    pub fn counts(&self) -> HashMap<(u32, u32), u32> {
        let mut c = HashMap::new();
        for p in &self.perms {
            for (x, &y) in p.iter().enumerate() {
                *c.entry((x as u32, y)).or_insert(0) += 1;
            }
        }
        c
    }

    /// Exact `P = Pᵀ` on the integer multiplicities.
    pub fn is_symmetric(&self) -> bool {
        let c = self.counts();
        c.iter().all(|(&(x, y), &n)| c.get(&(y, x)) == Some(&n))
    }

    /// Connected components of the Schreier graph.
    pub fn components(&self) -> usize {
        let n = self.dim();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for p in &self.perms {
                    let y = p[x] as usize;
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    /// Dense matrix of `P` minus the projection onto constants.
    pub fn dense_mean_zero(&self) -> nalgebra::DMatrix<f64> {
        let n = self.dim();
        let k = self.perms.len() as f64;
        let mut m = nalgebra::DMatrix::from_element(n, n, -1.0 / n as f64);
        for p in &self.perms {
            for (x, &y) in p.iter().enumerate() {
                m[(x, y as usize)] += 1.0 / k;
            }
        }
        m
    }
}

/// Builds `π(μ_S)` on `(ℤ/nℤ)²` or on the Cayley graph of `SA(2, 𝔽_p)`.
pub fn schreier_operator(s: &[AffineElement], n: u64, mode: ActionMode) -> Result<SchreierOperator> {
    if n < 2 {
        return Err(Error::Invalid(format!("modulus {n} below 2")));
    }
    if s.is_empty() {
        return Err(Error::Invalid("empty generating set".into()));
    }
    let generators = reduce_mod(s, n);
    let perms = match mode {
        ActionMode::Plane => generators
            .iter()
            .map(|g| {
                (0..n * n)
                    .map(|i| {
                        let (x, y) = g.apply(i % n, i / n);
                        (x + n * y) as u32
                    })
                    .collect()
            })
            .collect(),
        ActionMode::Cayley => {
            if !is_prime(n) {
                return Err(Error::Invalid(format!("cayley mode needs a prime modulus, got {n}")));
            }
            if n > CAYLEY_MAX_PRIME {
                return Err(Error::ClosureBudgetExceeded {
                    order: sa2_order(n),
                    limit: sa2_order(CAYLEY_MAX_PRIME),
                });
            }
            let elements = enumerate_sa2(n);
            let mut index = vec![u32::MAX; (n as usize).pow(6)];
            for (i, e) in elements.iter().enumerate() {
                index[e.code()] = i as u32;
            }
            generators
                .iter()
                .map(|g| {
                    elements
                        .iter()
                        .map(|e| index[g.compose(e).code()])
                        .collect()
                })
                .collect()
        }
    };
    Ok(SchreierOperator {
        modulus: n,
        mode,
        generators,
        perms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(e: [i64; 6]) -> AffineElement {
        AffineElement::from_i64(e).unwrap()
    }

    fn splus() -> Vec<AffineElement> {
        vec![
            el([1, 0, 0, 1, 0, 0]),
            el([1, 2, 0, 1, 0, 0]),
            el([1, -2, 0, 1, 0, 0]),
            el([1, 0, 2, 1, 0, 1]),
            el([1, 0, -2, 1, 0, -1]),
            el([1, 0, 0, 1, 1, 0]),
            el([1, 0, 0, 1, -1, 0]),
        ]
    }

    #[test]
    fn plane_operator_mod_two() {
        let op = schreier_operator(&splus(), 2, ActionMode::Plane).unwrap();
        assert_eq!(op.dim(), 4);
        assert!(op.is_symmetric());
        assert!(op.is_connected());
        // rows sum to one
        let mut out = vec![0.0; 4];
        op.apply(&[1.0; 4], &mut out);
        assert!(out.iter().all(|&x| (x - 1.0).abs() < 1e-15));
        // every entry is k/|S|
        let total: u32 = op.counts().values().sum();
        assert_eq!(total as usize, 4 * 7);
    }

    #[test]
    fn identity_only_is_disconnected() {
        let op = schreier_operator(&[AffineElement::identity()], 5, ActionMode::Plane).unwrap();
        assert_eq!(op.components(), 25);
        let mut out = vec![0.0; 25];
        let v: Vec<f64> = (0..25).map(f64::from).collect();
        op.apply(&v, &mut out);
        assert_eq!(out, v);
    }

    #[test]
    fn cayley_mode() {
        let op = schreier_operator(&splus(), 3, ActionMode::Cayley).unwrap();
        assert_eq!(op.dim(), 216);
        assert!(op.is_symmetric() && op.is_connected());
        assert!(schreier_operator(&splus(), 11, ActionMode::Cayley).is_err());
        assert!(schreier_operator(&splus(), 4, ActionMode::Cayley).is_err());
    }
}
