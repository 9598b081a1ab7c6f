//! `SA(2, ℤ/nℤ)`: reduction, closure and enumeration.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::affine::AffineElement;
use crate::error::{Error, Result};

/// `x ↦ θx + τ` over `ℤ/nℤ`, residues in `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientElement {
    pub modulus: u64,
    /// `[a11, a12, a21, a22]`.
    pub linear: [u64; 4],
    pub translation: [u64; 2],
}

fn residue(x: &BigInt, n: u64) -> u64 {
    x.mod_floor(&BigInt::from(n))
        .to_u64()
        .expect("residue below the modulus")
}

impl QuotientElement {
    pub fn identity(n: u64) -> Self {
        Self {
            modulus: n,
            linear: [1 % n, 0, 0, 1 % n],
            translation: [0, 0],
        }
    }

    pub fn reduce(g: &AffineElement, n: u64) -> Self {
        let m = &g.linear;
        let t = &g.translation;
        Self {
            modulus: n,
            linear: [
                residue(&m.a11, n),
                residue(&m.a12, n),
                residue(&m.a21, n),
                residue(&m.a22, n),
            ],
            translation: [residue(&t.x, n), residue(&t.y, n)],
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus)
    }

    pub fn det(&self) -> u64 {
        let n = self.modulus;
        let [a, b, c, d] = self.linear;
        (a * d % n + n - b * c % n) % n
    }

    /// `(self ∘ o)(x) = self(o(x))`.
    pub fn compose(&self, o: &Self) -> Self {
        let n = self.modulus;
        let [a, b, c, d] = self.linear;
        let [e, f, g, h] = o.linear;
        let [s, t] = o.translation;
        Self {
            modulus: n,
            linear: [
                (a * e + b * g) % n,
                (a * f + b * h) % n,
                (c * e + d * g) % n,
                (c * f + d * h) % n,
            ],
            translation: [
                (a * s + b * t + self.translation[0]) % n,
                (c * s + d * t + self.translation[1]) % n,
            ],
        }
    }

    pub fn apply(&self, x: u64, y: u64) -> (u64, u64) {
        let n = self.modulus;
        let [a, b, c, d] = self.linear;
        (
            (a * x + b * y + self.translation[0]) % n,
            (c * x + d * y + self.translation[1]) % n,
        )
    }

    /// Mixed-radix code in `0..n⁶`.
    pub fn code(&self) -> usize {
        let n = self.modulus as usize;
        let digits = [
            self.linear[0],
            self.linear[1],
            self.linear[2],
            self.linear[3],
            self.translation[0],
            self.translation[1],
        ];
        digits.iter().fold(0, |acc, &d| acc * n + d as usize)
    }
}

/// `φ_n(S)` as a list, repetitions kept (the measure is uniform on the multiset).
pub fn reduce_mod(s: &[AffineElement], n: u64) -> Vec<QuotientElement> {
    assert!(n >= 2, "modulus must be at least 2");
    s.iter().map(|g| QuotientElement::reduce(g, n)).collect()
}

/// `|SL(2, 𝔽_p)| = p(p² − 1)` and `|SA(2, 𝔽_p)| = p²·p(p² − 1)`.
pub fn sa2_order(p: u64) -> u64 {
    p * p * p * (p * p - 1)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "closure", rename_all = "snake_case")]
pub enum Closure {
    Surjective { order: u64 },
    ProperSubgroup { order: u64, group_order: u64 },
}

impl Closure {
    pub fn order(&self) -> u64 {
        match self {
            Closure::Surjective { order } | Closure::ProperSubgroup { order, .. } => *order,
        }
    }

    pub fn is_surjective(&self) -> bool {
        matches!(self, Closure::Surjective { .. })
    }
}

pub const DEFAULT_CLOSURE_LIMIT: u64 = 200_000;

/// `⟨φ_p(S)⟩` by breadth-first closure, compared with `|SA(2, 𝔽_p)|`.
pub fn closure_check(s: &[AffineElement], p: u64, limit: u64) -> Result<Closure> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let full = sa2_order(p);
    if full > limit {
        return Err(Error::ClosureBudgetExceeded { order: full, limit });
    }
    let gens = reduce_mod(s, p);
    let id = QuotientElement::identity(p);
    let mut seen = HashSet::from([id]);
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for s in &gens {
            let h = s.compose(&g);
            if seen.insert(h) {
                frontier.push(h);
            }
        }
    }
    let order = seen.len() as u64;
    Ok(if order == full {
        Closure::Surjective { order }
    } else {
        Closure::ProperSubgroup {
            order,
            group_order: full,
        }
    })
}

/// Every element of `SA(2, 𝔽_p)`, in code order.
pub fn enumerate_sa2(p: u64) -> Vec<QuotientElement> {
    let mut out = Vec::with_capacity(sa2_order(p) as usize);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p != 1 % p {
                        continue;
                    }
                    for x in 0..p {
                        for y in 0..p {
                            out.push(QuotientElement {
                                modulus: p,
                                linear: [a, b, c, d],
                                translation: [x, y],
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(e: [i64; 6]) -> AffineElement {
        AffineElement::from_i64(e).unwrap()
    }

    #[test]
    fn reductions() {
        for n in [2, 3, 7] {
            assert!(QuotientElement::reduce(&AffineElement::identity(), n).is_identity());
            assert!(QuotientElement::reduce(&el([1, 0, 0, 1, n as i64, 0]), n).is_identity());
        }
        let g = QuotientElement::reduce(&el([1, 2, 0, 1, 0, 1]), 2);
        assert_eq!(g.linear, [1, 0, 0, 1]);
        assert_eq!(g.translation, [0, 1]);
        let h = QuotientElement::reduce(&el([1, -2, 0, 1, -3, 5]), 4);
        assert_eq!(h.linear, [1, 2, 0, 1]);
        assert_eq!(h.translation, [1, 1]);
        assert_eq!(h.det(), 1);
    }

    #[test]
    fn group_orders() {
        assert_eq!(sa2_order(3), 216);
        assert_eq!(sa2_order(7), 49 * 336);
        assert_eq!(enumerate_sa2(3).len(), 216);
        assert_eq!(enumerate_sa2(2).len(), 24);
    }

    #[test]
    fn closures() {
        let sanov = [
            el([1, 0, 0, 1, 0, 0]),
            el([1, 2, 0, 1, 0, 0]),
            el([1, -2, 0, 1, 0, 0]),
            el([1, 0, 2, 1, 0, 1]),
            el([1, 0, -2, 1, 0, -1]),
        ];
        // (−1/2, 0) is fixed by every element, so (1, 0) is fixed mod 3
        assert_eq!(closure_check(&sanov, 3, DEFAULT_CLOSURE_LIMIT).unwrap().order(), 24);
        let mut plus = sanov.to_vec();
        plus.push(el([1, 0, 0, 1, 1, 0]));
        plus.push(el([1, 0, 0, 1, -1, 0]));
        assert_eq!(closure_check(&plus, 3, DEFAULT_CLOSURE_LIMIT).unwrap(), Closure::Surjective { order: 216 });
        let linear = [
            el([1, 0, 0, 1, 0, 0]),
            el([1, 2, 0, 1, 0, 0]),
            el([1, -2, 0, 1, 0, 0]),
            el([1, 0, 2, 1, 0, 0]),
            el([1, 0, -2, 1, 0, 0]),
        ];
        assert_eq!(closure_check(&linear, 3, DEFAULT_CLOSURE_LIMIT).unwrap().order(), 24);
        let translations = [
            el([1, 0, 0, 1, 0, 0]),
            el([1, 0, 0, 1, 1, 0]),
            el([1, 0, 0, 1, -1, 0]),
        ];
        let c = closure_check(&translations, 3, DEFAULT_CLOSURE_LIMIT).unwrap();
        assert!(!c.is_surjective() && c.order() <= 9);
        assert!(matches!(
            closure_check(&translations, 11, 1000),
            Err(Error::ClosureBudgetExceeded { .. })
        ));
        assert!(closure_check(&translations, 4, DEFAULT_CLOSURE_LIMIT).is_err());
    }
}
