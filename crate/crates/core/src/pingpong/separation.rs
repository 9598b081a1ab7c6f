//! Choice among the three separated configurations `W₁`, `W₂`, `W₃`.

use serde::{Deserialize, Serialize};

use crate::arith::affine::{unique_fixed_point, AffineElement, RationalPoint};
use crate::arith::eigen::eigenvectors_arith;
use crate::arith::interval::NormInterval;
use num_traits::Signed;
use crate::arith::matrix::Vec2;
use crate::arith::projective::{fs_distance_sq, lift};
use crate::arith::quad::QuadNumber;
use crate::arith::rational::ratvec;
use crate::error::{Error, Result};

/// Exponent budgets; `N₃`, `N₄`, `N₅` derive from `N₁`, `N₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub n4: u64,
    pub n5: u64,
}

impl Budgets {
    pub fn new(n1: u64, n2: u64, n4: Option<u64>) -> Self {
        let n3 = 30 * n1 + 2 * n2;
        Self {
            n1,
            n2,
            n3,
            n4: n4.unwrap_or(4 * n3 + 3 * n1),
            n5: 16 * (n1 + n2) * (n1 + n3),
        }
    }

    pub fn ell_apriori(&self) -> u64 {
        20 * (self.n1 + self.n2 + self.n3)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    /// 1, 2 or 3.
    pub case: u8,
    pub a: AffineElement,
    pub h: AffineElement,
    /// `hφ(a) − φ(a)`, then `𝒱`, then `θ(h)𝒱`.
    pub vectors: Vec<Vec2<QuadNumber>>,
    /// `d²` for every pair `(i, j)`, `i < j`, in row order.
    pub distances: Vec<QuadNumber>,
    pub min_d2: QuadNumber,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub a0: AffineElement,
    pub h0: AffineElement,
    pub b0: AffineElement,
    #[serde(with = "ratvec")]
    pub phi_a0: RationalPoint,
    #[serde(with = "ratvec")]
    pub phi_b0: RationalPoint,
    pub cases: Vec<CaseReport>,
    pub chosen: u8,
    pub theta_s_norm: NormInterval,
    pub theta_h_norm: NormInterval,
    pub lambda_a0: QuadNumber,
    /// `min d² ≥ ‖θ(S)‖^{−2N₅}` when decided.
    pub n5_bound_holds: Option<bool>,
    pub general_position: bool,
}

impl GeometryReport {
    pub fn chosen_case(&self) -> &CaseReport {
        &self.cases[self.chosen as usize - 1]
    }
}

/// Pair `(a, h)` for a case; `b = h a h⁻¹`.
pub fn case_pair(
    case: u8,
    a0: &AffineElement,
    h0: &AffineElement,
    n4: u64,
) -> (AffineElement, AffineElement) {
    let b0 = h0.compose(a0).compose(&h0.inverse_elem());
    match case {
        1 => (a0.clone(), h0.clone()),
        2 => (a0.clone(), b0.pow(n4)),
        _ => (b0, a0.pow(n4)),
    }
}

/// The five vectors of `W` for `(a, h)` and their pairwise `d²`.
pub fn case_report(case: u8, a: &AffineElement, h: &AffineElement) -> Result<CaseReport> {
    let e = eigenvectors_arith(&a.linear)?;
    let phi = unique_fixed_point(a).ok_or(Error::DegenerateSeparation)?;
    let hq = h.linear.map(|x| QuadNumber::from_bigint(x.clone()));
    let vectors = vec![
        lift(&h.apply_rational(&phi).sub(&phi)),
        e.u.clone(),
        e.v.clone(),
        hq.apply(&e.u),
        hq.apply(&e.v),
    ];
    let mut distances = Vec::new();
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            distances.push(if vectors[i].is_zero() || vectors[j].is_zero() {
                QuadNumber::from_int(0)
            } else {
                fs_distance_sq(&vectors[i], &vectors[j])?
            });
        }
    }
    let min_d2 = distances
        .iter()
        .cloned()
        .reduce(|a, b| if b < a { b } else { a })
        .expect("ten pairs");
    Ok(CaseReport {
        case,
        a: a.clone(),
        h: h.clone(),
        vectors,
        distances,
        min_d2,
    })
}

/// Index (1-based) of the largest minimum; ties keep the earlier case.
pub fn argmax_case(cases: &[CaseReport]) -> u8 {
    let mut best = 0;
    for (i, c) in cases.iter().enumerate().skip(1) {
        if c.min_d2 > cases[best].min_d2 {
            best = i;
        }
    }
    cases[best].case
}

/// `x ≥ n^{−2k}` decided on enclosures, `None` if they overlap.
fn at_least_norm_power(x: &QuadNumber, n: &NormInterval, k: u64) -> Option<bool> {
    let bits = 96;
    let xi = x.enclose(bits);
    if !xi.hi.is_positive() {
        return Some(false);
    }
    let p = n.pow(2 * k, bits).recip();
    match xi.compare(&p) {
        Some(std::cmp::Ordering::Less) => Some(false),
        Some(_) if xi.lo >= p.hi => Some(true),
        _ => None,
    }
}

pub fn separation_select(
    a0: &AffineElement,
    h0: &AffineElement,
    theta_s_norm: &NormInterval,
    budgets: &Budgets,
) -> Result<GeometryReport> {
    let b0 = h0.compose(a0).compose(&h0.inverse_elem());
    let mut cases = Vec::new();
    for case in 1..=3u8 {
        let (a, h) = case_pair(case, a0, h0, budgets.n4);
        cases.push(case_report(case, &a, &h)?);
    }
    if cases.iter().all(|c| c.min_d2 == QuadNumber::from_int(0)) {
        return Err(Error::DegenerateSeparation);
    }
    let chosen = argmax_case(&cases);
    let best = &cases[chosen as usize - 1];
    let phi_a0 = unique_fixed_point(a0).ok_or(Error::DegenerateSeparation)?;
    let phi_b0 = unique_fixed_point(&b0).ok_or(Error::DegenerateSeparation)?;
    let hq = best.h.linear.map(|x| QuadNumber::from_bigint(x.clone()));
    let theta_h_norm = crate::arith::norm::norm_sq_enclosure(&hq, 96).sqrt(96);
    Ok(GeometryReport {
        n5_bound_holds: at_least_norm_power(&best.min_d2, theta_s_norm, budgets.n5),
        general_position: phi_a0 != phi_b0,
        a0: a0.clone(),
        h0: h0.clone(),
        b0,
        phi_a0,
        phi_b0,
        chosen,
        theta_s_norm: theta_s_norm.clone(),
        theta_h_norm,
        lambda_a0: crate::arith::norm::spectral_radius(&a0.linear)?,
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn budgets_follow_schedule() {
        let b = Budgets::new(2, 2, None);
        assert_eq!(b.n3, 64);
        assert_eq!(b.n4, 262);
        assert_eq!(b.n5, 16 * 4 * 66);
        assert_eq!(b.ell_apriori(), 1360);
        assert_eq!(Budgets::new(1, 1, Some(3)).n4, 3);
    }

    #[test]
    fn argmax_prefers_earlier_case_on_ties() {
        let a = AffineElement::from_i64([2, 1, 1, 1, 1, 0]).unwrap();
        let h = AffineElement::from_i64([1, 0, 1, 1, 0, 1]).unwrap();
        let c1 = case_report(1, &a, &h).unwrap();
        let mut c2 = c1.clone();
        c2.case = 2;
        assert_eq!(argmax_case(&[c1.clone(), c2.clone()]), 1);
        c2.min_d2 = &c1.min_d2 + &QuadNumber::from_int(1);
        assert_eq!(argmax_case(&[c1, c2]), 2);
    }

    #[test]
    fn selected_case_dominates() {
        let a = AffineElement::from_i64([2, 1, 1, 1, 1, 0]).unwrap();
        let h = AffineElement::from_i64([1, 0, 1, 1, 0, 1]).unwrap();
        let n = crate::arith::interval::RatInterval::new(int(2), int(3));
        let r = separation_select(&a, &h, &n, &Budgets::new(1, 1, Some(2))).unwrap();
        let best = r.chosen_case().min_d2.clone();
        assert!(r.cases.iter().all(|c| c.min_d2 <= best));
        assert!(r.general_position);
    }
}
