//! Table parameters and the quantitative ping-pong inequalities, evaluated
//! exactly in the diagonal frame.
//!
//! Lengths are measured in units of `‖v₀'‖`: `γᵢ = δᵢ/‖v₀'‖`, `ξᵢ = Rᵢ/‖v₀'‖`.
//! With `Λ = |λ|^ℓ` and `H ≥ ‖θ(h')‖` every condition becomes a comparison
//! inside one real quadratic field.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::frame::{Frame, FrameDistances};
use crate::arith::interval::RatInterval;
use crate::arith::quad::QuadNumber;
use crate::arith::rational::{self, ratstr, Rational};
use crate::error::{Error, Result};

pub const ENCLOSURE_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableParams {
    #[serde(with = "ratstr")]
    pub eta: Rational,
    #[serde(with = "ratstr")]
    pub eps1: Rational,
    #[serde(with = "ratstr")]
    pub eps2: Rational,
    #[serde(with = "ratstr")]
    pub gamma1: Rational,
    #[serde(with = "ratstr")]
    pub gamma2: Rational,
    #[serde(with = "ratstr")]
    pub xi1: Rational,
    #[serde(with = "ratstr")]
    pub xi2: Rational,
    /// Upper endpoint `H` of the `‖θ(h)‖` enclosure used by the schedule.
    #[serde(with = "ratstr")]
    pub h_upper: Rational,
}

/// `δᵢ = γᵢ‖v₀'‖`, `Rᵢ = ξᵢ‖v₀'‖`; enclosures only, `‖v₀'‖` is irrational.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Radii {
    pub delta1: RatInterval,
    pub delta2: RatInterval,
    pub r1: RatInterval,
    pub r2: RatInterval,
}

impl TableParams {
    pub fn radii(&self, v0_norm_sq: &QuadNumber, bits: u32) -> Radii {
        let n = v0_norm_sq.enclose(bits + 8).sqrt(bits + 8);
        let s = |c: &Rational| n.scale(c).round_out(bits);
        Radii {
            delta1: s(&self.gamma1),
            delta2: s(&self.gamma2),
            r1: s(&self.xi1),
            r2: s(&self.xi2),
        }
    }
}

fn one_thousandth() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(1000))
}

/// `ε₂ = η/3`, `γ₂ = ε₂`, `ξ₂ = 1/ε₂`, then `ε₁ = ε₂/H²`, `γ₁ = γ₂/H`,
/// `ξ₁ = (ξ₂+1)H²` with `H` the upper endpoint of `norm_h`.
pub fn schedule_params(eta: &Rational, norm_h: &RatInterval) -> Result<TableParams> {
    if !eta.is_positive() || *eta >= one_thousandth() {
        return Err(Error::EtaOutOfRange {
            eta: rational::format_rational(eta),
        });
    }
    let h = norm_h.hi.clone();
    if !h.is_positive() {
        return Err(Error::Invalid("norm bound must be positive".into()));
    }
    let h2 = &h * &h;
    let eps2 = eta / Rational::from_integer(BigInt::from(3));
    let gamma2 = eps2.clone();
    let xi2 = eps2.recip();
    Ok(TableParams {
        eta: eta.clone(),
        eps1: &eps2 / &h2,
        gamma1: &gamma2 / &h,
        xi1: (&xi2 + Rational::one()) * &h2,
        eps2,
        gamma2,
        xi2,
        h_upper: h,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckedInequality {
    pub name: String,
    pub group: String,
    /// Which norm enters the inequality: `"theta(h')"` (the frame bound `H`),
    /// or `"none"`.
    pub norm_used: String,
    pub relation: Relation,
    pub lhs: QuadNumber,
    pub rhs: QuadNumber,
    pub lhs_enclosure: RatInterval,
    pub rhs_enclosure: RatInterval,
    /// `log₂(rhs/lhs)` from the enclosures; absent when a side is zero.
    pub margin_log2: Option<f64>,
    pub pass: bool,
}

impl CheckedInequality {
    pub fn decide(
        name: &str,
        group: &str,
        norm_used: &str,
        relation: Relation,
        lhs: QuadNumber,
        rhs: QuadNumber,
    ) -> Result<Self> {
        let ord = lhs.try_cmp(&rhs)?;
        let pass = match relation {
            Relation::Lt => ord == Ordering::Less,
            Relation::Le => ord != Ordering::Greater,
        };
        let lhs_enclosure = lhs.enclose(ENCLOSURE_BITS);
        let rhs_enclosure = rhs.enclose(ENCLOSURE_BITS);
        let margin = |i: &RatInterval| {
            let m = (&i.lo + &i.hi) / Rational::from_integer(BigInt::from(2));
            m.is_positive().then(|| rational::log2_f64(&m))
        };
        let margin_log2 = match (margin(&lhs_enclosure), margin(&rhs_enclosure)) {
            (Some(l), Some(r)) => Some(r - l),
            _ => None,
        };
        Ok(Self {
            name: name.into(),
            group: group.into(),
            norm_used: norm_used.into(),
            relation,
            lhs,
            rhs,
            lhs_enclosure,
            rhs_enclosure,
            margin_log2,
            pass,
        })
    }
}

impl fmt::Display for CheckedInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<22} {} {} {}  margin_log2={}  {}",
            self.name,
            self.lhs_enclosure,
            self.relation,
            self.rhs_enclosure,
            self.margin_log2
                .map_or_else(|| "n/a".to_string(), |m| format!("{m:.3}")),
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

/// Exact frame quantities the checks need.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableGeometry {
    /// `|λ|` of `θ(a)`; the checks use `|λ|^ℓ`.
    pub lambda_abs: QuadNumber,
    /// Frobenius² of `θ(h')`.
    pub frob_h: QuadNumber,
    pub distances: FrameDistances,
}

impl TableGeometry {
    pub fn from_frame(frame: &Frame) -> Result<Self> {
        Ok(Self {
            lambda_abs: frame.lambda_abs(),
            frob_h: frame.h_lin.frobenius_sq(),
            distances: FrameDistances::compute(frame)?,
        })
    }
}

fn q(x: &Rational) -> QuadNumber {
    QuadNumber::rational(x.clone())
}

fn qi(n: i64) -> QuadNumber {
    QuadNumber::from_int(n)
}

fn max_r(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

const NONE: &str = "none";
const THETA_H: &str = "theta(h')";

/// Properness of the table.
pub fn check_proper_table(p: &TableParams, g: &TableGeometry) -> Result<Vec<CheckedInequality>> {
    use Relation::*;
    let d = &g.distances;
    let max_gamma = max_r(&p.gamma1, &p.gamma2);
    let max_eps = max_r(&p.eps1, &p.eps2);
    let mixed = max_r(&(&p.eps1 + &p.gamma2), &(&p.eps2 + &p.gamma1));
    let outer = &p.eps1 + &p.eps2 + p.xi2.recip();
    Ok(vec![
        CheckedInequality::decide(
            "proper.1",
            "proper",
            NONE,
            Lt,
            q(&(max_gamma * Rational::from_integer(BigInt::from(2)))),
            qi(1),
        )?,
        CheckedInequality::decide(
            "proper.2",
            "proper",
            NONE,
            Lt,
            q(&(&max_eps * &max_eps * Rational::from_integer(BigInt::from(4)))),
            d.lines.clone(),
        )?,
        CheckedInequality::decide(
            "proper.3",
            "proper",
            NONE,
            Lt,
            q(&(&mixed * &mixed)),
            d.to_v0.clone(),
        )?,
        CheckedInequality::decide(
            "proper.4",
            "proper",
            NONE,
            Lt,
            q(&(&outer * &outer)),
            d.lines.clone(),
        )?,
        CheckedInequality::decide("proper.4.order", "proper", NONE, Le, q(&p.xi2), q(&p.xi1))?,
    ])
}

/// Both conditions on `a^ℓ` and the three on `h`.
pub fn check_players(
    p: &TableParams,
    g: &TableGeometry,
    ell: u64,
) -> Result<Vec<CheckedInequality>> {
    use Relation::*;
    let lam = g.lambda_abs.pow(ell);
    let h = &p.h_upper;
    Ok(vec![
        CheckedInequality::decide(
            "players.i.a",
            "players",
            NONE,
            Le,
            qi(1),
            &(&lam * &lam) * &q(&(&p.eps1 * &p.eps1)),
        )?,
        CheckedInequality::decide(
            "players.i.b",
            "players",
            NONE,
            Le,
            q(&p.xi1),
            &lam * &q(&(&p.eps1 * &p.gamma1)),
        )?,
        CheckedInequality::decide(
            "players.ii.a",
            "players",
            THETA_H,
            Le,
            q(&(h * h)),
            q(&(&p.eps2 / &p.eps1)),
        )?,
        CheckedInequality::decide(
            "players.ii.b",
            "players",
            THETA_H,
            Le,
            q(&(&p.xi2 + Rational::one())),
            q(&(&p.xi1 / h)),
        )?,
        CheckedInequality::decide(
            "players.ii.c",
            "players",
            THETA_H,
            Le,
            q(h),
            q(&(&p.gamma2 / &p.gamma1)),
        )?,
    ])
}

/// `‖θ(h')‖ ≤ H` for a unimodular `θ(h')` with Frobenius² `F`:
/// `F ≤ 2H²` and `H²F ≤ H⁴ + 1`.
pub fn check_norm_bound(p: &TableParams, g: &TableGeometry) -> Result<Vec<CheckedInequality>> {
    use Relation::*;
    let h2 = q(&(&p.h_upper * &p.h_upper));
    Ok(vec![
        CheckedInequality::decide(
            "norm_bound.trace",
            "norm_bound",
            THETA_H,
            Le,
            g.frob_h.clone(),
            &h2 * &qi(2),
        )?,
        CheckedInequality::decide(
            "norm_bound.det",
            "norm_bound",
            THETA_H,
            Le,
            &h2 * &g.frob_h,
            &(&h2 * &h2) + &qi(1),
        )?,
    ])
}

/// `ε₁ > |λ|^{−ℓ}` and `8√2 H⁷ < |λ|^ℓ ε₁ min(1, γ₁)`, the latter squared.
pub fn check_norm_dilation(
    p: &TableParams,
    g: &TableGeometry,
    ell: u64,
) -> Result<Vec<CheckedInequality>> {
    use Relation::*;
    let lam = g.lambda_abs.pow(ell);
    let h7 = rational::pow_rational(&p.h_upper, 7);
    let m = if p.gamma1 < Rational::one() {
        p.gamma1.clone()
    } else {
        Rational::one()
    };
    let f = &p.eps1 * &m;
    Ok(vec![
        CheckedInequality::decide(
            "dilation.i",
            "dilation",
            NONE,
            Lt,
            qi(1),
            &lam * &q(&p.eps1),
        )?,
        CheckedInequality::decide(
            "dilation.ii",
            "dilation",
            THETA_H,
            Lt,
            q(&(&h7 * &h7 * Rational::from_integer(BigInt::from(128)))),
            &(&lam * &lam) * &q(&(&f * &f)),
        )?,
    ])
}

/// `|λ|^ℓ > η⁻⁴H¹⁰` and `η < d_min(W' ∪ {v₀'})`.
pub fn check_master(p: &TableParams, g: &TableGeometry, ell: u64) -> Result<Vec<CheckedInequality>> {
    use Relation::*;
    let lam = g.lambda_abs.pow(ell);
    let e4 = rational::pow_rational(&p.eta, 4);
    let h10 = rational::pow_rational(&p.h_upper, 10);
    Ok(vec![
        CheckedInequality::decide("master", "master", THETA_H, Lt, q(&(h10 / e4)), lam)?,
        CheckedInequality::decide(
            "master.separation",
            "master",
            NONE,
            Lt,
            q(&(&p.eta * &p.eta)),
            g.distances.all.clone(),
        )?,
    ])
}

/// Every inequality, in certificate order.
pub fn all_checks(p: &TableParams, g: &TableGeometry, ell: u64) -> Result<Vec<CheckedInequality>> {
    let mut v = check_proper_table(p, g)?;
    v.extend(check_players(p, g, ell)?);
    v.extend(check_norm_bound(p, g)?);
    v.extend(check_norm_dilation(p, g, ell)?);
    v.extend(check_master(p, g, ell)?);
    Ok(v)
}

/// The checks that depend on `ℓ`; all are monotone in `ℓ`.
pub fn ell_checks_pass(p: &TableParams, g: &TableGeometry, ell: u64) -> Result<bool> {
    let mut v = check_players(p, g, ell)?;
    v.truncate(2);
    v.extend(check_norm_dilation(p, g, ell)?);
    v.extend(check_master(p, g, ell)?.into_iter().take(1));
    Ok(v.iter().all(|c| c.pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn unit_norm() -> RatInterval {
        RatInterval::point(int(1))
    }

    #[test]
    fn unit_norm_collapses_schedule() {
        let p = schedule_params(&rat(1, 3000), &unit_norm()).unwrap();
        assert_eq!(p.eps1, rat(1, 9000));
        assert_eq!(p.eps2, rat(1, 9000));
        assert_eq!(p.xi1, &p.xi2 + int(1));
        assert_eq!(p.gamma1, p.gamma2);
    }

    #[test]
    fn schedule_with_norm_two() {
        let hi = int(2) + rat(1, 1_000_000_000);
        let p = schedule_params(&rat(1, 3000), &RatInterval::new(int(2), hi.clone())).unwrap();
        let eps2 = rat(1, 9000);
        assert_eq!(p.eps1, &eps2 / (&hi * &hi));
        assert_eq!(p.gamma1, &eps2 / &hi);
        assert_eq!(p.xi1, (int(9000) + int(1)) * &hi * &hi);
        assert!(p.xi1 >= p.xi2);
    }

    #[test]
    fn eta_range_enforced() {
        for eta in [int(0), rat(1, 1000), rat(1, 2), rat(-1, 5000)] {
            assert!(matches!(
                schedule_params(&eta, &unit_norm()),
                Err(Error::EtaOutOfRange { .. })
            ));
        }
    }

    fn synthetic(d2: QuadNumber) -> TableGeometry {
        TableGeometry {
            lambda_abs: QuadNumber::new(int(3), int(2), BigInt::from(2)),
            frob_h: QuadNumber::from_int(2),
            distances: FrameDistances {
                lines: d2.clone(),
                to_v0: d2.clone(),
                all: d2,
                v0_norm_sq: QuadNumber::from_int(1),
            },
        }
    }

    #[test]
    fn well_separated_table_is_proper() {
        let p = schedule_params(&rat(1, 3000), &unit_norm()).unwrap();
        let g = synthetic(QuadNumber::from_int(1));
        assert!(check_proper_table(&p, &g).unwrap().iter().all(|c| c.pass));
        assert!(check_norm_bound(&p, &g).unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn boundary_violations_fail() {
        let mut p = schedule_params(&rat(1, 3000), &unit_norm()).unwrap();
        p.gamma1 = rat(1, 2);
        let g = synthetic(QuadNumber::from_int(1));
        let c = check_proper_table(&p, &g).unwrap();
        assert!(!c[0].pass);
        let p = schedule_params(&rat(1, 3000), &unit_norm()).unwrap();
        let dil = check_norm_dilation(&p, &g, 1).unwrap();
        assert!(!dil[0].pass);
    }

    #[test]
    fn unit_norm_players_ii_hold() {
        let p = schedule_params(&rat(1, 3000), &unit_norm()).unwrap();
        let g = synthetic(QuadNumber::from_int(1));
        let c = check_players(&p, &g, 1).unwrap();
        assert!(c[2..].iter().all(|c| c.pass));
    }

    #[test]
    fn large_ell_passes_and_stays_passing() {
        let p = schedule_params(&rat(1, 3000), &unit_norm()).unwrap();
        let g = synthetic(QuadNumber::from_int(1));
        assert!(!ell_checks_pass(&p, &g, 1).unwrap());
        let ell = (1..200).find(|&l| ell_checks_pass(&p, &g, l).unwrap()).unwrap();
        for l in [ell, ell + 1, ell + 5] {
            assert!(all_checks(&p, &g, l).unwrap().iter().all(|c| c.pass));
        }
        assert!(!ell_checks_pass(&p, &g, ell - 1).unwrap());
    }
}
