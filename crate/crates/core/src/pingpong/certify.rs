//! The end-to-end pipeline producing a [`FreePairCertificate`].

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::certificate::{FreePairCertificate, Norms, FORMAT_VERSION};
use super::frame::Frame;
use super::search::{find_general_position, find_hyperbolic, theta_norm};
use super::separation::{separation_select, Budgets};
use super::table::{all_checks, ell_checks_pass, schedule_params, TableGeometry, TableParams};
use crate::arith::affine::{Affine, AffineElement};
use crate::arith::ball::{Ball, DEFAULT_BALL_CAP};
use crate::arith::conjugation::{conjugation_reduce, BeamConfig};
use crate::arith::interval::{NormInterval, RatInterval};
use crate::arith::norm::{iota_norm, norm_sq_enclosure, norm_upper_dyadic};
use crate::arith::parse::is_symmetric_with_identity;
use crate::arith::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EtaMode {
    /// `η = min(1/3000, d_min/3)` from the measured separation.
    #[default]
    Data,
    /// `η = ‖θ(S)‖^{−(2N₃+N₁)}`, and every inequality is re-verified at
    /// `ℓ = 20(N₁+N₂+N₃)`.
    Paper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub power_budget: usize,
    pub ball_cap: usize,
    pub eta_mode: EtaMode,
    pub n4: Option<u64>,
    pub beam_width: usize,
    pub beam_depth: usize,
    pub max_ell: u64,
    /// Certified `ℓ` may exceed the a-priori bound by this factor before
    /// the certificate is flagged.
    pub slack: u64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            power_budget: 12,
            ball_cap: DEFAULT_BALL_CAP,
            eta_mode: EtaMode::Data,
            n4: None,
            beam_width: 8,
            beam_depth: 12,
            max_ell: 1 << 20,
            slack: 1,
        }
    }
}

pub(crate) const NORM_BITS: u32 = 64;

fn dyadic_floor_rel(x: &Rational, bits: i64) -> Rational {
    rational::floor_dyadic(x, bits - rational::log2_estimate(x))
}

/// `η` for the chosen mode, before the range check.
pub fn choose_eta(
    mode: EtaMode,
    geom: &TableGeometry,
    theta_s: &NormInterval,
    budgets: &Budgets,
) -> Result<Rational> {
    match mode {
        EtaMode::Data => {
            let d2 = geom.distances.all.enclose(NORM_BITS + 8);
            if !d2.lo.is_positive() {
                return Err(Error::DegenerateSeparation);
            }
            let d = rational::sqrt_floor(&d2.lo, NORM_BITS as i64 + 8);
            let third = dyadic_floor_rel(&(d / Rational::from_integer(BigInt::from(3))), 64);
            let cap = Rational::new(BigInt::one(), BigInt::from(3000));
            Ok(if third < cap { third } else { cap })
        }
        EtaMode::Paper => {
            let m = 2 * budgets.n3 + budgets.n1;
            let up = theta_s.pow(m, NORM_BITS).hi;
            Ok(dyadic_floor_rel(&up.recip(), 64))
        }
    }
}

/// Minimal `ℓ ≤ max_ell` passing the `ℓ`-dependent checks.
pub fn minimal_ell(p: &TableParams, g: &TableGeometry, max_ell: u64) -> Result<u64> {
    let mut hi = 1u64;
    while !ell_checks_pass(p, g, hi)? {
        if hi >= max_ell {
            return Err(Error::PowerNotFound { max_ell });
        }
        hi = (hi * 2).min(max_ell);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ell_checks_pass(p, g, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `[‖h'‖ lower, H]` with `H` a verified dyadic upper bound.
pub fn frame_norm(frame: &Frame) -> NormInterval {
    let hi = norm_upper_dyadic(&frame.h_lin, NORM_BITS as u32);
    let lo = norm_sq_enclosure(&frame.h_lin, NORM_BITS).sqrt(NORM_BITS).lo;
    RatInterval::new(lo.min(hi.clone()), hi)
}

pub(crate) fn conjugated(s: &[AffineElement], gamma: &AffineElement) -> Vec<AffineElement> {
    s.iter().map(|g| g.conjugate_by(gamma)).collect()
}

pub fn certify_pair(s: &[AffineElement], cfg: &CertifyConfig) -> Result<FreePairCertificate> {
    if !is_symmetric_with_identity(s) {
        return Err(Error::Invalid(
            "generating set must be symmetric and contain the identity".into(),
        ));
    }
    let lin: Vec<_> = s.iter().map(|g| g.linear.clone()).collect();
    let red = conjugation_reduce(
        &lin,
        BeamConfig {
            width: cfg.beam_width,
            depth: cfg.beam_depth,
        },
    );
    let gamma: AffineElement = Affine::linear_only(red.gamma.clone());
    let sr = conjugated(s, &gamma);

    let mut ball = Ball::new(&sr, cfg.ball_cap);
    let hyp = find_hyperbolic(&mut ball, cfg.power_budget)?;
    let gp = find_general_position(&mut ball, &hyp.entry.element, cfg.power_budget)?;
    let budgets = Budgets::new(hyp.n1 as u64, gp.n2 as u64, cfg.n4);
    let theta_s = theta_norm(&sr, NORM_BITS);
    let report = separation_select(&hyp.entry.element, &gp.entry.element, &theta_s, &budgets)?;
    let chosen = report.chosen_case().clone();

    let frame = Frame::build(&chosen.a, &chosen.h)?;
    let geometry = TableGeometry::from_frame(&frame)?;
    let norm_h = frame_norm(&frame);
    let eta = choose_eta(cfg.eta_mode, &geometry, &theta_s, &budgets)?;
    let params = schedule_params(&eta, &norm_h)?;

    let fixed = all_checks(&params, &geometry, 1)?;
    if let Some(c) = fixed
        .iter()
        .find(|c| !c.pass && !ELL_DEPENDENT.contains(&c.name.as_str()))
    {
        return Err(Error::CheckFailed {
            name: c.name.clone(),
            reason: format!("{c}"),
        });
    }
    let ell = minimal_ell(&params, &geometry, cfg.max_ell)?;
    let checks = all_checks(&params, &geometry, ell)?;
    let ell_apriori = budgets.ell_apriori();
    let apriori_checks = match cfg.eta_mode {
        EtaMode::Paper => Some(all_checks(&params, &geometry, ell_apriori)?),
        EtaMode::Data => None,
    };

    let gamma_inv = gamma.inverse_elem();
    let a_orig = chosen.a.conjugate_by(&gamma_inv);
    let h_orig = chosen.h.conjugate_by(&gamma_inv);
    let a_final = a_orig.pow(ell);
    let b_final = h_orig.compose(&a_final).compose(&h_orig.inverse_elem());
    let b = chosen.h.compose(&chosen.a).compose(&chosen.h.inverse_elem());
    let tol = Rational::new(BigInt::one(), BigInt::one() << 40usize);
    let iota_s = s
        .iter()
        .map(|g| iota_norm(g, &tol))
        .reduce(|x, y| if y.hi > x.hi { y } else { x })
        .expect("nonempty set");

    Ok(FreePairCertificate {
        format_version: FORMAT_VERSION,
        generators: s.to_vec(),
        gamma,
        a0_word: hyp.entry.word.clone(),
        h0_word: gp.entry.word.clone(),
        budgets,
        case: chosen.case,
        a: chosen.a.clone(),
        h: chosen.h.clone(),
        b,
        eta_mode: cfg.eta_mode,
        radii: params.radii(&geometry.distances.v0_norm_sq, NORM_BITS),
        params,
        norm_h,
        frame,
        geometry,
        norms: Norms {
            theta_s: theta_norm(s, NORM_BITS),
            theta_s_reduced: theta_s,
            iota_s,
        },
        separation: report,
        ell,
        ell_apriori,
        within_apriori_bound: ell <= ell_apriori * cfg.slack,
        checks,
        apriori_checks,
        pair_word_length: pair_word_length(chosen.case, &budgets, ell),
        a_final,
        b_final,
    })
}

/// Names of the checks that depend on `ℓ`.
pub const ELL_DEPENDENT: [&str; 5] = [
    "players.i.a",
    "players.i.b",
    "dilation.i",
    "dilation.ii",
    "master",
];

/// Length in `S` of `a^ℓ` plus twice that of `h`, bounding both `a^ℓ` and `ha^ℓh⁻¹`.
pub fn pair_word_length(case: u8, b: &Budgets, ell: u64) -> u64 {
    let (len_a, len_h) = match case {
        1 => (b.n1, b.n2),
        2 => (b.n1, 2 * b.n2 + b.n4 * b.n1),
        _ => (b.n1 + 2 * b.n2, b.n4 * b.n1),
    };
    len_a * ell + 2 * len_h
}
