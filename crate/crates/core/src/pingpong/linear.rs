//! Projective ping-pong for subsets of SL(2,ℤ): `ε₁ = |λ|^{−ℓ}`,
//! `ε₂ = ε₁‖θ(h')‖²`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::certify::{conjugated, frame_norm, CertifyConfig};
use super::frame::{Frame, FrameDistances};
use super::search::{find_hyperbolic, find_linear_general_position};
use super::table::{CheckedInequality, Relation};
use crate::arith::affine::{Affine, AffineElement};
use crate::arith::ball::{Ball, SWord};
use crate::arith::conjugation::{conjugation_reduce, BeamConfig};
use crate::arith::matrix::Mat2;
use crate::arith::parse::is_symmetric_with_identity;
use crate::arith::quad::QuadNumber;
use crate::arith::rational::{ratstr, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearCertificate {
    /// Zero-translation lifts of the input.
    pub generators: Vec<AffineElement>,
    pub gamma: AffineElement,
    pub a0_word: SWord,
    pub h0_word: SWord,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    /// `2N₂ + 4N₃`.
    pub bound: u64,
    pub a: AffineElement,
    pub h: AffineElement,
    pub lambda_abs: QuadNumber,
    #[serde(with = "ratstr")]
    pub h_upper: Rational,
    /// `min d²` over `{e₁, e₂, θ(h')e₁, θ(h')e₂}`.
    pub d2_lines: QuadNumber,
    pub ell: u64,
    pub checks: Vec<CheckedInequality>,
    pub a_final: AffineElement,
    pub b_final: AffineElement,
    pub pair_word_length: u64,
}

/// Containment `ρ(a^ℓ) ≤ ε₁²` and disjointness `4H⁴ < |λ|^{2ℓ} d²_min`.
pub fn linear_checks(
    lambda_abs: &QuadNumber,
    h_upper: &Rational,
    d2_lines: &QuadNumber,
    ell: u64,
) -> Result<Vec<CheckedInequality>> {
    let lam2 = lambda_abs.pow(2 * ell);
    let eps1_sq = lam2.recip();
    let h2 = h_upper * h_upper;
    Ok(vec![
        CheckedInequality::decide(
            "linear.containment",
            "linear",
            "none",
            Relation::Le,
            eps1_sq.clone(),
            eps1_sq,
        )?,
        CheckedInequality::decide(
            "linear.disjointness",
            "linear",
            "theta(h')",
            Relation::Lt,
            QuadNumber::rational(&h2 * &h2 * Rational::from_integer(BigInt::from(4))),
            &lam2 * d2_lines,
        )?,
    ])
}

fn lift(m: &Mat2<BigInt>) -> Result<AffineElement> {
    AffineElement::from_parts(m.clone(), crate::arith::Vec2::new(0.into(), 0.into()))
}

pub fn certify_linear_pair(s_lin: &[Mat2<BigInt>], cfg: &CertifyConfig) -> Result<LinearCertificate> {
    let s = s_lin.iter().map(lift).collect::<Result<Vec<_>>>()?;
    if !is_symmetric_with_identity(&s) {
        return Err(Error::Invalid(
            "generating set must be symmetric and contain the identity".into(),
        ));
    }
    let red = conjugation_reduce(
        s_lin,
        BeamConfig {
            width: cfg.beam_width,
            depth: cfg.beam_depth,
        },
    );
    let gamma: AffineElement = Affine::linear_only(red.gamma);
    let sr = conjugated(&s, &gamma);
    let mut ball = Ball::new(&sr, cfg.ball_cap);
    let hyp = find_hyperbolic(&mut ball, cfg.power_budget)?;
    let a = hyp.entry.element.clone();
    let gp = find_linear_general_position(&mut ball, &a.linear, cfg.power_budget)?;
    let h = gp.entry.element.clone();
    let (n1, n2) = (hyp.n1 as u64, gp.n2 as u64);
    let n3 = 30 * n1 + 2 * n2;

    let frame = Frame::build(&a, &h)?;
    let d2_lines = FrameDistances::compute(&frame)?.lines;
    if d2_lines == QuadNumber::from_int(0) {
        return Err(Error::DegenerateSeparation);
    }
    let h_upper = frame_norm(&frame).hi;
    let lambda_abs = frame.lambda_abs();
    let pass = |ell: u64| -> Result<bool> {
        Ok(linear_checks(&lambda_abs, &h_upper, &d2_lines, ell)?
            .iter()
            .all(|c| c.pass))
    };
    let mut ell = 1;
    while !pass(ell)? {
        if ell >= cfg.max_ell {
            return Err(Error::PowerNotFound {
                max_ell: cfg.max_ell,
            });
        }
        ell += 1;
    }
    let gamma_inv = gamma.inverse_elem();
    let a_orig = a.conjugate_by(&gamma_inv);
    let h_orig = h.conjugate_by(&gamma_inv);
    let a_final = a_orig.pow(ell);
    let b_final = h_orig.compose(&a_final).compose(&h_orig.inverse_elem());
    Ok(LinearCertificate {
        generators: s,
        gamma,
        a0_word: hyp.entry.word,
        h0_word: gp.entry.word,
        n1,
        n2,
        n3,
        bound: 2 * n2 + 4 * n3,
        checks: linear_checks(&lambda_abs, &h_upper, &d2_lines, ell)?,
        a,
        h,
        lambda_abs,
        h_upper,
        d2_lines,
        ell,
        a_final,
        b_final,
        pair_word_length: n1 * ell + 2 * n2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::matrix::imat;

    fn sanov() -> Vec<Mat2<BigInt>> {
        let l = imat(1, 2, 0, 1);
        let r = imat(1, 0, 2, 1);
        vec![Mat2::identity(), l.clone(), l.adjugate(), r.clone(), r.adjugate()]
    }

    #[test]
    fn sanov_linear_pair_certifies_and_is_minimal() {
        let c = certify_linear_pair(&sanov(), &CertifyConfig::default()).unwrap();
        assert!(c.checks.iter().all(|x| x.pass));
        assert!(c.ell <= c.bound);
        if c.ell > 1 {
            let below = linear_checks(&c.lambda_abs, &c.h_upper, &c.d2_lines, c.ell - 1).unwrap();
            assert!(!below[1].pass);
        }
    }

    #[test]
    fn elliptic_set_has_no_hyperbolic_element() {
        let j = imat(0, -1, 1, 0);
        let s = vec![Mat2::identity(), j.clone(), j.adjugate()];
        assert!(matches!(
            certify_linear_pair(&s, &CertifyConfig::default()),
            Err(Error::HyperbolicNotFound { .. })
        ));
    }
}
