//! Integral eigenvectors of hyperbolic elements of SL(2,ℤ).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{Mat2, Vec2};
use super::quad::QuadNumber;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Eigen-data of a hyperbolic `a`: `a·u = λu`, `a·v = λ⁻¹v`, `|λ| > 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenData {
    pub lambda: QuadNumber,
    pub lambda_inv: QuadNumber,
    /// `tr(a)² − 4`.
    pub delta: BigInt,
    pub u: Vec2<QuadNumber>,
    pub v: Vec2<QuadNumber>,
}

fn q(x: &BigInt) -> QuadNumber {
    QuadNumber::from_bigint(x.clone())
}

/// `u = 2(a₁₂, λ − a₁₁)`, `v = 2(a₁₂, λ⁻¹ − a₁₁)`, entries in ℤ[√δ].
///
/// Falls back to `2(λ − a₂₂, a₂₁)` when `a₁₂ = 0` and to `2e₁, 2e₂` for
/// diagonal input; the eigen-equation is checked exactly in every case.
pub fn eigenvectors_arith(a: &Mat2<BigInt>) -> Result<EigenData> {
    let det = a.det();
    if !det.is_one() {
        return Err(Error::NotUnimodular {
            det: det.to_string(),
        });
    }
    let t = a.trace();
    if t.abs() <= BigInt::from(2) {
        return Err(Error::NotHyperbolic {
            trace: t.abs().to_string(),
        });
    }
    let delta = &t * &t - BigInt::from(4);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let sgn = if t.is_negative() { -&half } else { half.clone() };
    let tq = QuadNumber::rational(Rational::from_integer(t.clone()) * &half);
    let root = QuadNumber::new(Rational::zero(), sgn, delta.clone());
    let lambda = &tq + &root;
    let lambda_inv = &tq - &root;
    let two = QuadNumber::from_int(2);

    let (u, v) = if !a.a12.is_zero() {
        let c = q(&a.a12);
        (
            Vec2::new(&two * &c, &two * &(&lambda - &q(&a.a11))),
            Vec2::new(&two * &c, &two * &(&lambda_inv - &q(&a.a11))),
        )
    } else if !a.a21.is_zero() {
        let c = q(&a.a21);
        (
            Vec2::new(&two * &(&lambda - &q(&a.a22)), &two * &c),
            Vec2::new(&two * &(&lambda_inv - &q(&a.a22)), &two * &c),
        )
    } else {
        // diag(λ, λ⁻¹) or diag(λ⁻¹, λ)
        let e1 = Vec2::new(two.clone(), QuadNumber::zero());
        let e2 = Vec2::new(QuadNumber::zero(), two.clone());
        if q(&a.a11) == lambda {
            (e1, e2)
        } else {
            (e2, e1)
        }
    };

    let aq = a.map(q);
    if aq.apply(&u) != u.scale(&lambda) || aq.apply(&v) != v.scale(&lambda_inv) {
        return Err(Error::Invalid(format!(
            "eigen-equation check failed for {a}"
        )));
    }
    Ok(EigenData {
        lambda,
        lambda_inv,
        delta,
        u,
        v,
    })
}
