//! Bounded searches for a hyperbolic element and a conjugator in general position.

use num_traits::Zero;

use crate::arith::affine::{common_fixed_set, unique_fixed_point, witness_point, AffineElement};
use crate::arith::ball::{Ball, BallEntry};
use crate::arith::eigen::eigenvectors_arith;
use crate::arith::interval::{decide_less, NormInterval, MAX_REFINEMENT_ROUNDS};
use crate::arith::matrix::Mat2;
use crate::arith::norm::{max_norm_index, norm_sq_exact};
use crate::arith::projective::fs_distance_sq;
use crate::arith::quad::QuadNumber;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Hyperbolic {
    pub entry: BallEntry,
    pub n1: usize,
    /// `Λ(θ(a₀))`.
    pub radius: QuadNumber,
}

#[derive(Clone, Debug)]
pub struct GeneralPosition {
    pub entry: BallEntry,
    pub n2: usize,
}

fn linear_parts(s: &[AffineElement]) -> Vec<Mat2<num_bigint::BigInt>> {
    s.iter().map(|g| g.linear.clone()).collect()
}

/// Decide `Λ > 2‖θ(S)‖` by refining `4‖θ(S)‖² < Λ²`.
pub fn exceeds_twice_norm(radius: &QuadNumber, s: &[AffineElement]) -> Result<bool> {
    let lin = linear_parts(s);
    let Some(i) = max_norm_index(&lin) else {
        return Ok(false);
    };
    let n2 = norm_sq_exact(&lin[i]);
    let four = QuadNumber::from_int(4);
    let lhs = &n2 * &four;
    let rhs = radius * radius;
    if lhs.compatible(&rhs) {
        return Ok(lhs.try_cmp(&rhs)?.is_lt());
    }
    decide_less(|bits| (lhs.enclose(bits), rhs.enclose(bits)), MAX_REFINEMENT_ROUNDS)
        .map(|(b, _, _)| b)
        .map_err(|_| Error::Indeterminate {
            what: "Λ(θ(a₀)) > 2‖θ(S)‖".into(),
            rounds: MAX_REFINEMENT_ROUNDS,
        })
}

/// Enclosure of `‖θ(S)‖`.
pub fn theta_norm(s: &[AffineElement], bits: u32) -> NormInterval {
    crate::arith::norm::set_norm_enclosure(&linear_parts(s), bits)
}

/// Smallest `N₁ ≤ max_power` with `Λ(θ(S)^{N₁}) > 2‖θ(S)‖`.
pub fn find_hyperbolic(ball: &mut Ball, max_power: usize) -> Result<Hyperbolic> {
    let s = ball.generators().to_vec();
    for k in 1..=max_power {
        ball.grow_to(k)?;
        let m = crate::arith::ball::max_spectral_radius(ball, k);
        if m.radius == QuadNumber::from_int(1) {
            continue;
        }
        if exceeds_twice_norm(&m.radius, &s)? {
            return Ok(Hyperbolic {
                entry: m.entry,
                n1: k,
                radius: m.radius,
            });
        }
    }
    Err(Error::HyperbolicNotFound { max_power })
}

/// `h` in general affine position with respect to the hyperbolic `a`: no
/// eigenline of `θ(a)` is mapped onto an eigenline, and `hφ(a) ≠ φ(a)`.
pub fn is_general_position(a: &AffineElement, h: &AffineElement) -> Result<bool> {
    if !is_linear_general_position(&a.linear, &h.linear)? {
        return Ok(false);
    }
    let p = unique_fixed_point(a).ok_or(Error::NotHyperbolic {
        trace: a.linear.trace().to_string(),
    })?;
    Ok(h.apply_rational(&p) != p)
}

/// The four distances `d([θ(h)x], [y])`, `x, y ∈ 𝒱`, are all nonzero.
pub fn is_linear_general_position(
    a: &Mat2<num_bigint::BigInt>,
    h: &Mat2<num_bigint::BigInt>,
) -> Result<bool> {
    let e = eigenvectors_arith(a)?;
    let hq = h.map(|x| QuadNumber::from_bigint(x.clone()));
    let images = [hq.apply(&e.u), hq.apply(&e.v)];
    for x in &images {
        for y in [&e.u, &e.v] {
            if fs_distance_sq(x, y)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest `N₂` with some `h₀ ∈ S^{N₂}` in general position; the first
/// canonical word of that level wins.
///
/// A common fixed point of the generators is reported before searching.
pub fn find_general_position(
    ball: &mut Ball,
    a0: &AffineElement,
    max_power: usize,
) -> Result<GeneralPosition> {
    let fixed = common_fixed_set(ball.generators());
    if !fixed.is_empty() {
        let point = witness_point(&fixed).expect("nonempty fixed set");
        return Err(Error::GlobalFixedPoint { point });
    }
    search_levels(ball, max_power, |h| is_general_position(a0, h))
}

/// Linear variant: only the eigenline condition.
pub fn find_linear_general_position(
    ball: &mut Ball,
    a0: &Mat2<num_bigint::BigInt>,
    max_power: usize,
) -> Result<GeneralPosition> {
    search_levels(ball, max_power, |h| is_linear_general_position(a0, &h.linear))
}

fn search_levels<F>(ball: &mut Ball, max_power: usize, mut ok: F) -> Result<GeneralPosition>
where
    F: FnMut(&AffineElement) -> Result<bool>,
{
    for k in 0..=max_power {
        ball.grow_to(k)?;
        for e in ball.level(k) {
            if ok(&e.element)? {
                return Ok(GeneralPosition {
                    entry: e.clone(),
                    n2: k,
                });
            }
        }
    }
    Err(Error::GeneralPositionNotFound { max_power })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::arith::Vec2;

    fn sym(gens: &[[i64; 6]]) -> Vec<AffineElement> {
        let mut s = vec![AffineElement::identity()];
        for g in gens {
            let e = AffineElement::from_i64(*g).unwrap();
            s.push(e.clone());
            s.push(e.inverse_elem());
        }
        s
    }

    #[test]
    fn cat_map_needs_two_steps() {
        let s = sym(&[[2, 1, 1, 1, 0, 0]]);
        let mut ball = Ball::new(&s, 10_000);
        let h = find_hyperbolic(&mut ball, 6).unwrap();
        assert_eq!(h.n1, 2);
        assert_eq!(h.entry.element.linear.trace().to_string(), "7");
    }

    #[test]
    fn unipotent_only_never_hyperbolic() {
        let s = sym(&[[1, 1, 0, 1, 0, 0]]);
        let mut ball = Ball::new(&s, 10_000);
        assert!(matches!(
            find_hyperbolic(&mut ball, 5),
            Err(Error::HyperbolicNotFound { max_power: 5 })
        ));
    }

    #[test]
    fn self_and_commuting_conjugators_rejected() {
        let a = AffineElement::from_i64([2, 1, 1, 1, 1, 0]).unwrap();
        assert!(!is_general_position(&a, &a).unwrap());
        assert!(!is_general_position(&a, &a.pow(3)).unwrap());
        let h = AffineElement::from_i64([1, 0, 1, 1, 0, 1]).unwrap();
        assert!(is_general_position(&a, &h).unwrap());
    }

    #[test]
    fn zero_translation_lift_has_global_fixed_point() {
        let s = sym(&[[1, 2, 0, 1, 0, 0], [1, 0, 2, 1, 0, 0]]);
        let mut ball = Ball::new(&s, 100_000);
        let a0 = find_hyperbolic(&mut ball, 6).unwrap().entry.element;
        match find_general_position(&mut ball, &a0, 6) {
            Err(Error::GlobalFixedPoint { point }) => {
                assert_eq!(point, Vec2::new(rat(0, 1), rat(0, 1)))
            }
            other => panic!("{other:?}"),
        }
    }
}
