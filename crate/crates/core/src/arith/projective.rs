//! Fubini–Study distance on the projective line.

use super::matrix::Vec2;
use super::quad::QuadNumber;
use super::rational::Rational;
use crate::error::{Error, Result};
use num_traits::Zero;

fn check_field(u: &Vec2<QuadNumber>, v: &Vec2<QuadNumber>) -> Result<()> {
    u.x.check_compatible(&u.y)?;
    u.x.check_compatible(&v.x)?;
    u.x.check_compatible(&v.y)?;
    u.y.check_compatible(&v.x)?;
    u.y.check_compatible(&v.y)?;
    v.x.check_compatible(&v.y)
}

/// `d([u],[v])² = (u∧v)² / (‖u‖²‖v‖²)`, exactly.
pub fn fs_distance_sq(u: &Vec2<QuadNumber>, v: &Vec2<QuadNumber>) -> Result<QuadNumber> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    check_field(u, v)?;
    let w = u.wedge(v);
    Ok(&(&w * &w) / &(&u.norm_sq() * &v.norm_sq()))
}

pub fn fs_distance_sq_rational(u: &Vec2<Rational>, v: &Vec2<Rational>) -> Result<Rational> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let w = u.wedge(v);
    Ok(&w * &w / (u.norm_sq() * v.norm_sq()))
}

/// Minimum of `d²` over pairs of distinct lines in `vs`; `None` if fewer than two lines.
pub fn min_distance_sq(vs: &[Vec2<QuadNumber>]) -> Result<Option<QuadNumber>> {
    let mut best: Option<QuadNumber> = None;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let d = fs_distance_sq(&vs[i], &vs[j])?;
            if d.is_zero() {
                continue;
            }
            best = Some(match best {
                Some(b) if b <= d => b,
                _ => d,
            });
        }
    }
    Ok(best)
}

pub fn lift(v: &Vec2<Rational>) -> Vec2<QuadNumber> {
    v.map(|x| QuadNumber::rational(x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn qv(x: i64, y: i64) -> Vec2<QuadNumber> {
        Vec2::new(QuadNumber::from_int(x), QuadNumber::from_int(y))
    }

    #[test]
    fn basic_values() {
        assert_eq!(fs_distance_sq(&qv(1, 0), &qv(0, 1)).unwrap(), QuadNumber::from_int(1));
        assert_eq!(
            fs_distance_sq(&qv(1, 0), &qv(1, 1)).unwrap(),
            QuadNumber::rational(rat(1, 2))
        );
        assert!(fs_distance_sq(&qv(2, 4), &qv(-1, -2)).unwrap().is_zero());
        assert!(matches!(fs_distance_sq(&qv(0, 0), &qv(1, 0)), Err(Error::ZeroVector)));
        assert_eq!(
            fs_distance_sq_rational(&Vec2::new(int(1), int(0)), &Vec2::new(int(1), int(1))).unwrap(),
            rat(1, 2)
        );
    }

    #[test]
    fn mixed_radicands_are_rejected() {
        let u = Vec2::new(QuadNumber::sqrt_of(2.into()), QuadNumber::from_int(1));
        let v = Vec2::new(QuadNumber::sqrt_of(3.into()), QuadNumber::from_int(1));
        assert!(matches!(
            fs_distance_sq(&u, &v),
            Err(Error::IncompatibleRadicands { .. })
        ));
    }
}
