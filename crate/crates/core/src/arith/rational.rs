//! Exact rationals, their "p/q" text form, and dyadic rounding helpers.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// "p/q" in lowest terms; integers print without a denominator.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Approximate value, for reporting only.
pub fn to_f64(x: &Rational) -> f64 {
    let n = x.numer();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // shift both to ~60 significant bits before converting
    let shift = (nb - db) - 60;
    let scaled = if shift > 0 {
        n / (d << shift as usize)
    } else {
        (n << (-shift) as usize) / d
    };
    let mant: f64 = bigint_to_f64(&scaled);
    mant * 2f64.powi(shift as i32)
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 63 {
        let (sign, digits) = n.to_u64_digits();
        let v = digits.first().copied().unwrap_or(0) as f64;
        return if sign == Sign::Minus { -v } else { v };
    }
    let shift = bits - 63;
    let top: BigInt = n >> shift as usize;
    bigint_to_f64(&top) * 2f64.powi(shift as i32)
}

/// Bit length of |x| as a signed exponent estimate: 2^(e-1) <= |x| < 2^(e+1).
pub fn log2_estimate(x: &Rational) -> i64 {
    if x.is_zero() {
        return 0;
    }
    x.numer().bits() as i64 - x.denom().bits() as i64
}

/// Approximate `log2 |x|` for reporting margins; `-inf` at zero.
pub fn log2_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let e = log2_estimate(x);
    let scaled = if e >= 0 {
        x.abs() / Rational::from_integer(BigInt::one() << e as usize)
    } else {
        x.abs() * Rational::from_integer(BigInt::one() << (-e) as usize)
    };
    e as f64 + to_f64(&scaled).log2()
}

/// Largest dyadic k/2^prec <= x.
pub fn floor_dyadic(x: &Rational, prec: i64) -> Rational {
    let scaled = scale_pow2(x, prec);
    let fl = scaled.floor().to_integer();
    unscale_pow2(fl, prec)
}

/// Smallest dyadic k/2^prec >= x.
pub fn ceil_dyadic(x: &Rational, prec: i64) -> Rational {
    let scaled = scale_pow2(x, prec);
    let cl = scaled.ceil().to_integer();
    unscale_pow2(cl, prec)
}

fn scale_pow2(x: &Rational, prec: i64) -> Rational {
    if prec >= 0 {
        Rational::new(x.numer() << prec as usize, x.denom().clone())
    } else {
        Rational::new(x.numer().clone(), x.denom() << (-prec) as usize)
    }
}

fn unscale_pow2(k: BigInt, prec: i64) -> Rational {
    if prec >= 0 {
        Rational::new(k, BigInt::one() << prec as usize)
    } else {
        Rational::from_integer(k << (-prec) as usize)
    }
}

/// Floor of sqrt(x) at absolute resolution 2^-prec (x >= 0).
pub fn sqrt_floor(x: &Rational, prec: i64) -> Rational {
    debug_assert!(!x.is_negative());
    // floor(sqrt(floor(x * 4^prec))) / 2^prec
    let scaled = scale_pow2(x, 2 * prec).floor().to_integer();
    unscale_pow2(scaled.sqrt(), prec)
}

/// Ceiling of sqrt(x) at absolute resolution 2^-prec (x >= 0).
pub fn sqrt_ceil(x: &Rational, prec: i64) -> Rational {
    debug_assert!(!x.is_negative());
    let scaled = scale_pow2(x, 2 * prec).ceil().to_integer();
    let r = scaled.sqrt();
    let r = if &r * &r == scaled { r } else { r + 1 };
    unscale_pow2(r, prec)
}

/// Integer square root when `n` is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn pow_rational(x: &Rational, e: u32) -> Rational {
    num_traits::pow::pow(x.clone(), e as usize)
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// serde adapter: `Rational` <-> "p/q".
pub mod ratstr {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// serde adapter: rational points <-> `["p/q", "p/q"]`.
pub mod ratvec {
    use super::*;
    use crate::arith::matrix::Vec2;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Vec2<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&v.x), format_rational(&v.y)].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec2<Rational>, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let p = |t: &str| parse_rational(t).map_err(serde::de::Error::custom);
        Ok(Vec2::new(p(&x)?, p(&y)?))
    }
}

/// serde adapter: `BigInt` <-> decimal string.
pub mod intstr {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        BigInt::from_str(s.trim()).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        for s in ["0", "-7", "3/4", "-22/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let x = rat(1, 3);
        let lo = floor_dyadic(&x, 10);
        let hi = ceil_dyadic(&x, 10);
        assert!(lo <= x && x <= hi);
        assert_eq!(&hi - &lo, rat(1, 1024));
        assert_eq!(floor_dyadic(&int(5), -1), int(4));
    }

    #[test]
    fn sqrt_brackets() {
        let two = int(2);
        let lo = sqrt_floor(&two, 40);
        let hi = sqrt_ceil(&two, 40);
        assert!(&lo * &lo <= two && two <= &hi * &hi);
        assert!(&hi - &lo <= rat(1, 1 << 40));
        assert_eq!(sqrt_floor(&rat(9, 4), 3), rat(3, 2));
        assert_eq!(sqrt_ceil(&rat(9, 4), 3), rat(3, 2));
    }

    #[test]
    fn log2_of_rationals() {
        assert!((log2_f64(&int(1024)) - 10.0).abs() < 1e-12);
        assert!((log2_f64(&rat(1, 3)) + 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn f64_conversion() {
        assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        let big = Rational::from_integer(BigInt::from(10).pow(300));
        assert!((to_f64(&big) / 1e300 - 1.0).abs() < 1e-12);
    }
}
