//! Exact arithmetic in real quadratic fields ℚ(√s).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::interval::RatInterval;
use super::rational::{self, exact_isqrt, format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// `p + q·√delta` with `delta` a positive non-square integer.
///
/// The radicand is reduced by extracting square factors (fully for radicands
/// below 10^12, by trial division up to 10^4 beyond that). A number with
/// `q == 0` is rational and stores `delta == 0`, which makes it compatible
/// with every field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    p: Rational,
    q: Rational,
    delta: BigInt,
}

/// Split `n > 0` as `f^2 * s`; `s` is squarefree whenever `n < 10^12`.
pub fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive());
    if let Some(small) = n.to_u128() {
        let (f, s) = split_square_u128(small);
        return (BigInt::from(f), BigInt::from(s));
    }
    let mut s = n.clone();
    let mut f = BigInt::one();
    let mut k = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while k <= limit {
        let k2 = &k * &k;
        while (&s % &k2).is_zero() {
            s /= &k2;
            f *= &k;
        }
        k += 1;
    }
    if let Some(r) = exact_isqrt(&s) {
        f *= r;
        s = BigInt::one();
    }
    (f, s)
}

fn split_square_u128(mut s: u128) -> (u128, u128) {
    let mut f = 1u128;
    let mut k = 2u128;
    while k <= 1_000_000 && k * k <= s {
        while s % (k * k) == 0 {
            s /= k * k;
            f *= k;
        }
        k += 1;
    }
    let r = (s as f64).sqrt() as u128;
    for c in r.saturating_sub(2)..=r + 2 {
        if c > 1 && c * c == s {
            return (f * c, 1);
        }
    }
    (f, s)
}

impl QuadNumber {
    /// `p + q√delta`; `delta` must be positive.
    pub fn new(p: Rational, q: Rational, delta: BigInt) -> Self {
        assert!(delta.is_positive(), "radicand must be positive");
        let (f, s) = split_square(&delta);
        let q = q * Rational::from_integer(f);
        if s.is_one() {
            Self::rational(p + q)
        } else if q.is_zero() {
            Self::rational(p)
        } else {
            Self { p, q, delta: s }
        }
    }

    pub fn rational(p: Rational) -> Self {
        Self {
            p,
            q: Rational::zero(),
            delta: BigInt::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    /// `√delta` itself.
    pub fn sqrt_of(delta: BigInt) -> Self {
        Self::new(Rational::zero(), Rational::one(), delta)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Reduced radicand; 0 for rational numbers.
    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.p)
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.delta.is_zero() || other.delta.is_zero() || self.delta == other.delta
    }

    fn field_with(&self, other: &Self) -> BigInt {
        if self.delta.is_zero() {
            other.delta.clone()
        } else if other.delta.is_zero() || self.delta == other.delta {
            self.delta.clone()
        } else {
            panic!(
                "incompatible radicands {} and {} in quadratic arithmetic",
                self.delta, other.delta
            )
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::IncompatibleRadicands {
                left: self.delta.to_string(),
                right: other.delta.to_string(),
            })
        }
    }

    fn build(p: Rational, q: Rational, delta: BigInt) -> Self {
        if q.is_zero() {
            Self::rational(p)
        } else {
            Self { p, q, delta }
        }
    }

    /// Galois conjugate `p − q√delta`.
    pub fn conj(&self) -> Self {
        Self::build(self.p.clone(), -&self.q, self.delta.clone())
    }

    /// Field norm `x·σ(x) = p² − q²·delta`, always rational.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * Rational::from_integer(self.delta.clone())
    }

    pub fn signum(&self) -> i32 {
        let sp = sign(&self.p);
        let sq = sign(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // opposite signs: compare p² with q²·delta
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * Rational::from_integer(self.delta.clone());
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "reciprocal of zero");
        let c = self.conj();
        Self::build(&c.p / &n, &c.q / &n, c.delta)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.check_compatible(other)?;
        Ok((self - other).signum().cmp(&0))
    }

    /// Rational enclosure with about `bits` relative bits of accuracy. Uses
    /// `x = N(x)/σ(x)` when the two terms have opposite signs, so tiny units
    /// like λ^-ℓ keep full relative precision.
    pub fn enclose(&self, bits: u32) -> RatInterval {
        if self.q.is_zero() {
            return RatInterval::point(self.p.clone());
        }
        let same_sign = self.p.is_zero() || sign(&self.p) == sign(&self.q);
        if same_sign {
            let d = Rational::from_integer(self.delta.clone());
            let prec = bits as i64 + 4;
            let root = RatInterval::new(
                rational::sqrt_floor(&d, prec),
                rational::sqrt_ceil(&d, prec),
            );
            root.scale(&self.q)
                .add(&RatInterval::point(self.p.clone()))
                .round_out(bits + 2)
        } else {
            let c = self.conj().enclose(bits + 2);
            RatInterval::point(self.norm()).div(&c).round_out(bits + 2)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(64).midpoint_f64()
    }
}

fn sign(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for QuadNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl Add for &QuadNumber {
    type Output = QuadNumber;
    fn add(self, o: &QuadNumber) -> QuadNumber {
        let d = self.field_with(o);
        QuadNumber::build(&self.p + &o.p, &self.q + &o.q, d)
    }
}

impl Sub for &QuadNumber {
    type Output = QuadNumber;
    fn sub(self, o: &QuadNumber) -> QuadNumber {
        let d = self.field_with(o);
        QuadNumber::build(&self.p - &o.p, &self.q - &o.q, d)
    }
}

impl Mul for &QuadNumber {
    type Output = QuadNumber;
    fn mul(self, o: &QuadNumber) -> QuadNumber {
        let d = self.field_with(o);
        if self.q.is_zero() {
            return QuadNumber::build(&self.p * &o.p, &self.p * &o.q, d);
        }
        if o.q.is_zero() {
            return QuadNumber::build(&self.p * &o.p, &self.q * &o.p, d);
        }
        let dd = Rational::from_integer(d.clone());
        QuadNumber::build(
            &self.p * &o.p + &self.q * &o.q * dd,
            &self.p * &o.q + &self.q * &o.p,
            d,
        )
    }
}

impl Div for &QuadNumber {
    type Output = QuadNumber;
    fn div(self, o: &QuadNumber) -> QuadNumber {
        if o.q.is_zero() {
            assert!(!o.p.is_zero(), "division by zero");
            return QuadNumber::build(&self.p / &o.p, &self.q / &o.p, self.delta.clone());
        }
        self * &o.recip()
    }
}

impl Neg for &QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        QuadNumber::build(-&self.p, -&self.q, self.delta.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadNumber {
            type Output = QuadNumber;
            fn $m(self, o: QuadNumber) -> QuadNumber {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        -&self
    }
}

impl Zero for QuadNumber {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QuadNumber {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<Rational> for QuadNumber {
    fn from(p: Rational) -> Self {
        Self::rational(p)
    }
}

impl From<BigInt> for QuadNumber {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

impl fmt::Debug for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", format_rational(&self.p))
        } else {
            write!(
                f,
                "{} + ({})√{}",
                format_rational(&self.p),
                format_rational(&self.q),
                self.delta
            )
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadDoc {
    p: String,
    q: String,
    delta: DeltaDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DeltaDoc {
    Small(u64),
    Big(String),
}

impl Serialize for QuadNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let delta = match self.delta.to_u64() {
            Some(d) => DeltaDoc::Small(d),
            None => DeltaDoc::Big(self.delta.to_string()),
        };
        QuadDoc {
            p: format_rational(&self.p),
            q: format_rational(&self.q),
            delta,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = QuadDoc::deserialize(d)?;
        let p = parse_rational(&doc.p).map_err(D::Error::custom)?;
        let q = parse_rational(&doc.q).map_err(D::Error::custom)?;
        let delta = match doc.delta {
            DeltaDoc::Small(v) => BigInt::from(v),
            DeltaDoc::Big(s) => s.parse::<BigInt>().map_err(D::Error::custom)?,
        };
        if q.is_zero() {
            return Ok(QuadNumber::rational(p));
        }
        if !delta.is_positive() {
            return Err(D::Error::custom("radicand must be positive"));
        }
        Ok(QuadNumber::new(p, q, delta))
    }
}

/// `(|t| + √(t²−4))/2` for `|t| > 2`, else 1.
pub fn spectral_radius_from_trace(t: &BigInt) -> QuadNumber {
    let at = t.abs();
    if at <= BigInt::from(2) {
        return QuadNumber::from_int(1);
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    QuadNumber::new(
        Rational::from_integer(at.clone()) * &half,
        half,
        &at * &at - 4,
    )
}

/// Is `n` even? (used by callers building 2λ in ℤ[√δ])
pub fn is_even(n: &BigInt) -> bool {
    n.is_even()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn q(p: Rational, qq: Rational, d: i64) -> QuadNumber {
        QuadNumber::new(p, qq, BigInt::from(d))
    }

    #[test]
    fn radicand_is_reduced() {
        let x = q(int(3), rat(1, 2), 32); // 3 + √32/2 = 3 + 2√2
        assert_eq!(x, q(int(3), int(2), 2));
        assert_eq!(q(int(1), int(1), 9), QuadNumber::from_int(4));
        assert_eq!(split_square(&BigInt::from(72)), (BigInt::from(6), BigInt::from(2)));
    }

    #[test]
    fn ring_ops_and_conjugation() {
        let phi = q(rat(1, 2), rat(1, 2), 5);
        let prod = &phi * &phi;
        assert_eq!(prod, &phi + &QuadNumber::from_int(1)); // φ² = φ + 1
        assert_eq!(phi.norm(), rat(-1, 1));
        assert_eq!(&phi * &phi.recip(), QuadNumber::from_int(1));
        assert!((&phi * &phi.conj()).is_rational());
    }

    #[test]
    fn signs_are_exact() {
        // 1414213562373095 - 10^15·√2 is tiny and negative
        let big = BigInt::from(10).pow(15);
        let x = QuadNumber::new(
            Rational::from_integer(BigInt::from(1_414_213_562_373_095i64)),
            Rational::from_integer(-big),
            BigInt::from(2),
        );
        assert_eq!(x.signum(), -1);
        let y = q(int(-3), int(2), 2); // 2√2 - 3 < 0
        assert_eq!(y.signum(), -1);
        assert_eq!(q(int(3), int(-2), 2).signum(), 1);
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(spectral_radius_from_trace(&BigInt::from(2)), QuadNumber::from_int(1));
        assert_eq!(spectral_radius_from_trace(&BigInt::from(-1)), QuadNumber::from_int(1));
        let r = spectral_radius_from_trace(&BigInt::from(6));
        assert_eq!(r, q(int(3), int(2), 2));
        let g = spectral_radius_from_trace(&BigInt::from(3));
        assert!((g.to_f64() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn enclosure_keeps_relative_precision_for_small_units() {
        let lam = q(int(3), int(2), 2);
        let tiny = lam.recip().pow(200);
        let enc = tiny.enclose(80);
        assert!(enc.lo.is_positive());
        let rel = rational::to_f64(&(enc.width() / &enc.lo));
        assert!(rel < 1e-20, "relative width {rel}");
    }

    #[test]
    fn serde_shape() {
        let x = q(rat(3, 2), rat(1, 2), 5);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"p":"3/2","q":"1/2","delta":5}"#);
        let back: QuadNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    #[should_panic(expected = "incompatible radicands")]
    fn mixing_fields_panics_in_operators() {
        let _ = &q(int(0), int(1), 2) + &q(int(0), int(1), 3);
    }
}
