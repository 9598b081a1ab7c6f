//! Closed intervals with exact rational endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::rational::{self, ceil_dyadic, floor_dyadic, log2_estimate, ratstr, Rational};

/// `[lo, hi]` with `lo <= hi`. Used for every irrational quantity the
/// certificates compare (operator norms, square roots, mixed-field values).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatInterval {
    #[serde(with = "ratstr")]
    pub lo: Rational,
    #[serde(with = "ratstr")]
    pub hi: Rational,
}

/// Enclosure of an operator norm.
pub type NormInterval = RatInterval;

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn midpoint_f64(&self) -> f64 {
        (rational::to_f64(&self.lo) + rational::to_f64(&self.hi)) / 2.0
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.hi, -&self.lo)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Self::new(a, b)
        } else {
            Self::new(b, a)
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if !self.lo.is_negative() && !o.lo.is_negative() {
            return Self::new(&self.lo * &o.lo, &self.hi * &o.hi);
        }
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    /// Reciprocal of an interval not containing zero.
    pub fn recip(&self) -> Self {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing 0"
        );
        Self::new(self.hi.recip(), self.lo.recip())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    /// Integer power of a nonnegative interval, rounding outward to `bits`
    /// relative bits after each squaring.
    pub fn pow(&self, mut e: u64, bits: u32) -> Self {
        assert!(!self.lo.is_negative(), "pow of a possibly negative interval");
        let mut base = self.clone();
        let mut acc = RatInterval::point(Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).round_out(bits);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).round_out(bits);
            }
        }
        acc
    }

    /// Enclosure of sqrt over a nonnegative interval at `bits` relative bits.
    pub fn sqrt(&self, bits: u32) -> Self {
        assert!(!self.lo.is_negative(), "sqrt of a negative interval");
        let mag = log2_estimate(&self.hi) / 2;
        let prec = bits as i64 - mag + 2;
        Self::new(
            rational::sqrt_floor(&self.lo, prec),
            rational::sqrt_ceil(&self.hi, prec),
        )
    }

    /// Widen to dyadic endpoints carrying about `bits` significant bits, so
    /// long products keep bounded numerator sizes.
    pub fn round_out(&self, bits: u32) -> Self {
        let prec = |x: &Rational| bits as i64 - log2_estimate(x) + 2;
        Self::new(
            floor_dyadic(&self.lo, prec(&self.lo)),
            ceil_dyadic(&self.hi, prec(&self.hi)),
        )
    }

    /// `Some(Less)` if every point is below every point of `o`, etc.; `None`
    /// when the enclosures overlap.
    pub fn compare(&self, o: &Self) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && o.lo == o.hi && self.lo == o.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.12e}, {:.12e}]",
            rational::to_f64(&self.lo),
            rational::to_f64(&self.hi)
        )
    }
}

/// Refinement schedule for interval comparisons: 64 bits, then 64 more per
/// round, so the enclosure width at least halves every round.
pub const MAX_REFINEMENT_ROUNDS: u32 = 60;

pub fn round_bits(round: u32) -> u32 {
    64 * (round + 1)
}

/// Decide `lhs(bits) < rhs(bits)` (strict) by refining until the enclosures
/// separate. Returns `Err` with the last enclosures if still overlapping.
pub fn decide_less<F>(
    mut enclose: F,
    max_rounds: u32,
) -> Result<(bool, RatInterval, RatInterval), (RatInterval, RatInterval)>
where
    F: FnMut(u32) -> (RatInterval, RatInterval),
{
    let mut last = None;
    for round in 0..max_rounds {
        let (l, r) = enclose(round_bits(round));
        match l.compare(&r) {
            Some(Ordering::Less) => return Ok((true, l, r)),
            Some(_) => return Ok((false, l, r)),
            None => last = Some((l, r)),
        }
    }
    Err(last.expect("at least one refinement round"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn arithmetic_encloses() {
        let a = RatInterval::new(rat(-1, 2), rat(1, 3));
        let b = RatInterval::new(int(2), int(3));
        let p = a.mul(&b);
        assert_eq!(p, RatInterval::new(rat(-3, 2), int(1)));
        assert_eq!(a.sub(&b), RatInterval::new(rat(-7, 2), rat(-5, 3)));
        assert_eq!(b.recip(), RatInterval::new(rat(1, 3), rat(1, 2)));
    }

    #[test]
    fn pow_and_sqrt_enclose() {
        let two = RatInterval::point(int(2));
        let s = two.sqrt(80);
        assert!(s.lo < s.hi);
        let sq = s.mul(&s);
        assert!(sq.contains(&int(2)));
        let p = s.pow(20, 80);
        assert!(p.contains(&int(1024)));
        assert!(p.width() < rat(1, 1 << 30));
    }

    #[test]
    fn compare_reports_overlap() {
        let a = RatInterval::new(int(0), int(2));
        let b = RatInterval::new(int(1), int(3));
        assert_eq!(a.compare(&b), None);
        let c = RatInterval::new(int(3), int(4));
        assert_eq!(a.compare(&c), Some(Ordering::Less));
        assert_eq!(c.compare(&a), Some(Ordering::Greater));
    }

    #[test]
    fn refinement_separates_close_values() {
        // sqrt(2) < 1414213562373095/10^15 + 1e-15 ... distinguish sqrt(2) from a
        // rational 1e-30 above it.
        let target = rational::sqrt_ceil(&int(2), 100) + rat(1, 1) / Rational::from_integer(num_bigint::BigInt::from(10).pow(30));
        let res = decide_less(
            |bits| {
                (
                    RatInterval::point(int(2)).sqrt(bits),
                    RatInterval::point(target.clone()),
                )
            },
            MAX_REFINEMENT_ROUNDS,
        );
        assert!(res.unwrap().0);
    }
}
