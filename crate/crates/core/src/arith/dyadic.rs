//! Fixed-precision dyadic intervals `[m₁·2^e₁, m₂·2^e₂]`, a fast filter in
//! front of exact rational arithmetic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    fn zero() -> Self {
        Self { m: BigInt::zero(), e: 0 }
    }

    fn floor(&self, bits: u32) -> Self {
        let excess = self.m.bits() as i64 - bits as i64;
        if excess <= 0 {
            return self.clone();
        }
        Self {
            m: &self.m >> excess as usize,
            e: self.e + excess,
        }
    }

    fn ceil(&self, bits: u32) -> Self {
        let excess = self.m.bits() as i64 - bits as i64;
        if excess <= 0 {
            return self.clone();
        }
        Self {
            m: -((-&self.m) >> excess as usize),
            e: self.e + excess,
        }
    }

    fn add(&self, o: &Self) -> Self {
        if self.m.is_zero() {
            return o.clone();
        }
        if o.m.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        Self {
            m: (&self.m << (self.e - e) as usize) + (&o.m << (o.e - e) as usize),
            e,
        }
    }

    fn neg(&self) -> Self {
        Self { m: -&self.m, e: self.e }
    }

    fn mul(&self, o: &Self) -> Self {
        Self { m: &self.m * &o.m, e: self.e + o.e }
    }

    fn cmp(&self, o: &Self) -> Ordering {
        let d = self.add(&o.neg());
        d.m.sign().cmp(&num_bigint::Sign::NoSign)
    }

    fn from_rational(x: &Rational, bits: u32, up: bool) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let e = x.numer().bits() as i64 - x.denom().bits() as i64 - bits as i64 - 2;
        let (n, d) = if e <= 0 {
            (x.numer() << (-e) as usize, x.denom().clone())
        } else {
            (x.numer().clone(), x.denom() << e as usize)
        };
        let (q, r) = n.div_mod_floor(&d);
        let m = if up && !r.is_zero() { q + 1 } else { q };
        Self { m, e }
    }
}

/// Closed interval with dyadic endpoints carrying at most `bits` mantissa bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyInterval {
    lo: Dyadic,
    hi: Dyadic,
    bits: u32,
}

impl DyInterval {
    pub fn from_rational(x: &Rational, bits: u32) -> Self {
        Self {
            lo: Dyadic::from_rational(x, bits, false),
            hi: Dyadic::from_rational(x, bits, true),
            bits,
        }
    }

    pub fn from_bounds(lo: &Rational, hi: &Rational, bits: u32) -> Self {
        Self {
            lo: Dyadic::from_rational(lo, bits, false),
            hi: Dyadic::from_rational(hi, bits, true),
            bits,
        }
    }

    fn round(lo: Dyadic, hi: Dyadic, bits: u32) -> Self {
        Self {
            lo: lo.floor(bits),
            hi: hi.ceil(bits),
            bits,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::round(self.lo.add(&o.lo), self.hi.add(&o.hi), self.bits)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::round(self.lo.add(&o.hi.neg()), self.hi.add(&o.lo.neg()), self.bits)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = c.iter().min_by(|a, b| a.cmp(b)).unwrap().clone();
        let hi = c.iter().max_by(|a, b| a.cmp(b)).unwrap().clone();
        Self::round(lo, hi, self.bits)
    }

    /// `x²`, clamped at zero.
    pub fn square(&self) -> Self {
        let s = self.mul(self);
        if s.lo.m.is_negative() {
            Self { lo: Dyadic::zero(), ..s }
        } else {
            s
        }
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.m.is_positive() {
            Some(1)
        } else if self.hi.m.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    /// `Some(Less)` etc. when the intervals are disjoint.
    pub fn compare(&self, o: &Self) -> Option<Ordering> {
        if self.hi.cmp(&o.lo) == Ordering::Less {
            Some(Ordering::Less)
        } else if self.lo.cmp(&o.hi) == Ordering::Greater {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let as_rat = |d: &Dyadic| {
            if d.e >= 0 {
                Rational::from_integer(&d.m << d.e as usize)
            } else {
                Rational::new(d.m.clone(), BigInt::from(1) << (-d.e) as usize)
            }
        };
        &as_rat(&self.lo) <= x && x <= &as_rat(&self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn encloses_rationals_and_products() {
        let third = DyInterval::from_rational(&rat(1, 3), 64);
        assert!(third.contains(&rat(1, 3)));
        assert!(!third.contains(&rat(1, 3 + 1)));
        let p = third.mul(&DyInterval::from_rational(&int(-3), 64));
        assert!(p.contains(&int(-1)));
        assert_eq!(p.sign(), Some(-1));
        let d = third.sub(&third);
        assert!(d.contains(&int(0)));
        assert_eq!(d.sign(), None);
    }

    #[test]
    fn compare_and_square() {
        let a = DyInterval::from_bounds(&rat(-1, 2), &rat(1, 4), 32);
        let s = a.square();
        assert!(s.contains(&int(0)) && s.contains(&rat(1, 4)));
        let big = DyInterval::from_rational(&int(1 << 40), 32);
        assert_eq!(s.compare(&big), Some(Ordering::Less));
        assert_eq!(big.compare(&s), Some(Ordering::Greater));
    }
}
