//! Affine maps `x ↦ θx + τ`, their 3×3 embedding, and fixed-point sets.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{Mat2, Vec2};
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// `g x = linear · x + translation`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine<T> {
    pub linear: Mat2<T>,
    pub translation: Vec2<T>,
}

impl<T: Ring> Affine<T> {
    pub fn new(linear: Mat2<T>, translation: Vec2<T>) -> Self {
        Self {
            linear,
            translation,
        }
    }

    pub fn identity() -> Self {
        Self::new(Mat2::identity(), Vec2::zero())
    }

    pub fn linear_only(linear: Mat2<T>) -> Self {
        Self::new(linear, Vec2::zero())
    }

    pub fn translation_only(t: Vec2<T>) -> Self {
        Self::new(Mat2::identity(), t)
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }

    /// `(self ∘ o)(x) = self(o(x))`.
    pub fn compose(&self, o: &Self) -> Self {
        Self::new(
            self.linear.mul(&o.linear),
            self.linear.apply(&o.translation).add(&self.translation),
        )
    }

    pub fn apply(&self, x: &Vec2<T>) -> Vec2<T> {
        self.linear.apply(x).add(&self.translation)
    }

    /// Inverse assuming `det θ = 1`.
    pub fn inverse_unimodular(&self) -> Self {
        let inv = self.linear.adjugate();
        let t = inv.apply(&self.translation).neg();
        Self::new(inv, t)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// `ι(g) = [[θ, τ], [0, 1]]`, row-major.
    pub fn iota(&self) -> [[T; 3]; 3] {
        let m = &self.linear;
        let t = &self.translation;
        [
            [m.a11.clone(), m.a12.clone(), t.x.clone()],
            [m.a21.clone(), m.a22.clone(), t.y.clone()],
            [T::zero(), T::zero(), T::one()],
        ]
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Affine<U> {
        Affine {
            linear: self.linear.map(&f),
            translation: self.translation.map(&f),
        }
    }

    /// `g h g⁻¹` for unimodular `g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse_unimodular())
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        self.compose(o) == o.compose(self)
    }
}

impl<T: Field> Affine<T> {
    pub fn inverse(&self) -> Option<Self> {
        let inv = self.linear.inverse()?;
        let t = inv.apply(&self.translation).neg();
        Some(Self::new(inv, t))
    }
}

/// Element of SA(2,ℤ).
pub type AffineElement = Affine<BigInt>;
pub type RationalPoint = Vec2<Rational>;

impl AffineElement {
    /// Checked constructor: the linear part must have determinant 1.
    pub fn from_parts(linear: Mat2<BigInt>, translation: Vec2<BigInt>) -> Result<Self> {
        let det = linear.det();
        if !det.is_one() {
            return Err(Error::NotUnimodular {
                det: det.to_string(),
            });
        }
        Ok(Self::new(linear, translation))
    }

    pub fn from_i64(e: [i64; 6]) -> Result<Self> {
        Self::from_parts(
            super::matrix::imat(e[0], e[1], e[2], e[3]),
            super::matrix::ivec(e[4], e[5]),
        )
    }

    pub fn inverse_elem(&self) -> Self {
        self.inverse_unimodular()
    }

    pub fn to_rational(&self) -> Affine<Rational> {
        self.map(|x| Rational::from_integer(x.clone()))
    }

    pub fn apply_rational(&self, p: &RationalPoint) -> RationalPoint {
        let m = &self.linear;
        let t = &self.translation;
        let r = |x: &BigInt| Rational::from_integer(x.clone());
        Vec2::new(
            r(&m.a11) * &p.x + r(&m.a12) * &p.y + r(&t.x),
            r(&m.a21) * &p.x + r(&m.a22) * &p.y + r(&t.y),
        )
    }

    /// Literal form "a11 a12 a21 a22 | tx ty".
    pub fn to_literal(&self) -> String {
        let m = &self.linear;
        let t = &self.translation;
        format!(
            "{} {} {} {} | {} {}",
            m.a11, m.a12, m.a21, m.a22, t.x, t.y
        )
    }

    /// Size of the largest entry, for reporting.
    pub fn max_abs_entry(&self) -> BigInt {
        self.linear
            .entries()
            .into_iter()
            .chain([&self.translation.x, &self.translation.y])
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }
}

impl Serialize for AffineElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_literal())
    }
}

impl<'de> Deserialize<'de> for AffineElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        super::parse::parse_element(&s).map_err(serde::de::Error::custom)
    }
}

impl<T: fmt::Display> fmt::Display for Affine<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.linear, self.translation)
    }
}

impl<T: fmt::Debug> fmt::Debug for Affine<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} | {:?}", self.linear, self.translation)
    }
}

/// `{x : normal·x = offset}` with a nonzero normal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalLine {
    pub normal: Vec2<Rational>,
    pub offset: Rational,
}

impl RationalLine {
    pub fn new(normal: Vec2<Rational>, offset: Rational) -> Self {
        assert!(!normal.is_zero(), "line with zero normal");
        Self { normal, offset }
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.normal.dot(p) == self.offset
    }

    /// Same set of points.
    pub fn same_as(&self, o: &Self) -> bool {
        self.normal.wedge(&o.normal).is_zero() && {
            // parallel: compare offsets after scaling
            let (s, t) = if !self.normal.x.is_zero() {
                (&self.normal.x, &o.normal.x)
            } else {
                (&self.normal.y, &o.normal.y)
            };
            &self.offset * t == &o.offset * s
        }
    }
}

impl fmt::Display for RationalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}·x + {}·y = {}",
            self.normal.x, self.normal.y, self.offset
        )
    }
}

impl fmt::Debug for RationalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Solution set of `g x = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedSet {
    Point(RationalPoint),
    Line(RationalLine),
    Plane,
    Empty,
}

impl FixedSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, FixedSet::Empty)
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        match self {
            FixedSet::Point(q) => q == p,
            FixedSet::Line(l) => l.contains(p),
            FixedSet::Plane => true,
            FixedSet::Empty => false,
        }
    }

    pub fn intersect(&self, o: &FixedSet) -> FixedSet {
        use FixedSet::*;
        match (self, o) {
            (Empty, _) | (_, Empty) => Empty,
            (Plane, x) | (x, Plane) => x.clone(),
            (Point(p), x) | (x, Point(p)) => {
                if x.contains(p) {
                    Point(p.clone())
                } else {
                    Empty
                }
            }
            (Line(l1), Line(l2)) => {
                let det = l1.normal.wedge(&l2.normal);
                if det.is_zero() {
                    if l1.same_as(l2) {
                        Line(l1.clone())
                    } else {
                        Empty
                    }
                } else {
                    // Cramer on [n1; n2] x = [c1; c2]
                    let x = (&l1.offset * &l2.normal.y - &l2.offset * &l1.normal.y) / &det;
                    let y = (&l1.normal.x * &l2.offset - &l2.normal.x * &l1.offset) / &det;
                    Point(Vec2::new(x, y))
                }
            }
        }
    }
}

/// Exact solution of `(I − θ(g)) x = τ(g)`.
pub fn fixed_point(g: &AffineElement) -> FixedSet {
    let r = |x: &BigInt| Rational::from_integer(x.clone());
    let m = Mat2::<BigInt>::identity().sub(&g.linear).map(r);
    let t = g.translation.map(r);
    let det = m.det();
    if !det.is_zero() {
        let inv = m.inverse().expect("nonsingular");
        return FixedSet::Point(inv.apply(&t));
    }
    if m.frobenius_sq().is_zero() {
        return if t.is_zero() {
            FixedSet::Plane
        } else {
            FixedSet::Empty
        };
    }
    // rank one: a nonzero row carries the equation, the other must agree
    let rows = [
        (Vec2::new(m.a11.clone(), m.a12.clone()), t.x.clone()),
        (Vec2::new(m.a21.clone(), m.a22.clone()), t.y.clone()),
    ];
    let (lead, rhs) = rows
        .iter()
        .find(|(n, _)| !n.is_zero())
        .cloned()
        .expect("rank one");
    let line = RationalLine::new(lead, rhs);
    for (n, c) in &rows {
        if n.is_zero() {
            if !c.is_zero() {
                return FixedSet::Empty;
            }
        } else if !RationalLine::new(n.clone(), c.clone()).same_as(&line) {
            return FixedSet::Empty;
        }
    }
    FixedSet::Line(line)
}

/// Unique fixed point `φ(g)` when `det(I − θ(g)) ≠ 0`.
pub fn unique_fixed_point(g: &AffineElement) -> Option<RationalPoint> {
    match fixed_point(g) {
        FixedSet::Point(p) => Some(p),
        _ => None,
    }
}

/// Common fixed set of a family of elements.
pub fn common_fixed_set<'a, I: IntoIterator<Item = &'a AffineElement>>(elems: I) -> FixedSet {
    let mut acc = FixedSet::Plane;
    for g in elems {
        acc = acc.intersect(&fixed_point(g));
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// A representative rational point of a nonempty fixed set.
pub fn witness_point(set: &FixedSet) -> Option<RationalPoint> {
    match set {
        FixedSet::Point(p) => Some(p.clone()),
        FixedSet::Plane => Some(Vec2::new(Rational::zero(), Rational::zero())),
        FixedSet::Line(l) => {
            if !l.normal.x.is_zero() {
                Some(Vec2::new(&l.offset / &l.normal.x, Rational::zero()))
            } else {
                Some(Vec2::new(Rational::zero(), &l.offset / &l.normal.y))
            }
        }
        FixedSet::Empty => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::matrix::{imat, ivec};
    use crate::arith::rational::{int, rat};

    fn el(e: [i64; 6]) -> AffineElement {
        AffineElement::from_i64(e).unwrap()
    }

    #[test]
    fn checked_constructor_rejects_det() {
        assert!(matches!(
            AffineElement::from_parts(imat(2, 0, 0, 1), ivec(0, 0)),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn composition_law_and_inverse() {
        let g = el([2, 1, 1, 1, 1, 0]);
        let h = el([1, 2, 0, 1, 0, 1]);
        let gh = g.compose(&h);
        assert_eq!(
            gh.translation,
            g.linear.apply(&h.translation).add(&g.translation)
        );
        assert!(g.compose(&g.inverse_elem()).is_identity());
        let x = Vec2::new(rat(1, 3), rat(-2, 7));
        assert_eq!(
            gh.apply_rational(&x),
            g.apply_rational(&h.apply_rational(&x))
        );
    }

    #[test]
    fn fixed_point_kinds() {
        assert_eq!(fixed_point(&AffineElement::identity()), FixedSet::Plane);
        assert_eq!(fixed_point(&el([1, 0, 0, 1, 1, 0])), FixedSet::Empty);
        let g = el([2, 1, 1, 1, 1, 0]);
        let FixedSet::Point(p) = fixed_point(&g) else {
            panic!("expected a point")
        };
        assert_eq!(g.apply_rational(&p), p);
        // unipotent translated off its fixed direction: no fixed point
        assert_eq!(fixed_point(&el([1, 2, 0, 1, 0, 1])), FixedSet::Empty);
        assert!(matches!(fixed_point(&el([1, 2, 0, 1, 1, 0])), FixedSet::Line(_)));
        // unipotent fixing the line y = 0
        match fixed_point(&el([1, 2, 0, 1, 0, 0])) {
            FixedSet::Line(l) => {
                assert!(l.contains(&Vec2::new(int(5), int(0))));
                assert!(!l.contains(&Vec2::new(int(0), int(1))));
            }
            other => panic!("expected a line, got {other:?}"),
        }
    }

    #[test]
    fn lines_intersect_in_the_sanov_point() {
        let l = el([1, 2, 0, 1, 0, 0]);
        let r = el([1, 0, 2, 1, 0, 1]);
        let common = common_fixed_set([&l, &r]);
        assert_eq!(common, FixedSet::Point(Vec2::new(rat(-1, 2), int(0))));
    }

    #[test]
    fn iota_is_multiplicative() {
        let g = el([2, 1, 1, 1, 1, 0]);
        let h = el([1, 0, 3, 1, -2, 5]);
        let mul3 = |a: [[BigInt; 3]; 3], b: [[BigInt; 3]; 3]| {
            let mut c: [[BigInt; 3]; 3] = Default::default();
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        c[i][j] += &a[i][k] * &b[k][j];
                    }
                }
            }
            c
        };
        assert_eq!(g.compose(&h).iota(), mul3(g.iota(), h.iota()));
    }
}
