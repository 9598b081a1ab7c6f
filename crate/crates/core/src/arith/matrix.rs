//! 2×2 matrices and plane vectors over a generic ring.

use std::fmt;

use num_bigint::BigInt;

use serde::{Deserialize, Serialize};

use crate::scalar::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Ring> Vec2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn e1() -> Self {
        Self::new(T::one(), T::zero())
    }

    pub fn e2() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.x.clone(), -self.y.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(c.clone() * self.x.clone(), c.clone() * self.y.clone())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    /// `u ∧ v = u₁v₂ − u₂v₁`.
    pub fn wedge(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Vec2<U> {
        Vec2 {
            x: f(&self.x),
            y: f(&self.y),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Vec2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<T: fmt::Debug> fmt::Debug for Vec2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

/// `[[a11, a12], [a21, a22]]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2<T> {
    pub a11: T,
    pub a12: T,
    pub a21: T,
    pub a22: T,
}

impl<T: Ring> Mat2<T> {
    pub fn new(a11: T, a12: T, a21: T, a22: T) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn diag(d1: T, d2: T) -> Self {
        Self::new(d1, T::zero(), T::zero(), d2)
    }

    /// Matrix with the given columns.
    pub fn from_columns(c1: &Vec2<T>, c2: &Vec2<T>) -> Self {
        Self::new(c1.x.clone(), c2.x.clone(), c1.y.clone(), c2.y.clone())
    }

    pub fn col1(&self) -> Vec2<T> {
        Vec2::new(self.a11.clone(), self.a21.clone())
    }

    pub fn col2(&self) -> Vec2<T> {
        Vec2::new(self.a12.clone(), self.a22.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.a11.is_one() && self.a22.is_one() && self.a12.is_zero() && self.a21.is_zero()
    }

    pub fn det(&self) -> T {
        self.a11.clone() * self.a22.clone() - self.a12.clone() * self.a21.clone()
    }

    pub fn trace(&self) -> T {
        self.a11.clone() + self.a22.clone()
    }

    pub fn transpose(&self) -> Self {
        Self::new(
            self.a11.clone(),
            self.a21.clone(),
            self.a12.clone(),
            self.a22.clone(),
        )
    }

    /// Classical adjugate; the inverse when `det == 1`.
    pub fn adjugate(&self) -> Self {
        Self::new(
            self.a22.clone(),
            -self.a12.clone(),
            -self.a21.clone(),
            self.a11.clone(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.a11.clone() * o.a11.clone() + self.a12.clone() * o.a21.clone(),
            self.a11.clone() * o.a12.clone() + self.a12.clone() * o.a22.clone(),
            self.a21.clone() * o.a11.clone() + self.a22.clone() * o.a21.clone(),
            self.a21.clone() * o.a12.clone() + self.a22.clone() * o.a22.clone(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.a11.clone() + o.a11.clone(),
            self.a12.clone() + o.a12.clone(),
            self.a21.clone() + o.a21.clone(),
            self.a22.clone() + o.a22.clone(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(
            self.a11.clone() - o.a11.clone(),
            self.a12.clone() - o.a12.clone(),
            self.a21.clone() - o.a21.clone(),
            self.a22.clone() - o.a22.clone(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            c.clone() * self.a11.clone(),
            c.clone() * self.a12.clone(),
            c.clone() * self.a21.clone(),
            c.clone() * self.a22.clone(),
        )
    }

    pub fn apply(&self, v: &Vec2<T>) -> Vec2<T> {
        Vec2::new(
            self.a11.clone() * v.x.clone() + self.a12.clone() * v.y.clone(),
            self.a21.clone() * v.x.clone() + self.a22.clone() * v.y.clone(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Squared Frobenius norm `Σ aᵢⱼ²`.
    pub fn frobenius_sq(&self) -> T {
        self.a11.clone() * self.a11.clone()
            + self.a12.clone() * self.a12.clone()
            + self.a21.clone() * self.a21.clone()
            + self.a22.clone() * self.a22.clone()
    }

    /// `MᵀM`.
    pub fn gram(&self) -> Self {
        self.transpose().mul(self)
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat2<U> {
        Mat2 {
            a11: f(&self.a11),
            a12: f(&self.a12),
            a21: f(&self.a21),
            a22: f(&self.a22),
        }
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.a11, &self.a12, &self.a21, &self.a22]
    }
}

impl<T: Field> Mat2<T> {
    /// Inverse over a field; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let adj = self.adjugate();
        Some(adj.map(|x| x.clone() / d.clone()))
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:?}, {:?}], [{:?}, {:?}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

/// Integer matrix from machine integers.
pub fn imat(a11: i64, a12: i64, a21: i64, a22: i64) -> Mat2<BigInt> {
    Mat2::new(
        BigInt::from(a11),
        BigInt::from(a12),
        BigInt::from(a21),
        BigInt::from(a22),
    )
}

pub fn ivec(x: i64, y: i64) -> Vec2<BigInt> {
    Vec2::new(BigInt::from(x), BigInt::from(y))
}

/// The standard unipotent generators `[[1,1],[0,1]]` and `[[1,0],[1,1]]`.
pub fn upper_unipotent() -> Mat2<BigInt> {
    imat(1, 1, 0, 1)
}

pub fn lower_unipotent() -> Mat2<BigInt> {
    imat(1, 0, 1, 1)
}
