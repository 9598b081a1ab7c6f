//! Scalar traits shared by the matrix and affine types.
//!
//! The exact pipeline instantiates them with `BigInt`, `BigRational` and
//! [`QuadNumber`](crate::arith::QuadNumber); floating oracles and the
//! spectral code use `f32`/`f64`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A commutative ring with identity, as far as 2×2 matrix algebra cares.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl<T: Ring + Div<Output = T>> Field for T {}
