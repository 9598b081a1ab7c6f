//! Certified locally commutative free pairs in SA(2,ℤ).
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: exact rationals, quadratic numbers `p + q√δ`, rational
//!   intervals, matrices and affine maps generic over the scalar ring.
//! * [`pingpong`]: search for a hyperbolic element and a conjugator in
//!   general position, separation selection, the table checks and the
//!   certificate document.
//! * [`verify`]: brute-force freeness, local commutativity and table
//!   sampling against a certificate.
//! * [`paradox`]: four-piece decompositions of finitely many free orbits.
//! * [`spectral`]: Schreier operators on finite quotients and gap estimates.

pub mod arith;
pub mod error;
pub mod paradox;
pub mod pingpong;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};

use num_bigint::BigInt;

pub use arith::{
    Affine, AffineElement, FixedSet, Mat2, NormInterval, QuadNumber, RatInterval, Rational,
    RationalPoint, Vec2,
};

/// Integer matrices, the linear parts `θ(g)`.
pub type IntMat2 = Mat2<BigInt>;
/// Rational matrices.
pub type RatMat2 = Mat2<Rational>;
/// Matrices over a real quadratic field (diagonalizing frames).
pub type QuadMat2 = Mat2<QuadNumber>;
/// Affine maps over a real quadratic field.
pub type QuadAffine = Affine<QuadNumber>;
/// Floating matrices for oracles and reports.
pub type F64Mat2 = Mat2<f64>;
pub type F32Mat2 = Mat2<f32>;
