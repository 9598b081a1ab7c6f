//! Exact arithmetic: rationals, quadratic fields, intervals, 2×2 matrices,
//! affine maps, norms and projective distances.

pub mod affine;
pub mod ball;
pub mod dyadic;
pub mod conjugation;
pub mod eigen;
pub mod interval;
pub mod matrix;
pub mod norm;
pub mod parse;
pub mod projective;
pub mod quad;
pub mod rational;

pub use affine::{fixed_point, Affine, AffineElement, FixedSet, RationalLine, RationalPoint};
pub use eigen::{eigenvectors_arith, EigenData};
pub use interval::{NormInterval, RatInterval};
pub use matrix::{Mat2, Vec2};
pub use norm::{op_norm, spectral_radius};
pub use projective::fs_distance_sq;
pub use quad::QuadNumber;
pub use rational::Rational;
