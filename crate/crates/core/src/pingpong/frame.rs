//! The diagonalizing frame `x = M z + φ(a)` in which `θ(a)` is diagonal.

use serde::{Deserialize, Serialize};

use crate::arith::affine::{unique_fixed_point, AffineElement, RationalPoint};
use crate::arith::eigen::{eigenvectors_arith, EigenData};
use crate::arith::matrix::{Mat2, Vec2};
use crate::arith::projective::{fs_distance_sq, lift};
use crate::arith::quad::QuadNumber;
use crate::arith::rational::ratvec;
use crate::error::{Error, Result};

/// Frame data for a pair `(a, h)`; `h' = G⁻¹hG`, `v₀' = τ(h') = φ(b')`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub lambda: QuadNumber,
    pub lambda_inv: QuadNumber,
    /// Columns are the eigenvectors `u`, `v` of `θ(a)`.
    pub m: Mat2<QuadNumber>,
    pub m_inv: Mat2<QuadNumber>,
    #[serde(with = "ratvec")]
    pub origin: RationalPoint,
    /// `θ(h') = M⁻¹θ(h)M`.
    pub h_lin: Mat2<QuadNumber>,
    /// `v₀' = M⁻¹(hφ(a) − φ(a))`.
    pub v0: Vec2<QuadNumber>,
}

fn qmat(m: &Mat2<num_bigint::BigInt>) -> Mat2<QuadNumber> {
    m.map(|x| QuadNumber::from_bigint(x.clone()))
}

impl Frame {
    pub fn build(a: &AffineElement, h: &AffineElement) -> Result<Self> {
        let EigenData {
            lambda,
            lambda_inv,
            u,
            v,
            ..
        } = eigenvectors_arith(&a.linear)?;
        let m = Mat2::from_columns(&u, &v);
        let m_inv = m
            .inverse()
            .ok_or_else(|| Error::Invalid("eigenvectors are dependent".into()))?;
        let diag = m_inv.mul(&qmat(&a.linear)).mul(&m);
        if diag != Mat2::diag(lambda.clone(), lambda_inv.clone()) {
            return Err(Error::Invalid("frame does not diagonalize θ(a)".into()));
        }
        let origin = unique_fixed_point(a)
            .ok_or_else(|| Error::Invalid("hyperbolic element without a fixed point".into()))?;
        let h_lin = m_inv.mul(&qmat(&h.linear)).mul(&m);
        let moved = h.apply_rational(&origin).sub(&origin);
        let v0 = m_inv.apply(&lift(&moved));
        Ok(Self {
            lambda,
            lambda_inv,
            m,
            m_inv,
            origin,
            h_lin,
            v0,
        })
    }

    /// `|λ|`, the expansion rate of `a` in the frame.
    pub fn lambda_abs(&self) -> QuadNumber {
        self.lambda.abs()
    }

    /// Frame coordinates `M⁻¹(x − φ(a))` of a rational point.
    pub fn to_frame(&self, x: &RationalPoint) -> Vec2<QuadNumber> {
        self.m_inv.apply(&lift(&x.sub(&self.origin)))
    }

    /// `W' = {e₁, e₂, θ(h')e₁, θ(h')e₂}`.
    pub fn lines(&self) -> [Vec2<QuadNumber>; 4] {
        [
            Vec2::e1(),
            Vec2::e2(),
            self.h_lin.col1(),
            self.h_lin.col2(),
        ]
    }
}

/// Distances in the frame entering the table checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameDistances {
    /// `min d²` over pairs of `W'`.
    pub lines: QuadNumber,
    /// `min_{u∈W'} d²([u], [v₀'])`.
    pub to_v0: QuadNumber,
    /// `min d²` over pairs of `W' ∪ {v₀'}`.
    pub all: QuadNumber,
    /// `‖v₀'‖²`.
    pub v0_norm_sq: QuadNumber,
}

fn min_q(xs: impl IntoIterator<Item = QuadNumber>) -> QuadNumber {
    xs.into_iter()
        .reduce(|a, b| if b < a { b } else { a })
        .expect("nonempty")
}

impl FrameDistances {
    /// Zero vectors and coincident lines give distance 0, which fails every
    /// strict check downstream.
    pub fn compute(frame: &Frame) -> Result<Self> {
        let w = frame.lines();
        let d = |x: &Vec2<QuadNumber>, y: &Vec2<QuadNumber>| -> Result<QuadNumber> {
            if x.is_zero() || y.is_zero() {
                return Ok(QuadNumber::from_int(0));
            }
            fs_distance_sq(x, y)
        };
        let mut pairs = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                pairs.push(d(&w[i], &w[j])?);
            }
        }
        let lines = min_q(pairs);
        let to_v0 = min_q(w.iter().map(|u| d(u, &frame.v0)).collect::<Result<Vec<_>>>()?);
        let all = if to_v0 < lines {
            to_v0.clone()
        } else {
            lines.clone()
        };
        Ok(Self {
            lines,
            to_v0,
            all,
            v0_norm_sq: frame.v0.norm_sq(),
        })
    }
}
