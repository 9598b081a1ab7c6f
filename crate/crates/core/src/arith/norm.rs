//! Operator norms (as rational enclosures) and spectral radii.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::affine::AffineElement;
use super::interval::{NormInterval, RatInterval};
use super::matrix::Mat2;
use super::quad::{spectral_radius_from_trace, QuadNumber};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

fn r(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

/// Is `t·I − A` positive semidefinite, for symmetric `A` given row-major?
fn psd_shift<const N: usize>(a: &[[Rational; N]; N], t: &Rational) -> bool {
    let mut b = a.clone();
    for (i, row) in b.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = if i == j { t - &*v } else { -&*v };
        }
    }
    // every principal minor must be nonnegative
    for mask in 1u32..(1 << N) {
        let idx: Vec<usize> = (0..N).filter(|i| mask & (1 << i) != 0).collect();
        if minor(&b, &idx).is_negative() {
            return false;
        }
    }
    true
}

fn minor<const N: usize>(b: &[[Rational; N]; N], idx: &[usize]) -> Rational {
    match idx.len() {
        1 => b[idx[0]][idx[0]].clone(),
        2 => {
            let (i, j) = (idx[0], idx[1]);
            &b[i][i] * &b[j][j] - &b[i][j] * &b[j][i]
        }
        3 => {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            &b[i][i] * (&b[j][j] * &b[k][k] - &b[j][k] * &b[k][j])
                - &b[i][j] * (&b[j][i] * &b[k][k] - &b[j][k] * &b[k][i])
                + &b[i][k] * (&b[j][i] * &b[k][j] - &b[j][j] * &b[k][i])
        }
        _ => unreachable!("at most 3×3"),
    }
}

/// `MᵀM` of a row-major square matrix.
fn gram<const N: usize>(m: &[[Rational; N]; N]) -> [[Rational; N]; N] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..N).fold(Rational::zero(), |acc, k| acc + &m[k][i] * &m[k][j])
        })
    })
}

/// Bisection on σ with the exact test `σ²I − MᵀM ⪰ 0`.
fn bisect_norm<const N: usize>(m: &[[Rational; N]; N], tol: &Rational) -> NormInterval {
    assert!(tol.is_positive(), "tolerance must be positive");
    let g = gram(m);
    let frob: Rational = (0..N).fold(Rational::zero(), |acc, i| acc + &g[i][i]);
    let mut lo = Rational::zero();
    let mut hi = rational::sqrt_ceil(&frob, 0) + Rational::one();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) * &half;
        if psd_shift(&g, &(&mid * &mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RatInterval::new(lo, hi)
}

/// Enclosure of the operator norm of a rational 2×2 matrix with width ≤ `tol`.
pub fn op_norm_rational(m: &Mat2<Rational>, tol: &Rational) -> NormInterval {
    let a = [
        [m.a11.clone(), m.a12.clone()],
        [m.a21.clone(), m.a22.clone()],
    ];
    bisect_norm(&a, tol)
}

pub fn op_norm(m: &Mat2<BigInt>, tol: &Rational) -> NormInterval {
    op_norm_rational(&m.map(r), tol)
}

/// Enclosure of `‖ι(g)‖`, the 3×3 affine norm.
pub fn iota_norm(g: &AffineElement, tol: &Rational) -> NormInterval {
    let io = g.iota();
    let a: [[Rational; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| r(&io[i][j])));
    bisect_norm(&a, tol)
}

/// Is `‖m‖ ≤ h` for a 2×2 matrix over a quadratic field? Decided exactly.
pub fn norm_at_most(m: &Mat2<QuadNumber>, h: &Rational) -> bool {
    let g = m.gram();
    let t = QuadNumber::rational(h * h);
    let d11 = &t - &g.a11;
    let d22 = &t - &g.a22;
    let det = &(&d11 * &d22) - &(&g.a12 * &g.a21);
    (&d11 + &d22).signum() >= 0 && det.signum() >= 0 && d11.signum() >= 0
}

/// Enclosure of `‖m‖²` from `(F + √(F² − 4D²))/2`, `F` the Frobenius², `D` the det.
pub fn norm_sq_enclosure(m: &Mat2<QuadNumber>, bits: u32) -> RatInterval {
    let f = m.frobenius_sq();
    let d = m.det();
    let disc = &(&f * &f) - &(&(&d * &d) * &QuadNumber::from_int(4));
    let disc_i = disc.enclose(bits + 8);
    let disc_i = RatInterval::new(
        if disc_i.lo.is_negative() { Rational::zero() } else { disc_i.lo.clone() },
        if disc_i.hi.is_negative() { Rational::zero() } else { disc_i.hi.clone() },
    );
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    f.enclose(bits + 8)
        .add(&disc_i.sqrt(bits + 8))
        .scale(&half)
        .round_out(bits)
}

/// A dyadic `H ≥ ‖m‖` within a relative `2^-bits` of the norm, verified exactly.
pub fn norm_upper_dyadic(m: &Mat2<QuadNumber>, bits: u32) -> Rational {
    let mut b = bits;
    loop {
        let sq = norm_sq_enclosure(m, b + 4);
        let up = sq.sqrt(b + 4).hi;
        let mag = rational::log2_estimate(&up);
        let h = rational::ceil_dyadic(&up, bits as i64 - mag + 2);
        if norm_at_most(m, &h) {
            return h;
        }
        b += 32;
    }
}

/// `Λ(M)`: `(|t| + √(t²−4))/2` when `|tr M| > 2`, else exactly 1.
pub fn spectral_radius(m: &Mat2<BigInt>) -> Result<QuadNumber> {
    let det = m.det();
    if !det.is_one() {
        return Err(Error::NotUnimodular {
            det: det.to_string(),
        });
    }
    Ok(spectral_radius_from_trace(&m.trace()))
}

/// `max_{g∈S} ‖θ(g)‖²` is attained where the Frobenius² is largest (all
/// determinants are 1); returns that element's index.
pub fn max_norm_index(s: &[Mat2<BigInt>]) -> Option<usize> {
    s.iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| {
            a.frobenius_sq()
                .cmp(&b.frobenius_sq())
                .then_with(|| j.cmp(i))
        })
        .map(|(i, _)| i)
}

/// Exact `‖M‖²` of a unimodular integer matrix, in ℚ(√(F²−4)).
pub fn norm_sq_exact(m: &Mat2<BigInt>) -> QuadNumber {
    let f = m.frobenius_sq();
    let d = m.det();
    let disc = &f * &f - BigInt::from(4) * &d * &d;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if disc.is_zero() {
        return QuadNumber::rational(r(&f) * &half);
    }
    QuadNumber::new(r(&f) * &half, half, disc)
}

/// Enclosure of `‖θ(S)‖` (max over the set) at about `bits` relative bits.
pub fn set_norm_enclosure(s: &[Mat2<BigInt>], bits: u32) -> NormInterval {
    match max_norm_index(s) {
        Some(i) => norm_sq_exact(&s[i]).enclose(bits + 4).sqrt(bits),
        None => RatInterval::point(Rational::zero()),
    }
}
