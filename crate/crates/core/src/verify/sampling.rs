//! Sampling the ping-pong table of a certificate: containment
//! `w(X ∖ U⁻_{Last(w)}) ⊆ U⁺_{First(w)}` and dilation `f(wx) > f(x)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::words::{Alphabet, Letter};
use crate::arith::affine::{AffineElement, RationalPoint};
use crate::arith::dyadic::DyInterval;
use crate::arith::matrix::Vec2;
use crate::arith::quad::QuadNumber;
use crate::arith::rational::{ratvec, Rational};
use crate::pingpong::FreePairCertificate;

/// `33×33` lattice on `[−10, 10]²` (step 5/8) and `extra` seeded rationals in the same square.
pub fn sample_points(seed: u64, extra: usize) -> Vec<RationalPoint> {
    let step = Rational::new(5.into(), 8.into());
    let lo = Rational::from_integer((-10).into());
    let mut pts = Vec::with_capacity(33 * 33 + extra);
    for i in 0..33i64 {
        for j in 0..33i64 {
            pts.push(Vec2::new(
                &lo + &step * Rational::from_integer(i.into()),
                &lo + &step * Rational::from_integer(j.into()),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coord = |rng: &mut ChaCha8Rng| {
        let den: i64 = rng.gen_range(1..=97);
        let num: i64 = rng.gen_range(-10 * den..=10 * den);
        Rational::new(num.into(), den.into())
    };
    for _ in 0..extra {
        let x = coord(&mut rng);
        let y = coord(&mut rng);
        pts.push(Vec2::new(x, y));
    }
    pts
}

/// `w ↦ a·w₁² + 2b·w₁w₂ + c·w₂² − k` on rational `w`, coefficients in one
/// real quadratic field; evaluated with rational arithmetic only.
#[derive(Clone, Debug)]
struct QuadForm {
    a: QuadNumber,
    b: QuadNumber,
    c: QuadNumber,
    k: QuadNumber,
}

impl QuadForm {
    fn gram(r1: &Vec2<QuadNumber>, r2: &Vec2<QuadNumber>) -> Self {
        Self {
            a: &(&r1.x * &r1.x) + &(&r2.x * &r2.x),
            b: &(&r1.x * &r1.y) + &(&r2.x * &r2.y),
            c: &(&r1.y * &r1.y) + &(&r2.y * &r2.y),
            k: QuadNumber::from_int(0),
        }
    }

    fn square(v: &Vec2<QuadNumber>) -> Self {
        Self {
            a: &v.x * &v.x,
            b: &v.x * &v.y,
            c: &v.y * &v.y,
            k: QuadNumber::from_int(0),
        }
    }

    fn minus(&self, o: &Self, t: &QuadNumber) -> Self {
        Self {
            a: &self.a - &(&o.a * t),
            b: &self.b - &(&o.b * t),
            c: &self.c - &(&o.c * t),
            k: &self.k + &(&o.k * t),
        }
    }

    fn with_constant(&self, k: QuadNumber) -> Self {
        Self { k, ..self.clone() }
    }

    fn eval(&self, w: &RationalPoint) -> QuadNumber {
        let m1 = QuadNumber::rational(&w.x * &w.x);
        let m2 = QuadNumber::rational(&w.x * &w.y * Rational::from_integer(2.into()));
        let m3 = QuadNumber::rational(&w.y * &w.y);
        &(&(&(&self.a * &m1) + &(&self.b * &m2)) + &(&self.c * &m3)) - &self.k
    }

    fn sign(&self, w: &RationalPoint) -> i32 {
        self.eval(w).signum()
    }

    fn enclose(&self, bits: u32) -> IntervalForm {
        let e = |x: &QuadNumber| enclose_quad(x, bits);
        IntervalForm {
            a: e(&self.a),
            b: e(&(&self.b * &QuadNumber::from_int(2))),
            c: e(&self.c),
            k: e(&self.k),
        }
    }
}

/// Working precision of the interval pre-filter on top of the bit size of the
/// pair's entries; undecided signs fall back to exact arithmetic.
const FILTER_BITS: u32 = 128;

fn filter_bits(cert: &FreePairCertificate) -> u32 {
    let entry = cert.a_final.max_abs_entry().bits().max(cert.b_final.max_abs_entry().bits());
    FILTER_BITS + entry as u32
}

fn enclose_quad(x: &QuadNumber, bits: u32) -> DyInterval {
    let i = x.enclose(bits + 16);
    DyInterval::from_bounds(&i.lo, &i.hi, bits)
}

#[derive(Clone, Debug)]
struct IntervalPoint {
    x: DyInterval,
    y: DyInterval,
}

impl IntervalPoint {
    fn sub(&self, o: &Self) -> Self {
        Self {
            x: self.x.sub(&o.x),
            y: self.y.sub(&o.y),
        }
    }
}

fn enclose_point(p: &RationalPoint, bits: u32) -> IntervalPoint {
    IntervalPoint {
        x: DyInterval::from_rational(&p.x, bits),
        y: DyInterval::from_rational(&p.y, bits),
    }
}

fn apply_interval(g: &AffineElement, p: &IntervalPoint, bits: u32) -> IntervalPoint {
    let m = &g.linear;
    let t = &g.translation;
    let r = |x: &num_bigint::BigInt| DyInterval::from_rational(&Rational::from_integer(x.clone()), bits);
    let row = |a, b, c| p.x.mul(&r(a)).add(&p.y.mul(&r(b))).add(&r(c));
    IntervalPoint {
        x: row(&m.a11, &m.a12, &t.x),
        y: row(&m.a21, &m.a22, &t.y),
    }
}

#[derive(Clone, Debug)]
struct IntervalForm {
    a: DyInterval,
    /// Already doubled.
    b: DyInterval,
    c: DyInterval,
    k: DyInterval,
}

impl IntervalForm {
    fn eval(&self, w: &IntervalPoint) -> DyInterval {
        self.a
            .mul(&w.x.square())
            .add(&self.b.mul(&w.x.mul(&w.y)))
            .add(&self.c.mul(&w.y.square()))
            .sub(&self.k)
    }

    fn sign(&self, w: &IntervalPoint) -> Option<i32> {
        self.eval(w).sign()
    }
}

/// One half of the table (`a` or `b`), in coordinates `w = γx − φ(a) − shift`
/// so that the frame point is `M⁻¹w`.
#[derive(Clone, Debug)]
struct Half {
    shift: RationalPoint,
    /// `(y∧ℓ)² − ε²|ℓ|²|y|²` for the attracting and repelling lines.
    cone: [QuadForm; 2],
    /// `|y|² − γ²‖v₀'‖²` and `|y|² − ξ²‖v₀'‖²`.
    inner: QuadForm,
    outer: QuadForm,
    fast: FastHalf,
}

#[derive(Clone, Debug)]
struct FastHalf {
    shift: IntervalPoint,
    cone: [IntervalForm; 2],
    outer: IntervalForm,
}

/// The certificate's table, classified exactly.
#[derive(Clone, Debug)]
pub struct TableSets {
    gamma: AffineElement,
    origin: RationalPoint,
    norm: QuadForm,
    halves: [Half; 2],
    fast_norm: IntervalForm,
    fast_origin: IntervalPoint,
    bits: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub minus: [bool; 4],
    pub plus: [bool; 4],
}

/// `(half, attracting line, repelling line)` indices for a letter.
fn layout(l: Letter) -> (usize, usize, usize) {
    match l {
        Letter::A => (0, 0, 1),
        Letter::AInv => (0, 1, 0),
        Letter::B => (1, 2, 3),
        Letter::BInv => (1, 3, 2),
    }
}

impl TableSets {
    pub fn from_certificate(cert: &FreePairCertificate) -> Self {
        let p = &cert.params;
        let n = &cert.geometry.distances.v0_norm_sq;
        let sq = |x: &Rational| QuadNumber::rational(x * x);
        let f = &cert.frame;
        let bits = filter_bits(cert);
        let r1 = Vec2::new(f.m_inv.a11.clone(), f.m_inv.a12.clone());
        let r2 = Vec2::new(f.m_inv.a21.clone(), f.m_inv.a22.clone());
        let gram = QuadForm::gram(&r1, &r2);
        let lines = f.lines();
        let t = cert.h.apply_rational(&f.origin).sub(&f.origin);
        let half = |idx: usize, shift: RationalPoint| -> Half {
            let (eps, gam, xi) = if idx == 0 {
                (&p.eps1, &p.gamma1, &p.xi1)
            } else {
                (&p.eps2, &p.gamma2, &p.xi2)
            };
            let cone = |line: &Vec2<QuadNumber>| {
                let c = r1.scale(&line.y).sub(&r2.scale(&line.x));
                QuadForm::square(&c).minus(&gram, &(&sq(eps) * &line.norm_sq()))
            };
            let (att, rep) = (2 * idx, 2 * idx + 1);
            let cones = [cone(&lines[att]), cone(&lines[rep])];
            let outer = gram.with_constant(&sq(xi) * n);
            let fast = FastHalf {
                shift: enclose_point(&shift, bits),
                cone: [cones[0].enclose(bits), cones[1].enclose(bits)],
                outer: outer.enclose(bits),
            };
            Half {
                shift,
                cone: cones,
                inner: gram.with_constant(&sq(gam) * n),
                outer,
                fast,
            }
        };
        let zero = Vec2::new(Rational::from_integer(0.into()), Rational::from_integer(0.into()));
        Self {
            gamma: cert.gamma.clone(),
            origin: f.origin.clone(),
            norm: gram.clone(),
            halves: [half(0, zero), half(1, t)],
            fast_norm: gram.enclose(bits),
            fast_origin: enclose_point(&f.origin, bits),
            bits,
        }
    }

    fn local_interval(&self, x: &IntervalPoint) -> IntervalPoint {
        apply_interval(&self.gamma, x, self.bits).sub(&self.fast_origin)
    }

    /// `Some(in U⁺_l)` when the enclosure decides it.
    fn in_plus_interval(&self, x: &IntervalPoint, l: Letter) -> Option<bool> {
        let (h, att, _) = layout(l);
        let fast = &self.halves[h].fast;
        let w = self.local_interval(x);
        let y = w.sub(&fast.shift);
        let cone = fast.cone[att % 2].sign(&y)?;
        if cone > 0 {
            return Some(false);
        }
        // the outer-ball condition already excludes y = 0
        Some(fast.outer.sign(&y)? > 0)
    }

    /// `Some(f(x) > f₀)` when the enclosures decide it.
    fn f_exceeds_interval(&self, x: &IntervalPoint, f0: &DyInterval) -> Option<bool> {
        let v = self.fast_norm.eval(&self.local_interval(x));
        v.compare(f0).map(|o| o == std::cmp::Ordering::Greater)
    }

    /// `γx − φ(a)`.
    fn local(&self, x: &RationalPoint) -> RationalPoint {
        self.gamma.apply_rational(x).sub(&self.origin)
    }

    /// `f(x)`: squared frame distance to `φ(a)`.
    pub fn f(&self, x: &RationalPoint) -> QuadNumber {
        self.norm.eval(&self.local(x))
    }

    fn plus_local(&self, w: &RationalPoint, l: Letter) -> bool {
        let (h, att, _) = layout(l);
        let half = &self.halves[h];
        let y = w.sub(&half.shift);
        half.cone[att % 2].sign(&y) <= 0 && half.outer.sign(&y) > 0 && !y.is_zero()
    }

    fn minus_local(&self, w: &RationalPoint, l: Letter) -> bool {
        let (h, _, rep) = layout(l);
        let half = &self.halves[h];
        let y = w.sub(&half.shift);
        half.inner.sign(&y) <= 0 || half.cone[rep % 2].sign(&y) <= 0
    }

    pub fn in_plus(&self, x: &RationalPoint, l: Letter) -> bool {
        self.plus_local(&self.local(x), l)
    }

    pub fn in_minus(&self, x: &RationalPoint, l: Letter) -> bool {
        self.minus_local(&self.local(x), l)
    }

    pub fn classify(&self, x: &RationalPoint) -> Membership {
        let w = self.local(x);
        let mut m = Membership {
            minus: [false; 4],
            plus: [false; 4],
        };
        for l in Letter::ALL {
            m.minus[l.index()] = self.minus_local(&w, l);
            m.plus[l.index()] = self.plus_local(&w, l);
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Containment,
    Dilation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleViolation {
    pub kind: ViolationKind,
    #[serde(with = "ratvec")]
    pub point: RationalPoint,
    pub word: Vec<Letter>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub points: u64,
    pub max_len: usize,
    /// `(point, last letter)` pairs skipped because the point lies in `U⁻`.
    pub exempt: u64,
    pub words_checked: u64,
    pub containment_violations: u64,
    pub dilation_violations: u64,
    /// Points inside three or more `U⁻` sets.
    pub triple_overlaps: u64,
    pub violations: Vec<SampleViolation>,
}

impl SampleReport {
    pub fn pass(&self) -> bool {
        self.containment_violations == 0 && self.dilation_violations == 0 && self.triple_overlaps == 0
    }

    fn merge(&mut self, o: SampleReport) {
        self.points += o.points;
        self.exempt += o.exempt;
        self.words_checked += o.words_checked;
        self.containment_violations += o.containment_violations;
        self.dilation_violations += o.dilation_violations;
        self.triple_overlaps += o.triple_overlaps;
        self.violations.extend(o.violations);
    }
}

const VIOLATION_LIMIT: usize = 32;

fn sample_one(
    table: &TableSets,
    alphabet: &Alphabet,
    x: &RationalPoint,
    max_len: usize,
    out: &mut SampleReport,
) {
    out.points += 1;
    let fx = table.f(x);
    let bits = table.bits;
    let fx_enc = enclose_quad(&fx, bits);
    let m = table.classify(x);
    if m.minus.iter().filter(|&&b| b).count() >= 3 {
        out.triple_overlaps += 1;
    }
    for last in Letter::ALL {
        if m.minus[last.index()] {
            out.exempt += 1;
            continue;
        }
        // words grow on the left: w = s·w', wx = s(w'x)
        let y0 = alphabet.image(last).apply_rational(x);
        let mut stack = vec![(vec![last], enclose_point(&y0, bits), Some(y0))];
        while let Some((word, yi, mut exact)) = stack.pop() {
            out.words_checked += 1;
            let first = word[0];
            let mut exact_point = || -> RationalPoint {
                exact
                    .get_or_insert_with(|| {
                        word.iter()
                            .rev()
                            .fold(x.clone(), |p, l| alphabet.image(*l).apply_rational(&p))
                    })
                    .clone()
            };
            let contained = match table.in_plus_interval(&yi, first) {
                Some(b) => b,
                None => table.in_plus(&exact_point(), first),
            };
            if !contained {
                out.containment_violations += 1;
                out.violations.push(SampleViolation {
                    kind: ViolationKind::Containment,
                    point: x.clone(),
                    word: word.clone(),
                });
            }
            let dilated = match table.f_exceeds_interval(&yi, &fx_enc) {
                Some(b) => b,
                None => table.f(&exact_point()) > fx,
            };
            if !dilated {
                out.dilation_violations += 1;
                out.violations.push(SampleViolation {
                    kind: ViolationKind::Dilation,
                    point: x.clone(),
                    word: word.clone(),
                });
            }
            if word.len() < max_len {
                // re-seed the enclosure from the exact point whenever one was needed
                let (base, exact) = match exact {
                    Some(p) => (enclose_point(&p, bits), Some(p)),
                    None => (yi, None),
                };
                for s in Letter::ALL.iter().rev() {
                    if *s != first.inverse() {
                        let mut w = Vec::with_capacity(word.len() + 1);
                        w.push(*s);
                        w.extend_from_slice(&word);
                        let g = alphabet.image(*s);
                        let next_exact = exact.as_ref().map(|p| g.apply_rational(p));
                        let next = match &next_exact {
                            Some(p) => enclose_point(p, bits),
                            None => apply_interval(g, &base, bits),
                        };
                        stack.push((w, next, next_exact));
                    }
                }
            }
        }
    }
}

/// Checks every reduced word of length `≤ max_len` at every point; words are
/// evaluated with `a_final`, `b_final` in input coordinates.
pub fn table_invariant_sample(
    cert: &FreePairCertificate,
    points: &[RationalPoint],
    max_len: usize,
) -> SampleReport {
    let table = TableSets::from_certificate(cert);
    let alphabet = Alphabet::new(&cert.a_final, &cert.b_final);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = points.len().div_ceil(workers.max(1)).max(1);
    let parts: Vec<SampleReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .map(|pts| {
                let (table, alphabet) = (&table, &alphabet);
                scope.spawn(move || {
                    let mut r = SampleReport::default();
                    for x in pts {
                        sample_one(table, alphabet, x, max_len, &mut r);
                    }
                    r
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect()
    });
    let mut report = SampleReport {
        max_len,
        ..Default::default()
    };
    for p in parts {
        report.merge(p);
    }
    report.violations.truncate(VIOLATION_LIMIT);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn sample_points_deterministic() {
        let a = sample_points(0, 200);
        assert_eq!(a.len(), 1289);
        assert_eq!(a, sample_points(0, 200));
        assert_ne!(a[1089..], sample_points(1, 200)[1089..]);
        let ten = Rational::from_integer(10.into());
        assert!(a.iter().all(|p| p.x.abs() <= ten && p.y.abs() <= ten));
    }

    #[test]
    fn interval_filter_agrees_with_exact() {
        let s = crate::arith::parse::parse_set(
            "1 0 0 1 | 0 0\n1 2 0 1 | 0 0\n1 -2 0 1 | 0 0\n1 0 2 1 | 0 1\n1 0 -2 1 | 0 -1\n1 0 0 1 | 1 0\n1 0 0 1 | -1 0",
        )
        .unwrap();
        let cert = crate::pingpong::certify_pair(&s, &Default::default()).unwrap();
        let table = TableSets::from_certificate(&cert);
        let al = Alphabet::new(&cert.a_final, &cert.b_final);
        let f0 = table.f(&Vec2::new(Rational::from_integer(0.into()), Rational::from_integer(0.into())));
        let f0_enc = enclose_quad(&f0, table.bits);
        let mut decided = 0;
        for x in sample_points(3, 40).iter().step_by(7) {
            for l in Letter::ALL {
                let y = al.image(l).apply_rational(x);
                let yi = enclose_point(&y, table.bits);
                for m in Letter::ALL {
                    if let Some(b) = table.in_plus_interval(&yi, m) {
                        decided += 1;
                        assert_eq!(b, table.in_plus(&y, m));
                    }
                }
                if let Some(b) = table.f_exceeds_interval(&yi, &f0_enc) {
                    assert_eq!(b, table.f(&y) > f0);
                }
            }
        }
        assert!(decided > 0);
    }
}
