use proptest::prelude::*;

use sa2::arith::parse::parse_set;
use sa2::pingpong::{certify_pair, CertifyConfig, FreePairCertificate};
use sa2::verify::words::{Alphabet, Letter};
use sa2::verify::{
    freeness_check, local_commutativity_check, sample_points, table_invariant_sample, TableSets,
    WordPath,
};
use sa2::AffineElement;

fn cert() -> FreePairCertificate {
    let s = parse_set(
        "1 0 0 1 | 0 0
         1 2 0 1 | 0 0
         1 -2 0 1 | 0 0
         1 0 2 1 | 0 1
         1 0 -2 1 | 0 -1
         1 0 0 1 | 1 0
         1 0 0 1 | -1 0",
    )
    .unwrap();
    certify_pair(&s, &CertifyConfig::default()).unwrap()
}

#[test]
fn certified_pair_is_free_to_eight() {
    let c = cert();
    let r = freeness_check(&c.a_final, &c.b_final, 8);
    assert!(r.pass());
    assert_eq!(r.words_checked, 2 * (3u64.pow(8) - 1));
}

#[test]
fn certified_pair_locally_commutative_to_six() {
    let c = cert();
    let r = local_commutativity_check(&c.a_final, &c.b_final, 6);
    assert!(r.pass(), "{:?}", r.violations.first());
    assert_eq!(r.words, 2 * (3u64.pow(6) - 1));
}

#[test]
fn table_sampling_has_no_violations() {
    let c = cert();
    let pts = sample_points(0, 200);
    let r = table_invariant_sample(&c, &pts, 4);
    assert_eq!(r.points, 1289);
    assert_eq!(r.containment_violations, 0, "{:?}", r.violations.first());
    assert_eq!(r.dilation_violations, 0, "{:?}", r.violations.first());
    assert_eq!(r.triple_overlaps, 0);
}

#[test]
fn fixed_point_of_a_is_exempt_for_a_letters() {
    let c = cert();
    let table = TableSets::from_certificate(&c);
    let phi = c.gamma.inverse_elem().apply_rational(&c.frame.origin);
    let m = table.classify(&phi);
    assert!(m.minus[Letter::A.index()] && m.minus[Letter::AInv.index()]);
    assert!(!m.minus[Letter::B.index()] && !m.minus[Letter::BInv.index()]);
}

#[test]
fn far_point_lands_in_every_attracting_set() {
    let c = cert();
    let table = TableSets::from_certificate(&c);
    let al = Alphabet::new(&c.a_final, &c.b_final);
    let pts = sample_points(0, 0);
    let x = pts
        .iter()
        .find(|p| table.classify(p).minus.iter().all(|&b| !b))
        .expect("some lattice point avoids every repelling set");
    for l in Letter::ALL {
        assert!(table.classify(&al.image(l).apply_rational(x)).plus[l.index()]);
    }
}

fn letters() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(
        prop::sample::select(Letter::ALL.to_vec()),
        0..7,
    )
}

fn reduce(ls: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in ls {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

proptest! {
    #[test]
    fn evaluation_is_a_homomorphism(u in letters(), v in letters()) {
        let a = AffineElement::from_i64([2, 1, 1, 1, 1, 0]).unwrap();
        let b = AffineElement::from_i64([1, 2, 0, 1, 0, 3]).unwrap();
        let al = Alphabet::new(&a, &b);
        let (u, v) = (reduce(u), reduce(v));
        let wu = WordPath::from_letters(&u, &al);
        let wv = WordPath::from_letters(&v, &al);
        let uv = wu.concat_reduced(&wv, &al);
        prop_assert!(uv.is_reduced());
        prop_assert_eq!(uv.evaluated, wu.evaluated.compose(&wv.evaluated));
    }
}
