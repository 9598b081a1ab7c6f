use sa2::arith::affine::unique_fixed_point;
use sa2::arith::parse::parse_set;
use sa2::arith::rational::rat;
use sa2::paradox::{dekker_pieces, nonamenability_report, orbit_decompose, StabilizerStatus};
use sa2::pingpong::{certify_pair, CertifyConfig, FreePairCertificate};
use sa2::{Error, Vec2};

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
fn one_free_orbit_at_radius_six() {
    let c = cert();
    let orbits = orbit_decompose(&c.a_final, &c.b_final, &[Vec2::new(rat(1, 3), rat(1, 7))], 6);
    assert_eq!(orbits.len(), 1);
    assert!(orbits[0].is_free());
    // a free orbit carries one point per reduced word
    assert_eq!(orbits[0].members.len(), 2 * 729 - 1);
    let p = dekker_pieces(&c.a_final, &c.b_final, &orbits).unwrap();
    assert!(p.disjoint);
    assert!(p.covers.iter().all(|c| c.exact()), "{:?}", p.covers);
    assert_eq!(p.interior_count(), 2 * 243 - 1);
    assert_eq!(p.leakage, rat(4 * 243, 2 * 729 - 1));
    assert!(p.leakage < rat(1, 1));
    let sizes: Vec<usize> = p.pieces.iter().map(Vec::len).collect();
    assert_eq!(sizes.iter().sum::<usize>(), 1457);
    assert!(sizes.iter().all(|&n| n > 0));
}

#[test]
fn fixed_point_of_a_is_stabilized() {
    let c = cert();
    let x = unique_fixed_point(&c.a_final).unwrap();
    let orbits = orbit_decompose(&c.a_final, &c.b_final, &[x], 3);
    match &orbits[0].status {
        StabilizerStatus::Stabilized { display, .. } => assert_eq!(display, "a"),
        s => panic!("{s:?}"),
    }
    assert!(matches!(
        dekker_pieces(&c.a_final, &c.b_final, &orbits),
        Err(Error::Invalid(_))
    ));
}

#[test]
fn equal_generators_are_rejected() {
    let c = cert();
    let orbits = orbit_decompose(&c.a_final, &c.a_final, &[Vec2::new(rat(1, 3), rat(1, 7))], 3);
    assert!(!orbits[0].is_free());
    assert!(dekker_pieces(&c.a_final, &c.a_final, &orbits).is_err());
}

#[test]
fn sample_measure_is_displaced() {
    let c = cert();
    let orbits = orbit_decompose(&c.a_final, &c.b_final, &[Vec2::new(rat(1, 3), rat(1, 7))], 5);
    let p = dekker_pieces(&c.a_final, &c.b_final, &orbits).unwrap();
    let r = nonamenability_report(&c, &p, 3).unwrap();
    assert!(r.pass(), "{r:?}");
    assert_eq!(r.affine_constant, rat(1, 4));
    assert_eq!(r.n_step.len(), 3);
    assert!(r.point_mass.at_least_half);
}

#[test]
fn decomposition_is_deterministic() {
    let c = cert();
    let seeds = [Vec2::new(rat(1, 3), rat(1, 7)), Vec2::new(rat(2, 5), rat(-3, 11))];
    let run = || {
        let o = orbit_decompose(&c.a_final, &c.b_final, &seeds, 4);
        serde_json::to_string(&dekker_pieces(&c.a_final, &c.b_final, &o).unwrap()).unwrap()
    };
    assert_eq!(run(), run());
}
