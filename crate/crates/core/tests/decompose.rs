use std::collections::BTreeMap;

use xpoly::decompose::{cross_grouping, prove_coverage, Method};
use xpoly::skeleton::triangle_count;
use xpoly::surface::is_subcomplex_of_skeleton;
use xpoly::*;

fn dc(a: u32, b: u32, c: u32) -> DifferenceCycle {
    DifferenceCycle::normalize(a, b, c, Modulus::new(a + b + c).unwrap()).unwrap()
}

fn classes(p: &Partition) -> Vec<Vec<Classification>> {
    p.blocks.iter().map(|b| b.certificate.classifications()).collect()
}

/// k for which the matched achiral pairs are all orientable.
const STRICT_OK: [u32; 7] = [3, 4, 6, 8, 12, 16, 24];

#[test]
fn octahedron() {
    let p = cross_partition(3, Policy::GenusAtMostOne).unwrap();
    assert_eq!(p.method, Method::ClosedForm);
    assert_eq!(p.cycle_lists(), vec![vec![dc(1, 1, 4), dc(2, 2, 2)]]);
    assert_eq!(p.triangle_count(), 8);
    assert_eq!(classes(&p), vec![vec![Classification::Sphere]]);
    assert!(p.coverage.holds());
}

#[test]
fn cross_four() {
    let p = cross_partition(4, Policy::GenusAtMostOne).unwrap();
    assert_eq!(
        p.cycle_lists(),
        vec![vec![dc(1, 1, 6), dc(2, 3, 3)], vec![dc(1, 2, 5), dc(1, 5, 2)]]
    );
    let b1 = &p.blocks[0];
    let r = &b1.certificate.components;
    assert_eq!(r.len(), 1);
    assert_eq!((r[0].vertices, r[0].edges, r[0].triangles), (8, 24, 16));
    assert_eq!(r[0].euler_characteristic, 0);
    assert_eq!(
        classes(&p),
        vec![vec![Classification::Torus], vec![Classification::Torus]]
    );
    assert_eq!(p.triangle_count() as u64, triangle_count(&p.spec));
}

#[test]
fn strict_policy_succeeds_where_pairs_are_orientable() {
    for k in STRICT_OK {
        let p = cross_partition(k, Policy::GenusAtMostOne).unwrap();
        assert_eq!(p.method, Method::ClosedForm);
        assert!(p.coverage.holds());
        for b in &p.blocks {
            assert!(b
                .certificate
                .classifications()
                .iter()
                .all(|c| matches!(c, Classification::Sphere | Classification::Torus)));
        }
    }
}

#[test]
fn strict_policy_fails_on_klein_bottles() {
    // (1:1:8)+(4:4:2) and (2:2:6)+(3:3:4) mod 10 are Klein bottles, and the
    // search finds no other closed grouping.
    match cross_partition(5, Policy::GenusAtMostOne) {
        Err(Error::ConstructionFailure(msg)) => {
            assert!(msg.contains("KleinBottle"), "{}", msg);
            assert!(msg.contains("no partition found"), "{}", msg);
        }
        other => panic!(
            "expected construction failure, got {:?}",
            other.map(|p| p.cycle_lists())
        ),
    }
    // beyond the search limit the failure reports the guard
    match cross_partition(13, Policy::GenusAtMostOne) {
        Err(Error::ConstructionFailure(msg)) => assert!(msg.contains("exceeds the limit"), "{}", msg),
        other => panic!("{:?}", other.map(|p| p.cycle_lists())),
    }
}

#[test]
fn matched_pairs_are_klein_bottles_exactly_when_nonorientable() {
    for k in 3..=25u32 {
        let n = Modulus::new(2 * k).unwrap();
        for group in cross_grouping(k) {
            let b = PartitionBlock::new(n, &group).unwrap();
            let cert = &b.certificate;
            assert!(cert.is_closed() && cert.is_surface(), "k={} {:?}", k, group);
            for c in &cert.components {
                assert!(c.euler_characteristic >= 0);
                assert!(matches!(
                    c.classification,
                    Classification::Sphere | Classification::Torus | Classification::KleinBottle
                ));
            }
            if group.iter().all(|d| !d.is_achiral()) {
                assert!(cert.classifications().iter().all(|&c| c == Classification::Torus));
            }
        }
    }
}

#[test]
fn relaxed_cross_sweep() {
    for k in 3..=25u32 {
        let p = cross_partition(k, Policy::NonnegativeEuler).unwrap();
        let spec = SkeletonSpec::cross(k).unwrap();
        assert_eq!(p.triangle_count() as u64, triangle_count(&spec));
        assert_eq!(prove_coverage(&spec, &p.blocks), p.coverage);
        assert!(p.coverage.holds());
        for b in &p.blocks {
            assert!(is_subcomplex_of_skeleton(&b.complex, &spec).unwrap());
            assert!(b.symmetry.shift_invariant && b.symmetry.vertex_transitive);
            assert!(Policy::NonnegativeEuler.accepts(&b.certificate));
        }
    }
}

#[test]
fn mirror_pairs_cover_each_class_twice() {
    for k in 3..=16u32 {
        let n = Modulus::new(2 * k).unwrap();
        for d in xpoly::skeleton::cross_cycles(k) {
            if d.is_achiral() || d > d.mirror() {
                continue;
            }
            let c = TwoComplex::build(n, &[d, d.mirror()]).unwrap();
            assert!(c.edges().values().all(|ts| ts.len() == 2));
            assert_eq!(c.euler_characteristic(), 0);
            let mut per_class: BTreeMap<u32, usize> = BTreeMap::new();
            for e in c.edges().keys() {
                *per_class.entry(c.edge_class(e)).or_default() += 1;
            }
            assert_eq!(per_class.len(), 3);
        }
    }
}

#[test]
fn simplex_examples() {
    let p = simplex_partition(5).unwrap();
    assert_eq!(p.cycle_lists(), vec![vec![dc(1, 1, 3)], vec![dc(1, 2, 2)]]);
    assert_eq!(p.triangle_count(), 10);
    assert!(classes(&p).iter().flatten().all(|&c| c == Classification::MoebiusStrip));

    let p = simplex_partition(7).unwrap();
    assert_eq!(
        p.cycle_lists(),
        vec![
            vec![dc(1, 1, 5)],
            vec![dc(1, 2, 4), dc(1, 4, 2)],
            vec![dc(1, 3, 3)],
            vec![dc(2, 2, 3)],
        ]
    );
    assert_eq!(p.triangle_count(), 35);
    assert_eq!(p.blocks[1].triangle_count(), 14);
    assert_eq!(p.blocks[1].certificate.classifications(), vec![Classification::Torus]);
}

#[test]
fn simplex_ineligible() {
    for k in [0, 3, 4, 6, 8, 9, 10, 12, 15] {
        assert_eq!(simplex_partition(k).unwrap_err(), Error::IneligibleK(k));
    }
}

#[test]
fn simplex_counts_match_enumeration() {
    for k in (5..=25u32).filter(|k| matches!(k % 6, 1 | 5)) {
        // counting oracle straight from the cycle list
        let cycles = enumerate_all(Modulus::new(k).unwrap());
        let achiral = cycles
            .iter()
            .filter(|d| d.gaps()[0] == d.gaps()[1] || d.gaps()[1] == d.gaps()[2])
            .count();
        let chiral_pairs = (cycles.len() - achiral) / 2;
        assert_eq!(achiral as u32, (k - 1) / 2);
        assert_eq!(chiral_pairs as u32, (k - 1) * (k - 5) / 12);

        let p = simplex_partition(k).unwrap();
        let tori = p.blocks.iter().filter(|b| b.cycles.len() == 2).count();
        let strips = p.blocks.iter().filter(|b| b.cycles.len() == 1).count();
        assert_eq!((tori, strips), (chiral_pairs, achiral), "k = {}", k);
        for b in &p.blocks {
            let want = if b.cycles.len() == 2 {
                Classification::Torus
            } else {
                Classification::MoebiusStrip
            };
            assert!(b.certificate.classifications().iter().all(|&c| c == want));
            assert!(b.symmetry.shift_invariant && b.symmetry.vertex_transitive);
        }
        assert!(p.coverage.holds());
    }
}

#[test]
fn split_moebius_block() {
    // (5:5:15) mod 25 falls apart into five 5-vertex Möbius strips
    let p = simplex_partition(25).unwrap();
    let b = p.blocks.iter().find(|b| b.cycles == vec![dc(5, 5, 15)]).unwrap();
    assert_eq!(b.certificate.classifications(), vec![Classification::MoebiusStrip; 5]);
    assert_eq!(b.certificate.summary(), "5 x MoebiusStrip");
}

#[test]
fn search_examples() {
    let p = search_partition(&SkeletonSpec::cross(3).unwrap(), Policy::GenusAtMostOne).unwrap();
    assert_eq!(p.method, Method::Search);
    assert_eq!(p.cycle_lists(), vec![vec![dc(1, 1, 4), dc(2, 2, 2)]]);

    let p = search_partition(&SkeletonSpec::simplex(5).unwrap(), Policy::ToriAndMoebiusStrips).unwrap();
    assert_eq!(p.cycle_lists(), vec![vec![dc(1, 1, 3)], vec![dc(1, 2, 2)]]);

    let closed = cross_partition(4, Policy::GenusAtMostOne).unwrap();
    let searched = search_partition(&SkeletonSpec::cross(4).unwrap(), Policy::GenusAtMostOne).unwrap();
    assert_eq!(searched.cycle_lists(), closed.cycle_lists());

    assert_eq!(
        search_partition(&SkeletonSpec::cross(5).unwrap(), Policy::GenusAtMostOne),
        Err(Error::NoPartitionFound)
    );
    let relaxed = search_partition(&SkeletonSpec::cross(5).unwrap(), Policy::NonnegativeEuler).unwrap();
    assert_eq!(
        relaxed.cycle_lists(),
        cross_partition(5, Policy::NonnegativeEuler).unwrap().cycle_lists()
    );
}

#[test]
fn search_agrees_with_closed_form_at_class_level() {
    let multiset = |p: &Partition| {
        let mut v: Vec<String> = p.blocks.iter().map(|b| b.certificate.summary()).collect();
        v.sort();
        v
    };
    for k in 3..=11u32 {
        let spec = SkeletonSpec::cross(k).unwrap();
        let a = cross_partition(k, Policy::NonnegativeEuler).unwrap();
        let b = search_partition(&spec, Policy::NonnegativeEuler).unwrap();
        assert_eq!(multiset(&a), multiset(&b), "k = {}", k);
    }
    for k in [5u32, 7, 11] {
        let a = simplex_partition(k).unwrap();
        let b = search_partition(&SkeletonSpec::simplex(k).unwrap(), Policy::ToriAndMoebiusStrips).unwrap();
        assert_eq!(multiset(&a), multiset(&b), "simplex k = {}", k);
    }
}

#[test]
fn verify_examples() {
    let cross3 = SkeletonSpec::cross(3).unwrap();
    let ok = verify_partition(&cross3, Policy::GenusAtMostOne, &[vec![dc(1, 1, 4), dc(2, 2, 2)]]).unwrap();
    assert_eq!(ok.method, Method::Verified);
    assert_eq!(ok.blocks[0].certificate.classifications(), vec![Classification::Sphere]);

    match verify_partition(&cross3, Policy::GenusAtMostOne, &[vec![dc(1, 1, 4)], vec![dc(2, 2, 2)]]) {
        Err(Error::Rejected(r @ Rejection::CertificationFailure { block: 1, .. })) => {
            assert!(r
                .to_string()
                .contains("block 1 not closed (degree-1 edges of difference class 2)"));
        }
        other => panic!("{:?}", other.map(|p| p.cycle_lists())),
    }

    match verify_partition(
        &cross3,
        Policy::GenusAtMostOne,
        &[vec![dc(1, 1, 4), dc(2, 2, 2), dc(1, 2, 3)]],
    ) {
        Err(Error::Rejected(Rejection::SkeletonViolation { block: 1, cycle })) => assert_eq!(cycle, dc(1, 2, 3)),
        other => panic!("{:?}", other.map(|p| p.cycle_lists())),
    }
}

#[test]
fn verify_coverage_errors() {
    let cross4 = SkeletonSpec::cross(4).unwrap();
    let overlap = [
        vec![dc(1, 1, 6), dc(2, 3, 3)],
        vec![dc(1, 2, 5), dc(1, 5, 2)],
        vec![dc(1, 2, 5)],
    ];
    assert_eq!(
        verify_partition(&cross4, Policy::GenusAtMostOne, &overlap),
        Err(Error::Rejected(Rejection::CoverageOverlap {
            cycle: dc(1, 2, 5),
            blocks: [2, 3]
        }))
    );
    let gap = [vec![dc(1, 2, 5), dc(1, 5, 2)]];
    assert_eq!(
        verify_partition(&cross4, Policy::GenusAtMostOne, &gap),
        Err(Error::Rejected(Rejection::CoverageGap {
            missing: vec![dc(1, 1, 6), dc(2, 3, 3)]
        }))
    );
    assert_eq!(
        verify_partition(&cross4, Policy::GenusAtMostOne, &[vec![]]),
        Err(Error::Rejected(Rejection::EmptyBlock { block: 1 }))
    );
    assert!(matches!(
        verify_partition(&cross4, Policy::GenusAtMostOne, &[vec![dc(1, 1, 4)]]),
        Err(Error::ModulusMismatch { expected: 8, found: 6 })
    ));
}

#[test]
fn deterministic() {
    let a = cross_partition(9, Policy::NonnegativeEuler).unwrap();
    let b = cross_partition(9, Policy::NonnegativeEuler).unwrap();
    assert_eq!(a, b);
    let da = PartitionDocument::from_partition(&a).to_json();
    let db = PartitionDocument::from_partition(&b).to_json();
    assert_eq!(da, db);
}
