mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{e, pt, random_complex, random_direction};
use topodesc::complex::DEFAULT_ENUMERATION_BUDGET;
use topodesc::descriptors::{compute, DescriptorType, DescriptorValue, Parameter};
use topodesc::faithfulness::{
    default_candidates, directions_as_parameters, relative_faithful, AdversaryUniverse, Provenance,
};
use topodesc::fixtures::{build_clothesline, build_clothespin, fixture, Fixture};
use topodesc::observability::{self, Ray};
use topodesc::rational::{int, ratio};
use topodesc::reductions::{reduces, Reduction};
use topodesc::Direction;

fn scaled(s: &Direction, num: i64, den: i64) -> Direction {
    Direction::new(s.vector().iter().map(|x| x * ratio(num, den)).collect()).unwrap()
}

#[test]
fn euler_characteristic_from_every_curve() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let d = rng.gen_range(1..=3);
        let k = random_complex(&mut rng, 6, d);
        let p = Parameter::Direction(random_direction(&mut rng, d));
        let DescriptorValue::Ecc(ecc) = compute(DescriptorType::Ecc, &k, &p).unwrap() else {
            panic!()
        };
        let DescriptorValue::Aecc(aecc) = compute(DescriptorType::Aecc, &k, &p).unwrap() else {
            panic!()
        };
        let far = int(1000);
        assert_eq!(ecc.value_at(&far), vec![k.euler_characteristic()]);
        for (h, _) in aecc.events() {
            let v = aecc.value_at(h);
            assert_eq!(v[0] - v[1], ecc.value_at(h)[0]);
        }
    }
}

#[test]
fn single_edge_has_one_event_for_concise_descriptors() {
    let k = fixture(Fixture::SingleEdge).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let p = Parameter::Direction(random_direction(&mut rng, 2));
        let DescriptorValue::Pd(pd) = compute(DescriptorType::Pd, &k, &p).unwrap() else {
            panic!()
        };
        assert_eq!(pd.points().len(), 1);
        let DescriptorValue::Ecc(ecc) = compute(DescriptorType::Ecc, &k, &p).unwrap() else {
            panic!()
        };
        assert_eq!(ecc.events().len(), 1);
        let DescriptorValue::Bc(bc) = compute(DescriptorType::Bc, &k, &p).unwrap() else {
            panic!()
        };
        assert_eq!(bc.len(), 1);
        assert_eq!(bc[&0].events().len(), 1);
    }
}

#[test]
fn faithfulness_is_monotone_in_parameters_and_universe() {
    let k = fixture(Fixture::SquareK).unwrap();
    let u = AdversaryUniverse::on_vertex_set(&k, 1, DEFAULT_ENUMERATION_BUDGET).unwrap();
    let cands = directions_as_parameters(&default_candidates(&k));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let mut p: Vec<Parameter> = cands.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
        let before = relative_faithful(DescriptorType::Apd, &k, &p, &u).unwrap();
        p.push(cands[rng.gen_range(0..cands.len())].clone());
        let after = relative_faithful(DescriptorType::Apd, &k, &p, &u).unwrap();
        assert!(!before.faithful || after.faithful);
        assert!(after
            .indistinguishable
            .iter()
            .all(|i| before.indistinguishable.contains(i)));

        let kept: Vec<_> = u
            .adversaries()
            .map(|(_, c)| c.clone())
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let smaller = AdversaryUniverse::around(&k, kept, Provenance::Explicit).unwrap();
        let r = relative_faithful(DescriptorType::Apd, &k, &p, &smaller).unwrap();
        assert!(!after.faithful || r.faithful);
    }
}

#[test]
fn faithful_target_implies_faithful_source() {
    let k = fixture(Fixture::SquareK).unwrap();
    let u = AdversaryUniverse::on_vertex_set(&k, 1, DEFAULT_ENUMERATION_BUDGET).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let p: Vec<Parameter> = (0..rng.gen_range(1..=3))
            .map(|_| Parameter::Direction(random_direction(&mut rng, 2)))
            .collect();
        for r in Reduction::all() {
            let target = relative_faithful(r.target, &k, &p, &u).unwrap();
            let source = relative_faithful(r.source, &k, &p, &u).unwrap();
            assert!(
                source
                    .indistinguishable
                    .iter()
                    .all(|i| target.indistinguishable.contains(i)),
                "{r:?}"
            );
        }
    }
}

#[test]
fn reductions_compose() {
    assert!(reduces(DescriptorType::Apd, DescriptorType::Ecc));
    assert!(reduces(DescriptorType::Apd, DescriptorType::Aecc));
    assert!(reduces(DescriptorType::Abc, DescriptorType::Ecc));
    assert!(!reduces(DescriptorType::Ecc, DescriptorType::Pd));
    assert!(!reduces(DescriptorType::Pd, DescriptorType::Abc));
    let k = fixture(Fixture::AppendixA).unwrap();
    let p = e(2, 1);
    let apd = compute(DescriptorType::Apd, &k, &p).unwrap();
    let via_pd = Reduction::find(DescriptorType::Pd, DescriptorType::Bc)
        .unwrap()
        .apply(
            &Reduction::find(DescriptorType::Apd, DescriptorType::Pd)
                .unwrap()
                .apply(&apd)
                .unwrap(),
        )
        .unwrap();
    let via_abc = Reduction::find(DescriptorType::Abc, DescriptorType::Bc)
        .unwrap()
        .apply(
            &Reduction::find(DescriptorType::Apd, DescriptorType::Abc)
                .unwrap()
                .apply(&apd)
                .unwrap(),
        )
        .unwrap();
    assert_eq!(via_pd, via_abc);
    assert_eq!(via_pd, compute(DescriptorType::Bc, &k, &p).unwrap());
}

#[test]
fn comparisons_and_regions_ignore_positive_scaling() {
    let k = build_clothespin(pt(&[0, 0]), pt(&[4, 0]), pt(&[2, 1]), pt(&[3, 3])).unwrap();
    let kp = observability::swapped_partner(&k).unwrap();
    let w = observability::clothespin_regions(&k).unwrap().w;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let s = random_direction(&mut rng, 2);
        let t = scaled(&s, rng.gen_range(1..=9), rng.gen_range(1..=9));
        let differs = |s: &Direction| {
            let p = Parameter::Direction(s.clone());
            compute(DescriptorType::Apd, &k, &p).unwrap() != compute(DescriptorType::Apd, &kp, &p).unwrap()
        };
        assert_eq!(differs(&s), differs(&t));
        assert_eq!(
            w.contains(&Ray::from_direction(&s).unwrap()),
            w.contains(&Ray::from_direction(&t).unwrap())
        );
    }
}

#[test]
fn shrinking_clothespin_keeps_a_nonempty_region() {
    // Pulling v3 towards the v1-v2 base narrows W but never empties it.
    for h in 1..=6 {
        let v3 = topodesc::Point(vec![int(2), ratio(1, 1 << h)]);
        let k = build_clothespin(pt(&[0, 0]), pt(&[4, 0]), v3, pt(&[3, 3])).unwrap();
        let w = observability::clothespin_regions(&k).unwrap().w;
        assert!(!w.is_empty());
    }
}

#[test]
fn clothesline_edge_cases() {
    let one = build_clothesline(1).unwrap();
    assert!(observability::regions_disjoint(&one).unwrap());
    let regions = observability::clothesline_regions(&one).unwrap();
    let arc = &regions[0].arcs()[0];
    let inside = arc.start.add(&arc.end).to_direction();
    assert!(observability::hitting_lower_bound(&one, &[inside]).unwrap().satisfied);

    let k = build_clothesline(3).unwrap();
    let regions = observability::clothesline_regions(&k).unwrap();
    let picks: Vec<Direction> = regions
        .iter()
        .map(|w| {
            let a = &w.arcs()[0];
            a.start.add(&a.end).to_direction()
        })
        .collect();
    assert!(observability::hitting_lower_bound(&k, &picks).unwrap().satisfied);
    let report = observability::hitting_lower_bound(&k, &picks[1..]).unwrap();
    assert_eq!(report.uncovered, vec![0]);
}

#[test]
fn identical_clothespins_are_never_separated() {
    let k = build_clothespin(pt(&[0, 0]), pt(&[4, 0]), pt(&[2, 1]), pt(&[3, 3])).unwrap();
    let u = AdversaryUniverse::around(&k, vec![k.clone()], Provenance::Explicit).unwrap();
    assert_eq!(u.len(), 1);
    let r = relative_faithful(DescriptorType::Apd, &k, &[e(2, 0)], &u).unwrap();
    assert!(r.faithful);
}
