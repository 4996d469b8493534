use proptest::prelude::*;

use hyperspace_core::document::{parse_set, set_to_json};
use hyperspace_core::{
    canonical_box, hausdorff, point_to_set, translation_path, AxisBox, CompactSet, Point, Segment,
};

const DIM: usize = 2;

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn point() -> impl Strategy<Value = Point> {
    prop::collection::vec(coord(), DIM).prop_map(|c| Point::new(c).unwrap())
}

fn set() -> impl Strategy<Value = CompactSet> {
    let leaf = prop_oneof![
        prop::collection::vec(point(), 1..5).prop_map(|ps| CompactSet::points(ps).unwrap()),
        (point(), point()).prop_map(|(u, v)| canonical_box(&u, &v).unwrap().into()),
        (point(), point()).prop_map(|(p, q)| Segment::new(p, q).unwrap().into()),
    ];
    prop::collection::vec(leaf, 1..3).prop_map(|mut parts| {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            CompactSet::union(parts).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_box_ignores_corner_order(u in point(), v in point()) {
        let b = canonical_box(&u, &v).unwrap();
        prop_assert_eq!(&b, &canonical_box(&v, &u).unwrap());
        prop_assert!(b.contains(u.coords()) && b.contains(v.coords()));
        let tight = AxisBox::new(b.lo().clone(), b.hi().clone()).unwrap();
        prop_assert_eq!(b, tight);
    }

    #[test]
    fn distance_is_translation_invariant(a in set(), b in set(), v in point()) {
        let before = hausdorff(&a, &b, 1e-9).unwrap();
        let after = hausdorff(&a.translate(&v).unwrap(), &b.translate(&v).unwrap(), 1e-9).unwrap();
        let slack = before.err + after.err + 1e-9 * (1.0 + v.norm());
        prop_assert!((before.value - after.value).abs() <= slack,
            "{} vs {}", before.value, after.value);
    }

    #[test]
    fn point_to_set_is_one_lipschitz(s in set(), x in point(), y in point()) {
        let dx = point_to_set(&x, &s).unwrap();
        let dy = point_to_set(&y, &s).unwrap();
        prop_assert!((dx - dy).abs() <= x.distance(&y).unwrap() + 1e-12);
    }

    #[test]
    fn point_to_set_vanishes_on_the_set(s in set()) {
        for c in s.bounding_box().vertices() {
            let p = Point::new(c).unwrap();
            let d = point_to_set(&p, &s).unwrap();
            prop_assert_eq!(d == 0.0, s.contains_point(&p, 0.0).unwrap());
        }
    }

    #[test]
    fn documents_round_trip(s in set()) {
        let back = parse_set(&set_to_json(&s)).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn translation_endpoints(a in set(), v in point()) {
        let path = translation_path(&a, &v).unwrap();
        prop_assert_eq!(path.eval(0.0), a.clone());
        let end = hausdorff(&path.eval(1.0), &a.translate(&v).unwrap(), 1e-9).unwrap();
        prop_assert!(end.value <= 1e-9 + end.err);
    }
}
