use num_traits::Signed;
use pdiv::lp::{minimize, LpResult};
use pdiv::polyhedra::{Bound, Cone, Polyhedron};
use pdiv::rat::{dot, q, QVec};
use proptest::prelude::*;

fn point(dim: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec(-4i64..=4, dim).prop_map(|v| v.into_iter().map(q).collect())
}

fn points(dim: usize) -> impl Strategy<Value = Vec<QVec>> {
    prop::collection::vec(point(dim), 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn representations_agree(pts in points(3), rays in prop::collection::vec(point(3), 0..3)) {
        let p = Polyhedron::hull(3, &pts, &rays);
        let again = Polyhedron::from_hrep(3, p.inequalities(), p.equations());
        prop_assert_eq!(&again, &p);
        for v in &pts {
            prop_assert!(p.contains(v));
        }
    }

    #[test]
    fn support_function_matches_lp(pts in points(3), u in point(3)) {
        let p = Polyhedron::hull(3, &pts, &[]);
        let direct = pts.iter().map(|v| dot(v, &u)).min().unwrap();
        prop_assert_eq!(p.min_pairing(&u), Bound::Finite(direct.clone()));
        match minimize(&u, p.inequalities(), p.equations()) {
            LpResult::Optimal { value, .. } => prop_assert_eq!(value, direct),
            r => prop_assert!(false, "{:?}", r),
        }
    }

    #[test]
    fn minkowski_support_is_additive(a in points(2), b in points(2), u in point(2)) {
        let pa = Polyhedron::hull(2, &a, &[]);
        let pb = Polyhedron::hull(2, &b, &[]);
        let s = pa.minkowski_sum(&pb);
        let val = |p: &Polyhedron| match p.min_pairing(&u) { Bound::Finite(x) => x, _ => unreachable!() };
        prop_assert_eq!(val(&s), val(&pa) + val(&pb));
    }

    #[test]
    fn double_dual_is_identity(rays in prop::collection::vec(point(3), 1..5)) {
        let c = Cone::new(3, &rays);
        prop_assert_eq!(c.dual().dual(), c.clone());
        for r in c.rays() {
            for m in c.dual().rays() {
                prop_assert!(!dot(r, m).is_negative());
            }
        }
    }

    #[test]
    fn intersection_is_contained(a in points(2), b in points(2)) {
        let pa = Polyhedron::hull(2, &a, &[]);
        let pb = Polyhedron::hull(2, &b, &[]);
        let x = pa.intersect(&pb);
        prop_assert!(x.is_subset(&pa) && x.is_subset(&pb));
        for v in pa.lattice_points() {
            prop_assert_eq!(pb.contains(&v), x.contains(&v));
        }
    }
}
