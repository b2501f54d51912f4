use invariant_faces::correspondence::charpoly;
use invariant_faces::polytope::OrbitPolytope;
use invariant_faces::scalar::{self, QVector, Rational};
use proptest::prelude::*;

fn points(dim: usize) -> impl Strategy<Value = Vec<QVector>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, dim), dim + 1..12)
        .prop_map(|pts| pts.into_iter().map(|p| scalar::qvec(&p)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_contains_inputs_and_keeps_only_input_vertices(pts in points(3)) {
        let p = OrbitPolytope::hull(&pts).unwrap();
        for x in &pts {
            prop_assert!(p.contains(x));
        }
        for v in p.vertices() {
            prop_assert!(pts.contains(v));
        }
    }

    #[test]
    fn support_is_attained_at_an_input_point(pts in points(3), u in prop::collection::vec(-5i64..=5, 3)) {
        let p = OrbitPolytope::hull(&pts).unwrap();
        let u = scalar::qvec(&u);
        let best = pts.iter().map(|x| scalar::dot(x, &u)).max().unwrap();
        prop_assert_eq!(p.support(&u), best);
    }

    #[test]
    fn euler_relation_for_full_dimensional_hulls(pts in points(3)) {
        let p = OrbitPolytope::hull(&pts).unwrap();
        prop_assume!(p.dim() == 3);
        let lat = invariant_faces::polytope::FaceLattice::new(&p).unwrap();
        let f = lat.f_vector();
        prop_assert_eq!(f[0] as i64 - f[1] as i64 + f[2] as i64, 2);
    }

    #[test]
    fn charpoly_trace_and_determinant(a in prop::collection::vec(-4i64..=4, 9)) {
        let m: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| scalar::int(a[3 * i + j])).collect()).collect();
        let c = charpoly(&m);
        let tr = m[0][0].clone() + &m[1][1] + &m[2][2];
        prop_assert_eq!(&c[1], &-tr);
        let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
        prop_assert_eq!(&c[3], &-det);
    }
}
