use normlab::catalog::{direct_sum_space, prism_space, regular_polygon_space};
use normlab::coords::same_point_set;
use normlab::derivatives::rho;
use normlab::oracle::random_polygon;
use normlab::orthogonality::{eps_min, is_bj_orthogonal};
use normlab::support_map::{diam_support, space_constants, support_set};
use normlab::{Exponent, Space, SpaceSpec, Vector};
use proptest::prelude::*;

fn polygon(seed: u64, m: usize) -> Space {
    Space::new(random_polygon(seed, m).unwrap()).unwrap()
}

fn spaces() -> impl Strategy<Value = Space> {
    prop_oneof![
        (any::<u64>(), 2usize..10).prop_map(|(s, m)| polygon(s, m)),
        (2usize..9).prop_map(|n| Space::new(regular_polygon_space(n).unwrap().space).unwrap()),
        prop::sample::select(vec![1.0, 1.5, 2.0, 3.0, f64::INFINITY])
            .prop_map(|p| Space::new(SpaceSpec::lp(Exponent::new(p).unwrap(), 2)).unwrap()),
    ]
}

fn point() -> impl Strategy<Value = Vector> {
    (-5.0f64..5.0, -5.0f64..5.0).prop_map(|(a, b)| Vector::from([a, b]))
}

fn nonzero_point() -> impl Strategy<Value = Vector> {
    point().prop_filter("nonzero", |v| v.coords().iter().map(|c| c.abs()).sum::<f64>() > 1e-3)
}

fn coords<T: AsRef<[f64]>>(items: &[T]) -> Vec<Vec<f64>> {
    items.iter().map(|c| c.as_ref().to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_axioms(space in spaces(), x in point(), y in point(), t in -4.0f64..4.0) {
        let n = |v: &Vector| space.norm(v).unwrap();
        prop_assert!(n(&(&x + &y)) <= n(&x) + n(&y) + 1e-12);
        prop_assert!((n(&x.scale(t)) - t.abs() * n(&x)).abs() <= 1e-12 * (1.0 + n(&x)));
        prop_assert_eq!(n(&x) == 0.0, x.is_zero());
    }

    #[test]
    fn bipolar(seed in any::<u64>(), m in 2usize..10) {
        let ball = polygon(seed, m).ball().unwrap().clone();
        let back = ball.polar().polar();
        prop_assert!(same_point_set(
            &back.vertices().iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
            &ball.vertices().iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
            1e-9
        ));
    }

    #[test]
    fn support_functionals_attain_and_obey_hoelder(space in spaces(), x in nonzero_point(), y in point()) {
        let face = support_set(&space, &x).unwrap();
        let nx = space.norm(&x).unwrap();
        for f in &face.vertices {
            prop_assert!((f.apply(&x) - nx).abs() <= 1e-9 * nx);
            prop_assert!((space.dual_norm(f).unwrap() - 1.0).abs() <= 1e-9);
            prop_assert!(f.apply(&y) <= space.norm(&y).unwrap() + 1e-9);
        }
    }

    #[test]
    fn support_map_is_scale_invariant(space in spaces(), x in nonzero_point(), t in 0.01f64..100.0) {
        let base = coords(&support_set(&space, &x).unwrap().vertices);
        let scaled = coords(&support_set(&space, &x.scale(t)).unwrap().vertices);
        let flipped: Vec<Vec<f64>> = coords(&support_set(&space, &x.scale(-1.0)).unwrap().vertices)
            .into_iter()
            .map(|f| f.into_iter().map(|c| -c).collect())
            .collect();
        prop_assert!(same_point_set(&base, &scaled, 1e-9));
        prop_assert!(same_point_set(&base, &flipped, 1e-9));
    }

    #[test]
    fn derivative_homogeneity(space in spaces(), x in nonzero_point(), y in point(), t in 0.01f64..100.0) {
        let d = rho(&space, &x, &y).unwrap();
        let scaled = rho(&space, &x, &y.scale(t)).unwrap();
        let negated = rho(&space, &x, &y.scale(-1.0)).unwrap();
        let tol = 1e-9 * (1.0 + d.rho_plus.abs() + d.rho_minus.abs()) * t.max(1.0);
        prop_assert!((scaled.rho_plus - t * d.rho_plus).abs() <= tol);
        prop_assert!((scaled.rho_minus - t * d.rho_minus).abs() <= tol);
        prop_assert!((negated.rho_plus + d.rho_minus).abs() <= tol);
        prop_assert!(d.rho_minus <= d.rho_plus + tol);
    }

    #[test]
    fn eps_min_is_homogeneous(space in spaces(), x in nonzero_point(), y in nonzero_point(), s in 0.01f64..100.0, t in -100.0f64..100.0) {
        prop_assume!(t.abs() > 0.01);
        let e = eps_min(&space, &x, &y).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&e));
        prop_assert!((eps_min(&space, &x.scale(s), &y.scale(t)).unwrap() - e).abs() <= 1e-9);
    }

    #[test]
    fn eps_min_vanishes_exactly_on_orthogonal_pairs(space in spaces(), x in nonzero_point(), y in nonzero_point()) {
        let bj = is_bj_orthogonal(&space, &x, &y).unwrap();
        let e = eps_min(&space, &x, &y).unwrap();
        prop_assert_eq!(bj, e <= 1e-9, "eps_min = {}", e);
    }

    #[test]
    fn orthogonal_directions_from_the_face(seed in any::<u64>(), m in 2usize..10, x in nonzero_point(), t in 0.0f64..=1.0) {
        let space = polygon(seed, m);
        let face = support_set(&space, &x).unwrap().vertices;
        let f = &face[0].scale(t) + &face[face.len() - 1].scale(1.0 - t);
        let y = Vector::from([-f[1], f[0]]);
        prop_assert!(is_bj_orthogonal(&space, &x, &y).unwrap());
        prop_assert!(eps_min(&space, &x, &y).unwrap() <= 1e-9);
    }

    #[test]
    fn constants_are_bounded(seed in any::<u64>(), m in 2usize..10) {
        let c = space_constants(&polygon(seed, m)).unwrap();
        for v in [c.e, c.s, c.r] {
            prop_assert!((0.0..=2.0 + 1e-12).contains(&v));
        }
        prop_assert_eq!(c.s, c.r);
    }
}

#[test]
fn prism_face_diameter_is_at_most_two() {
    let prism = Space::new(prism_space(4).unwrap()).unwrap();
    for v in prism.ball().unwrap().vertices() {
        let d = diam_support(&prism, v).unwrap();
        assert!(d <= 2.0 + 1e-12, "{d}");
    }
}

#[test]
fn sum_of_smooth_and_polyhedral_rejects_polytope_operations() {
    let z = Space::new(direct_sum_space(
        Exponent::new(2.0).unwrap(),
        SpaceSpec::lp(Exponent::new(2.0).unwrap(), 2),
        regular_polygon_space(3).unwrap().space,
    ))
    .unwrap();
    assert!(z.ball().is_none());
    assert!(!space_constants(&z).unwrap_err().is_input_error());
    let x = Vector::from([1.0, 0.0, 1.0, 0.0]);
    assert!(diam_support(&z, &x).unwrap() <= 1.0 + 1e-9);
}
