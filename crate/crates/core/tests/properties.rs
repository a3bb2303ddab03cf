use apercut::analysis::patch_in_points;
use apercut::bounds::{nuclear_dim_bound, nuclear_dim_from_tube, tube_dim_bound, BoundInput};
use apercut::exactnum::{enumerate_ring_in_rectangle, rat};
use apercut::growth::{bfs_balls, GenSet};
use apercut::{ExactPoint, GroupKind, IntPoint, Interval, QuadNum, Rational, RingSpec};
use num_bigint::BigUint;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn quad(d: u64) -> impl Strategy<Value = QuadNum> {
    (rational(), rational()).prop_map(move |(a, b)| QuadNum::new(a, b, d).unwrap())
}

fn field() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 6, 7])
}

fn hpoint(n: usize, d: u64) -> impl Strategy<Value = ExactPoint> {
    prop::collection::vec(quad(d), 2 * n + 1)
        .prop_map(move |c| ExactPoint::new(GroupKind::heisenberg(n).unwrap(), c).unwrap())
}

fn hint(n: usize) -> impl Strategy<Value = IntPoint> {
    prop::collection::vec(-6i64..=6, 2 * n + 1)
        .prop_map(move |c| IntPoint::new(GroupKind::heisenberg(n).unwrap(), c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn conjugation_is_a_ring_map((x, y) in field().prop_flat_map(|d| (quad(d), quad(d)))) {
        prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn exact_sign_agrees_with_floats(x in field().prop_flat_map(quad)) {
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.exact_sign() as f64, f.signum());
        }
        prop_assert_eq!((-x.clone()).exact_sign(), -x.exact_sign());
    }

    #[test]
    fn tuples_round_trip(x in field().prop_flat_map(quad)) {
        prop_assert_eq!(QuadNum::from_tuple(&x.to_tuple(), x.d()).unwrap(), x);
    }

    #[test]
    fn heisenberg_axioms((g, h, k) in field().prop_flat_map(|d| (hpoint(2, d), hpoint(2, d), hpoint(2, d)))) {
        prop_assert_eq!(g.mul(&h).unwrap().mul(&k).unwrap(), g.mul(&h.mul(&k).unwrap()).unwrap());
        prop_assert!(g.mul(&g.inverse()).unwrap().is_identity());
        prop_assert_eq!(g.mul(&h).unwrap().inverse(), h.inverse().mul(&g.inverse()).unwrap());
    }

    #[test]
    fn dilation_is_an_automorphism(
        (g, h) in field().prop_flat_map(|d| (hpoint(1, d), hpoint(1, d))),
        lam in rational(),
    ) {
        prop_assert_eq!(
            g.mul(&h).unwrap().dilate(&lam),
            g.dilate(&lam).mul(&h.dilate(&lam)).unwrap()
        );
    }

    #[test]
    fn distance_is_symmetric_and_left_invariant((g, h, k) in (hint(1), hint(1), hint(1))) {
        let d = g.dist(&h).unwrap();
        prop_assert!((d - h.dist(&g).unwrap()).abs() < 1e-9);
        let kg = k.mul(&g).unwrap();
        let kh = k.mul(&h).unwrap();
        prop_assert!((d - kg.dist(&kh).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn exact_distance_test_matches_floats(
        (g, h) in (hpoint(1, 2), hpoint(1, 2)),
        r in (1i64..=400, 1i64..=20).prop_map(|(n, d)| rat(n, d)),
    ) {
        let f = g.dist(&h).unwrap();
        let rf = apercut::exactnum::rational_to_f64(&r);
        if (f - rf).abs() > 1e-6 * (1.0 + rf) {
            prop_assert_eq!(g.dist_leq(&h, &r).unwrap(), f <= rf);
        }
    }

    #[test]
    fn patches_are_left_translation_invariant(
        pts in prop::collection::btree_set(hpoint(1, 2), 2..12),
        g in hpoint(1, 2),
        r in (1i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d)),
    ) {
        let pts: Vec<ExactPoint> = pts.into_iter().collect();
        let moved: Vec<ExactPoint> = pts.iter().map(|p| g.mul(p).unwrap()).collect();
        for c in 0..pts.len() {
            prop_assert_eq!(patch_in_points(&pts, c, &r).unwrap(), patch_in_points(&moved, c, &r).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumeration_is_exactly_the_constraint_set(
        d in prop::sample::select(vec![2u64, 3, 5, 7]),
        (p, pw, i, iw) in (rational(), 0i64..=30, rational(), 0i64..=30),
    ) {
        let ring = RingSpec::z_sqrt(d).unwrap();
        let phys = Interval::new(p.clone(), p + rat(pw, 3)).unwrap();
        let internal = Interval::new(i.clone(), i + rat(iw, 3)).unwrap();
        let got = enumerate_ring_in_rectangle(&ring, &phys, &internal);
        for x in &got {
            prop_assert!(phys.contains(x) && internal.contains(&x.conjugate()));
        }
        prop_assert!(got.windows(2).all(|w| w[0] < w[1]));
        // every candidate with small coefficients is either listed or excluded
        for a in -20i64..=20 {
            for b in -15i64..=15 {
                let x = QuadNum::from_ints(a, b, d).unwrap();
                let inside = phys.contains(&x) && internal.contains(&x.conjugate());
                prop_assert_eq!(inside, got.binary_search(&x).is_ok());
            }
        }
    }

    #[test]
    fn bfs_ignores_generator_order(perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
        let kind = GroupKind::heisenberg(1).unwrap();
        let gens = IntPoint::standard_generators(kind, 1);
        let shuffled: Vec<IntPoint> = perm.iter().map(|&i| gens[i % gens.len()].clone()).collect();
        let a = bfs_balls(&GenSet::new(kind, shuffled).unwrap(), 5, 1_000_000).unwrap();
        let b = bfs_balls(&GenSet::standard(kind), 5, 1_000_000).unwrap();
        prop_assert_eq!(a.counts(), b.counts());
    }

    #[test]
    fn bounds_compose_and_are_monotone(d_g in 0u32..12, dim_x in 0u64..40) {
        let b = BoundInput { d_g, dim_x };
        prop_assert_eq!(nuclear_dim_bound(b), nuclear_dim_from_tube(&BigUint::from(dim_x), &tube_dim_bound(b)));
        let up_d = nuclear_dim_bound(BoundInput { d_g: d_g + 1, dim_x });
        let up_x = nuclear_dim_bound(BoundInput { d_g, dim_x: dim_x + 1 });
        prop_assert!(nuclear_dim_bound(b) <= up_d);
        prop_assert!(nuclear_dim_bound(b) <= up_x);
    }
}
