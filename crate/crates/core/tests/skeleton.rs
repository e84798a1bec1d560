mod common;

use common::{random_beta, random_point, skeleton_count_brute, skeleton_slack};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skdepth::{
    beta_skeleton_depth, beta_skeleton_depths, influence_area, lens_area, lens_half_height, Beta,
    InfluenceRegion, Point, PointSet,
};

fn contains(a: [f64; 2], b: [f64; 2], q: [f64; 2], beta: Beta) -> bool {
    InfluenceRegion::new(&a, &b, beta).unwrap().contains(&q)
}

fn beta_strategy() -> impl Strategy<Value = Beta> {
    prop_oneof![
        Just(Beta::Finite(1.0)),
        Just(Beta::Infinite),
        (1.0..1000.0f64).prop_map(Beta::Finite),
    ]
}

fn planar() -> impl Strategy<Value = [f64; 2]> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| [x, y])
}

proptest! {
    #[test]
    fn membership_matches_definition_away_from_boundary(
        a in planar(), b in planar(), q in planar(), beta in beta_strategy()
    ) {
        prop_assume!(a != b);
        let slack = skeleton_slack(a, b, q, beta);
        prop_assume!(slack.abs() > 1e-9);
        prop_assert_eq!(contains(a, b, q, beta), slack > 0.0);
    }

    #[test]
    fn region_is_symmetric_in_its_pair(a in planar(), b in planar(), q in planar(), beta in beta_strategy()) {
        prop_assume!(a != b);
        prop_assume!(skeleton_slack(a, b, q, beta).abs() > 1e-9);
        prop_assert_eq!(contains(a, b, q, beta), contains(b, a, q, beta));
    }

    #[test]
    fn endpoints_belong_to_every_region(a in planar(), b in planar(), beta in beta_strategy()) {
        prop_assume!(a != b);
        prop_assert!(contains(a, b, a, beta));
        prop_assert!(contains(a, b, b, beta));
    }

    #[test]
    fn regions_grow_with_beta(
        a in planar(), b in planar(), q in planar(), lo in 1.0..50.0f64, step in 0.0..50.0f64
    ) {
        prop_assume!(a != b);
        let small = Beta::Finite(lo);
        let large = Beta::Finite(lo + step);
        if contains(a, b, q, small) {
            prop_assert!(contains(a, b, q, large) || skeleton_slack(a, b, q, large).abs() < 1e-9);
            prop_assert!(contains(a, b, q, Beta::Infinite) || skeleton_slack(a, b, q, Beta::Infinite).abs() < 1e-9);
        }
    }

    #[test]
    fn depth_matches_brute_count(
        points in prop::collection::vec(planar(), 2..30), q in planar(), beta in beta_strategy()
    ) {
        let set = PointSet::from_xy(&points).unwrap();
        let d = beta_skeleton_depth(&Point::xy(q[0], q[1]), &set, beta);
        let (inside, pairs) = skeleton_count_brute(q, &points, beta);
        match d {
            Ok(d) => {
                prop_assert_eq!(d.raw_count, inside);
                prop_assert_eq!(d.normalizer, pairs);
                prop_assert!((0.0..=1.0).contains(&d.value));
            }
            Err(_) => prop_assert_eq!(pairs, 0),
        }
    }

    #[test]
    fn depth_is_invariant_under_rigid_motion(
        points in prop::collection::vec(planar(), 2..25), q in planar(), beta in beta_strategy()
    ) {
        // Quarter turns and reflections are exact in floating point.
        let turn = |p: [f64; 2]| [-p[1], p[0]];
        let set = PointSet::from_xy(&points).unwrap();
        let turned = PointSet::from_xy(&points.iter().map(|&p| turn(p)).collect::<Vec<_>>()).unwrap();
        let tq = turn(q);
        let base = beta_skeleton_depth(&Point::xy(q[0], q[1]), &set, beta);
        let moved = beta_skeleton_depth(&Point::xy(tq[0], tq[1]), &turned, beta);
        prop_assert_eq!(base.map(|d| d.raw_count).ok(), moved.map(|d| d.raw_count).ok());
    }

    #[test]
    fn depth_is_monotone_in_beta(
        points in prop::collection::vec(planar(), 2..25), q in planar(), lo in 1.0..20.0f64, step in 0.0..20.0f64
    ) {
        let set = PointSet::from_xy(&points).unwrap();
        prop_assume!(points.iter().any(|p| *p != points[0]));
        let q = Point::xy(q[0], q[1]);
        let a = beta_skeleton_depth(&q, &set, Beta::Finite(lo)).unwrap().raw_count;
        let b = beta_skeleton_depth(&q, &set, Beta::Finite(lo + step)).unwrap().raw_count;
        let c = beta_skeleton_depth(&q, &set, Beta::Infinite).unwrap().raw_count;
        prop_assert!(a <= b && b <= c, "{} {} {}", a, b, c);
    }
}

#[test]
fn depth_vanishes_far_away() {
    let set = PointSet::uniform_2d(40, common::desk_square(), 9);
    for beta in [Beta::Finite(1.0), Beta::Finite(3.0), Beta::Finite(1000.0)] {
        let d = beta_skeleton_depth(&Point::xy(1e6, -3e6), &set, beta).unwrap();
        assert_eq!(d.value, 0.0);
    }
    // The slab is unbounded perpendicular to each pair, but not along every direction at once.
    let d = beta_skeleton_depth(&Point::xy(1e6, 1e6), &set, Beta::Infinite).unwrap();
    assert!(d.value < 0.5);
}

#[test]
fn large_beta_approaches_slab() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut disagree = 0;
    for _ in 0..20_000 {
        let (a, b) = (random_point(&mut rng, 5.0), random_point(&mut rng, 5.0));
        let q = random_point(&mut rng, 5.0);
        if contains(a, b, q, Beta::Finite(1e7)) != contains(a, b, q, Beta::Infinite) {
            disagree += 1;
        }
    }
    assert!(disagree <= 5, "{disagree}");
}

#[test]
fn lens_area_matches_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let l = 2.0;
    for beta in [1.5, 2.0, 3.0, 10.0] {
        let h = lens_half_height(beta, l);
        let region = InfluenceRegion::new(&[0.0, 0.0], &[l, 0.0], Beta::Finite(beta)).unwrap();
        let trials = 200_000;
        let hits = (0..trials)
            .filter(|_| region.contains(&[rng.random_range(0.0..l), rng.random_range(-h..h)]))
            .count();
        let box_area = 2.0 * l * h;
        let p = hits as f64 / f64::from(trials);
        let sigma = box_area * (p * (1.0 - p) / f64::from(trials)).sqrt();
        let exact = lens_area(beta, l).unwrap();
        assert!((p * box_area - exact).abs() <= 3.0 * sigma, "beta {beta}: {} vs {exact}", p * box_area);
    }
}

#[test]
fn influence_area_is_monotone() {
    let mut last = 0.0;
    for beta in [1.0, 1.0001, 1.5, 2.0, 10.0, 1e4] {
        let area = influence_area(Beta::Finite(beta), 1.0).unwrap();
        assert!(area > last);
        last = area;
    }
    assert_eq!(influence_area(Beta::Infinite, 1.0).unwrap(), f64::INFINITY);
}

#[test]
fn higher_dimensional_depth_matches_planar_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let points: Vec<[f64; 2]> = (0..30).map(|_| random_point(&mut rng, 5.0)).collect();
    let flat = PointSet::from_xy(&points).unwrap();
    let lifted = PointSet::from_flat(3, points.iter().flat_map(|p| [p[0], p[1], 0.0]).collect()).unwrap();
    for _ in 0..20 {
        let q = random_point(&mut rng, 6.0);
        let beta = random_beta(&mut rng);
        let d2 = beta_skeleton_depth(&Point::xy(q[0], q[1]), &flat, beta).unwrap();
        let d3 = beta_skeleton_depth(&Point::new(vec![q[0], q[1], 0.0]).unwrap(), &lifted, beta).unwrap();
        assert_eq!(d2.raw_count, d3.raw_count);
    }
}

#[test]
fn batch_preserves_order() {
    let set = PointSet::uniform_2d(40, common::desk_square(), 5);
    let queries = PointSet::uniform_2d(30, common::desk_square(), 6);
    let beta = Beta::Finite(2.0);
    let batch = beta_skeleton_depths(&queries, &set, beta).unwrap();
    for (i, d) in batch.iter().enumerate() {
        assert_eq!(*d, beta_skeleton_depth(&queries.point(i), &set, beta).unwrap());
    }
}
