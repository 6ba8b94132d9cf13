use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tspn_core::balls::*;
use tspn_core::geom::{Ball, Point};
use tspn_core::packing::check_volume_packing;
use tspn_core::sweep::sweep_independent_set;
use tspn_core::verify::{balls, verify_tour};
use tspn_core::TspnError;

fn ball(x: f64, y: f64, z: f64) -> Ball<f64> {
    Ball::unit(Point::from_f64(&[x, y, z]))
}

fn random_balls(rng: &mut ChaCha8Rng, n: usize, side: f64) -> Vec<Ball<f64>> {
    (0..n)
        .map(|_| ball(rng.random_range(0.0..side), rng.random_range(0.0..side), rng.random_range(0.0..side)))
        .collect()
}

fn expected_length(r: &BallsTspResult<f64>) -> f64 {
    let walks = r.k() + r.k() % 2;
    r.backbone_length + walks as f64 * 18.0 * 3f64.sqrt()
}

#[test]
fn lattice_matches_listed_coordinates() {
    let g = build_gamma::<f64>();
    let a = 1.0 / 3f64.sqrt();
    assert!((g.a - a).abs() < 1e-15);
    assert_eq!(g.points.len(), 28);
    let low = g.points.iter().filter(|p| (p[2] - a).abs() < 1e-12).count();
    let high = g.points.iter().filter(|p| (p[2] - 3.0 * a).abs() < 1e-12).count();
    assert_eq!((low, high), (16, 12));
    for p in &g.points {
        let (x, y) = ((p[0] / a).round() as i32, (p[1] / a).round() as i32);
        assert!([-3, -1, 1, 3].contains(&x) && [-3, -1, 1, 3].contains(&y));
        if (p[2] - 3.0 * a).abs() < 1e-12 {
            assert!(x.abs() != 3 || y.abs() != 3);
        }
    }
}

#[test]
fn path_is_hamiltonian_with_equal_steps() {
    let g = build_gamma::<f64>();
    let a = g.a;
    let mut seen = g.path.clone();
    seen.sort();
    assert_eq!(seen, (0..28).collect::<Vec<_>>());
    assert_eq!(g.path.len() - 1, 27);
    for w in g.path.windows(2) {
        assert!((g.points[w[0]].dist(&g.points[w[1]]) - 2.0 / 3f64.sqrt()).abs() < 1e-12);
    }
    assert!(g.points[g.path[0]].dist(&Point::from_f64(&[-a, -3.0 * a, a])) < 1e-15);
    assert!(g.points[g.path[27]].dist(&Point::from_f64(&[-a, -3.0 * a, 3.0 * a])) < 1e-15);
    assert!((g.path_length() - 31.18).abs() < 0.01);
}

#[test]
fn coverage_examples() {
    let g = build_gamma::<f64>();
    assert!(check_gamma_coverage(&g, &Point::from_f64(&[0.0, 0.0, 0.0])).unwrap());
    let a = g.a;
    let d: f64 = Point::from_f64(&[a, a, 3.0 * a]).dist(&Point::from_f64(&[0.0, 0.0, 2.0]));
    assert!((d - 0.859).abs() < 1e-3);
    assert!(check_gamma_coverage(&g, &Point::from_f64(&[0.0, 0.0, 2.0])).unwrap());
    assert!(check_gamma_coverage(&g, &Point::from_f64(&[0.0, 0.0, 2.5])).is_err());
    assert!(check_gamma_coverage(&g, &Point::from_f64(&[0.0, 0.0, -0.1])).is_err());
}

#[test]
fn coverage_random_offsets() {
    let g = build_gamma::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let mut tested = 0;
    while tested < 100_000 {
        let q = [rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0), rng.random_range(0.0..=2.0)];
        if q.iter().map(|c| c * c).sum::<f64>() > 4.0 {
            continue;
        }
        tested += 1;
        assert!(check_gamma_coverage(&g, &Point::from_f64(&q)).unwrap(), "{q:?}");
    }
}

#[test]
fn coverage_fails_far_below_the_rim() {
    // the lattice sits on the upper side; a ball well below misses it
    let g = build_gamma::<f64>();
    let far = Point::from_f64(&[0.0, 0.0, -1.5]);
    assert!(g.points.iter().all(|p| p.dist(&far) > 1.0));
}

#[test]
fn single_ball_walks_path_and_back() {
    let bs = [ball(1.0, 2.0, 3.0)];
    let r = solve_balls(&bs, None).unwrap();
    assert!(r.odd_fallback);
    assert!((r.tour.length() - 36.0 * 3f64.sqrt()).abs() < 1e-9);
    assert!(verify_tour(&r.tour, &balls(&bs), 1e-7).unwrap().is_valid());
}

#[test]
fn two_far_balls_length_identity() {
    let bs = [ball(0.0, 0.0, 0.0), ball(40.0, 5.0, 3.0)];
    let r = solve_balls(&bs, None).unwrap();
    assert_eq!(r.k(), 2);
    assert!(r.disjoint && !r.odd_fallback);
    assert!((r.tour.length() - expected_length(&r)).abs() < 1e-6);
    assert!(verify_tour(&r.tour, &balls(&bs), 1e-7).unwrap().is_valid());
}

#[test]
fn random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for trial in 0..10 {
        let bs = random_balls(&mut rng, 100, 20.0);
        let r = solve_balls(&bs, None).unwrap();
        let v = verify_tour(&r.tour, &balls(&bs), 1e-7).unwrap();
        assert!(v.is_valid(), "trial {trial}: {:?}", v.first_violation);
        assert!((r.tour.length() - expected_length(&r)).abs() < 1e-6);
        assert!((r.k() as f64) <= 3.0 * r.backbone_length + 9.0);
        assert!(r.lower_bound <= r.tour.length());
        let s = sweep_independent_set(&bs, 2).unwrap();
        for (i, &c) in s.cover.iter().enumerate() {
            assert!(bs[c].center()[2] <= bs[i].center()[2]);
            let off = bs[i].center() - bs[c].center();
            assert!(off.norm() <= 2.0 + 1e-9);
        }
        for (a, &i) in s.selected.iter().enumerate() {
            for &j in &s.selected[a + 1..] {
                assert!(bs[i].center().dist(bs[j].center()) > 2.0 - 1e-9);
            }
        }
    }
}

#[test]
fn budget_reproduces_constants() {
    let s3 = 3f64.sqrt();
    for alpha in [1.0, 1.01, 2.0] {
        let b = balls_budget(alpha, false);
        assert!((b.multiplier - (7.0 * alpha + 54.0 * s3)).abs() < 1e-9);
        assert!((b.additive - (16.0 * alpha + 144.0 * s3)).abs() < 1e-9);
        let odd = balls_budget(alpha, true);
        assert!((odd.additive - b.additive - 18.0 * s3).abs() < 1e-9);
    }
    let b = balls_budget(1.01, false);
    assert!(b.multiplier <= 100.61 && b.additive <= 265.6);
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(solve_balls(&[ball(0.0, 0.0, 0.0), Ball::from_f64(&[3.0, 0.0, 0.0], 0.5).unwrap()], None), Err(TspnError::UnequalRadii)));
    assert!(solve_balls::<f64>(&[], None).is_err());
    assert!(solve_balls::<f64>(&[Ball::unit(Point::from_f64(&[0.0, 0.0]))], None).is_err());
}

#[test]
fn volume_of_point_and_segment() {
    let p = vec![Point::from_f64(&[0.0, 0.0, 0.0])];
    let c = check_volume_packing(&p, &[], 1.0, 200_000, 3).unwrap();
    assert!((c.bound - 4.0 * PI / 3.0).abs() < 1e-12);
    assert!((c.estimate - c.bound).abs() < 4.0 * c.sigma);

    let seg = vec![Point::from_f64(&[0.0, 0.0, 0.0]), Point::from_f64(&[1.0, 2.0, 2.0])];
    let c = check_volume_packing(&seg, &[(0, 1)], 1.0, 200_000, 4).unwrap();
    assert!((c.bound - (3.0 * PI + 4.0 * PI / 3.0)).abs() < 1e-12);
    assert!((c.estimate - c.bound).abs() < 4.0 * c.sigma);
}

#[test]
fn volume_of_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for _ in 0..10 {
        let n = rng.random_range(2..8);
        let pts: Vec<_> = (0..n)
            .map(|_| Point::from_f64(&[rng.random_range(0.0..4.0), rng.random_range(0.0..4.0), rng.random_range(0.0..4.0)]))
            .collect();
        let edges: Vec<_> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
        assert!(check_volume_packing(&pts, &edges, rng.random_range(0.1..1.5), 50_000, rng.random()).unwrap().holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn ball_tours_are_valid(seed in 0u64..10_000, n in 1usize..30, side in 2.0f64..15.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bs = random_balls(&mut rng, n, side);
        let r = solve_balls(&bs, None).unwrap();
        prop_assert!(verify_tour(&r.tour, &balls(&bs), 1e-7).unwrap().is_valid());
        prop_assert!((r.tour.length() - expected_length(&r)).abs() < 1e-6);
    }

    #[test]
    fn coverage_holds_on_sphere_shell(theta in 0.0f64..PI / 2.0, phi in 0.0f64..2.0 * PI, r in 1.9f64..=2.0) {
        let g = build_gamma::<f64>();
        let q = Point::from_f64(&[r * theta.sin() * phi.cos(), r * theta.sin() * phi.sin(), r * theta.cos()]);
        prop_assert!(check_gamma_coverage(&g, &q).unwrap());
    }
}
