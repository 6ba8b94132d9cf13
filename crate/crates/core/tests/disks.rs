use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tspn_core::disks::*;
use tspn_core::geom::distance::point_segment;
use tspn_core::geom::{Ball, Point};
use tspn_core::packing::check_area_packing;
use tspn_core::point_tsp::{group_tsp_exact, held_karp, PointBackend};
use tspn_core::sweep::sweep_independent_set;
use tspn_core::verify::{balls, verify_tour};
use tspn_core::TspnError;

fn disk(x: f64, y: f64) -> Ball<f64> {
    Ball::unit(Point::from_f64(&[x, y]))
}

fn random_disks(rng: &mut ChaCha8Rng, n: usize, side: f64) -> Vec<Ball<f64>> {
    (0..n).map(|_| disk(rng.random_range(0.0..side), rng.random_range(0.0..side))).collect()
}

/// Pairwise overlap check on the centers of the selected disks, and each
/// removed disk meets its cover disk without lying left of it.
fn check_sweep(ds: &[Ball<f64>]) {
    let s = sweep_independent_set(ds, 0).unwrap();
    for (a, &i) in s.selected.iter().enumerate() {
        for &j in &s.selected[a + 1..] {
            assert!(ds[i].center().dist(ds[j].center()) > 2.0 - 1e-9);
        }
    }
    for w in s.selected.windows(2) {
        assert!(ds[w[0]].center()[0] <= ds[w[1]].center()[0]);
    }
    for (i, &c) in s.cover.iter().enumerate() {
        assert!(ds[i].center().dist(ds[c].center()) <= 2.0 + 1e-9);
        assert!(ds[c].center()[0] <= ds[i].center()[0]);
        if !s.selected.contains(&i) {
            assert_ne!(c, i);
        }
    }
}

fn polyline_distance(p: &Point<f64>, pts: &[Point<f64>]) -> f64 {
    pts.windows(2).map(|w| point_segment(p, &w[0], &w[1])).fold(f64::INFINITY, f64::min)
}

/// Expected output length from the backbone and the curve polylines.
fn structural_length(r: &DisksTspResult<f64>) -> f64 {
    let c = gamma_curve::<f64>(&Point::from_f64(&[0.0, 0.0])).unwrap();
    let k = r.k() as f64;
    let v = if r.k() % 2 == 1 { chord_length::<f64>() } else { 0.0 };
    r.backbone_length + k * c.path.length() + v
}

fn circle_samples(b: &Ball<f64>, m: usize) -> Vec<Point<f64>> {
    (0..m)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / m as f64;
            Point::from_f64(&[b.center()[0] + t.cos(), b.center()[1] + t.sin()])
        })
        .collect()
}

#[test]
fn sweep_small_example() {
    let s = sweep_independent_set(&[disk(0.0, 0.0), disk(1.0, 0.0), disk(4.0, 0.0)], 0).unwrap();
    assert_eq!(s.selected, vec![0, 2]);
    assert_eq!(s.cover, vec![0, 0, 2]);
}

#[test]
fn sweep_disjoint_selects_all() {
    let ds: Vec<_> = (0..10).map(|i| disk(3.0 * i as f64, (i % 3) as f64)).collect();
    assert_eq!(sweep_independent_set(&ds, 0).unwrap().len(), 10);
}

#[test]
fn sweep_random_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for _ in 0..5 {
        check_sweep(&random_disks(&mut rng, 200, 30.0));
    }
}

#[test]
fn sweep_rejects_unequal_radii() {
    let ds = vec![disk(0.0, 0.0), Ball::from_f64(&[3.0, 0.0], 2.0).unwrap()];
    assert!(matches!(sweep_independent_set(&ds, 0), Err(TspnError::UnequalRadii)));
    assert!(matches!(solve_disks(&ds, None), Err(TspnError::UnequalRadii)));
}

#[test]
fn curve_meets_disks_on_right_half_circle() {
    let c = gamma_curve(&Point::from_f64(&[0.0, 0.0])).unwrap();
    let pts = c.path.vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut tested = 0;
    while tested < 100_000 {
        // centers a sweep can remove: not left of the selected disk
        let q = [rng.random_range(0.0..=2.0), rng.random_range(-2.0..=2.0)];
        if q[0] * q[0] + q[1] * q[1] > 4.0 {
            continue;
        }
        tested += 1;
        assert!(polyline_distance(&Point::from_f64(&q), pts) <= 1.0 + 1e-4, "{q:?}");
    }
}

#[test]
fn single_disk_tour() {
    let r = solve_disks(&[disk(2.0, 3.0)], None).unwrap();
    let expected = gamma_length::<f64>() + chord_length::<f64>();
    assert!((expected - 4.78).abs() < 0.01);
    assert!((r.tour.length() - expected).abs() < 1e-6);
    assert!(verify_tour(&r.tour, &balls(&[disk(2.0, 3.0)]), 1e-7).unwrap().is_valid());
}

#[test]
fn two_far_disks_with_a_neighbor() {
    let dist = 50.0;
    let ds = vec![disk(0.0, 0.0), disk(1.0, 0.5), disk(dist, 0.0)];
    let r = solve_disks(&ds, None).unwrap();
    assert_eq!(r.k(), 2);
    assert!(!r.disjoint);
    assert!((r.tour.length() - (2.0 * dist + 2.0 * gamma_length::<f64>())).abs() < 1e-6);
    assert!(verify_tour(&r.tour, &balls(&ds), 1e-7).unwrap().is_valid());
}

#[test]
fn random_instances_valid_with_length_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..60 {
        let n = rng.random_range(2..=40);
        let ds = random_disks(&mut rng, n, if trial % 2 == 0 { 8.0 } else { 25.0 });
        let r = solve_disks(&ds, None).unwrap();
        let v = verify_tour(&r.tour, &balls(&ds), 1e-7).unwrap();
        assert!(v.is_valid(), "trial {trial}: {:?}", v.first_violation);
        if r.disjoint {
            assert!((r.tour.length() - r.backbone_length).abs() < 1e-9);
        } else {
            assert!((r.tour.length() - structural_length(&r)).abs() < 1e-6);
            let analytic = r.backbone_length + GAMMA_LENGTH_BOUND * r.k() as f64 + CHORD_LENGTH_BOUND;
            assert!(r.tour.length() <= analytic);
        }
        assert!((r.k() as f64) <= 4.0 / PI * r.backbone_length + 5.0);
        assert_eq!(r.backend, if r.k() <= 13 { PointBackend::HeldKarp } else { PointBackend::MstTwoOpt });
    }
}

#[test]
fn mst_backend_is_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let ds = random_disks(&mut rng, 30, 12.0);
    let r = solve_disks(&ds, Some(PointBackend::MstTwoOpt)).unwrap();
    assert!(verify_tour(&r.tour, &balls(&ds), 1e-7).unwrap().is_valid());
    assert_eq!(r.budget, disks_budget(2.0, r.disjoint));
}

#[test]
fn disjoint_input_uses_backbone() {
    let ds: Vec<_> = (0..6).map(|i| disk(3.0 * i as f64, if i % 2 == 0 { 0.0 } else { 4.0 })).collect();
    let r = solve_disks(&ds, None).unwrap();
    assert!(r.disjoint);
    assert_eq!(r.k(), 6);
    assert!(verify_tour(&r.tour, &balls(&ds), 1e-7).unwrap().is_valid());
    assert_eq!(r.budget, disks_budget(1.0, true));
}

#[test]
fn center_detour_bound_examples() {
    assert_eq!(center_detour_bound(10, 1.0), 20.0);
    assert_eq!(center_detour_bound(10, 0.0), 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..5 {
        let ds = random_disks(&mut rng, 8, 10.0);
        let centers: Vec<_> = ds.iter().map(|d| d.center().clone()).collect();
        let groups: Vec<_> = ds.iter().map(|d| circle_samples(d, 64)).collect();
        let opt = group_tsp_exact(&groups).unwrap().length();
        let point_opt = held_karp(&centers).unwrap().length();
        assert!(point_opt - center_detour_bound(8, 1.0) <= opt + 1e-9);
        let r = solve_disks(&ds, None).unwrap();
        assert!(r.lower_bound <= opt + 1e-9);
        assert!(r.budget.satisfied(r.tour.length(), opt));
    }
}

#[test]
fn area_of_point_and_segment() {
    let p = vec![Point::from_f64(&[1.0, 2.0])];
    let c = check_area_packing(&p, &[], 1.0, 200_000, 1).unwrap();
    assert!((c.bound - PI).abs() < 1e-12);
    assert!((c.estimate - PI).abs() < 4.0 * c.sigma);
    assert!(c.holds);

    let seg = vec![Point::from_f64(&[0.0, 0.0]), Point::from_f64(&[3.0, 4.0])];
    let c = check_area_packing(&seg, &[(0, 1)], 0.5, 200_000, 2).unwrap();
    assert!((c.bound - (5.0 + PI / 4.0)).abs() < 1e-12);
    assert!((c.estimate - c.bound).abs() < 4.0 * c.sigma);
}

#[test]
fn area_of_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..10 {
        let n = rng.random_range(2..8);
        let pts: Vec<_> = (0..n).map(|_| Point::from_f64(&[rng.random_range(0.0..5.0), rng.random_range(0.0..5.0)])).collect();
        let edges: Vec<_> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
        assert!(check_area_packing(&pts, &edges, rng.random_range(0.1..2.0), 50_000, rng.random()).unwrap().holds);
    }
}

#[test]
fn area_rejects_disconnected() {
    let pts = vec![Point::from_f64(&[0.0, 0.0]), Point::from_f64(&[1.0, 0.0])];
    assert!(matches!(check_area_packing(&pts, &[], 1.0, 10, 0), Err(TspnError::Disconnected)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn disk_tours_are_valid(seed in 0u64..10_000, n in 1usize..25, side in 2.0f64..20.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = random_disks(&mut rng, n, side);
        let r = solve_disks(&ds, None).unwrap();
        prop_assert!(verify_tour(&r.tour, &balls(&ds), 1e-7).unwrap().is_valid());
        prop_assert!(r.lower_bound <= r.tour.length() + 1e-9);
    }
}
