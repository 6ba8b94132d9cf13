use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tspn_core::geom::distance::*;
use tspn_core::geom::{gray_code_box_tour, gray_code_tour_length, Ball, Hyperplane, Line, OrientedBox, Point, Rotation};

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..120 {
        let (a, b) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    f((lo + hi) / 2.0)
}

/// Distance between lines by nested golden-section search over both
/// parameters; the squared distance is jointly convex.
fn brute_line_distance(a: &Line<f64>, b: &Line<f64>) -> f64 {
    golden_min(|s| golden_min(|t| a.at(s).dist(&b.at(t)), -200.0, 200.0), -200.0, 200.0)
}

fn random_line(rng: &mut ChaCha8Rng) -> Line<f64> {
    let p: Vec<f64> = (0..3).map(|_| rng.random_range(-5.0..5.0)).collect();
    let d: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
    Line::from_f64(&p, &d).unwrap()
}

#[test]
fn transversal_matches_search_and_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let (a, b) = (random_line(&mut rng), random_line(&mut rng));
        let t = min_transversal(&a, &b);
        assert!(!t.parallel);
        let want = brute_line_distance(&a, &b);
        assert!((t.length() - want).abs() < 1e-6, "{} vs {want}", t.length());
        assert!(point_line(&t.on_a, &a) < 1e-9 && point_line(&t.on_b, &b) < 1e-9);
        // segment is orthogonal to both lines
        let seg = &t.on_b - &t.on_a;
        assert!(seg.dot(a.dir().unit()).abs() < 1e-9 && seg.dot(b.dir().unit()).abs() < 1e-9);
        let back = min_transversal(&b, &a);
        assert!((back.length() - t.length()).abs() < 1e-9);
        assert!(back.on_a.dist(&t.on_b) < 1e-7 && back.on_b.dist(&t.on_a) < 1e-7);
    }
}

#[test]
fn parallel_lines_use_anchor_and_foot() {
    let a = Line::<f64>::from_f64(&[1.0, 2.0, 3.0], &[0.0, 0.0, 1.0]).unwrap();
    let b = Line::<f64>::from_f64(&[4.0, 6.0, -7.0], &[0.0, 0.0, -2.0]).unwrap();
    let t = min_transversal(&a, &b);
    assert!(t.parallel);
    // anchors are stored as the points nearest the origin
    assert_eq!(t.on_a, Point::from_f64(&[1.0, 2.0, 0.0]));
    assert!(t.on_b.dist(&Point::from_f64(&[4.0, 6.0, 0.0])) < 1e-12);
    assert!((t.length() - 5.0).abs() < 1e-12);
}

#[test]
fn intersecting_lines_have_zero_transversal() {
    let a = Line::<f64>::from_f64(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap();
    let b = Line::<f64>::from_f64(&[3.0, -1.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
    let t = min_transversal(&a, &b);
    assert!(t.length() < 1e-12);
    assert!(t.on_a.dist(&Point::from_f64(&[3.0, 0.0, 0.0])) < 1e-12);
}

fn sampled_min(a: &Point<f64>, b: &Point<f64>, f: impl Fn(&Point<f64>) -> f64) -> f64 {
    (0..=20_000).map(|i| f(&a.lerp(b, i as f64 / 20_000.0))).fold(f64::INFINITY, f64::min)
}

#[test]
fn segment_distances_match_dense_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut pt = || Point::from_f64(&(0..3).map(|_| rng.random_range(-5.0..5.0)).collect::<Vec<_>>());
    for _ in 0..100 {
        let (a, b) = (pt(), pt());
        let len = a.dist(&b);
        let step = len / 20_000.0;
        let line = Line::new(&pt(), &pt()).unwrap();
        let got = segment_line(&a, &b, &line);
        let want = sampled_min(&a, &b, |p| point_line(p, &line));
        assert!(got <= want + 1e-9 && want <= got + step, "line {got} vs {want}");

        let ball = Ball::new(pt(), rng_radius(&a)).unwrap();
        let got = segment_ball(&a, &b, &ball);
        let want = sampled_min(&a, &b, |p| point_ball(p, &ball));
        assert!(got <= want + 1e-9 && want <= got + step, "ball {got} vs {want}");

        let n = pt();
        let h = Hyperplane::new(&n, n.norm()).unwrap();
        let got = segment_hyperplane(&a, &b, &h);
        let want = sampled_min(&a, &b, |p| point_hyperplane(p, &h));
        assert!(got <= want + 1e-9 && want <= got + step, "plane {got} vs {want}");
    }
}

fn rng_radius(p: &Point<f64>) -> f64 {
    0.5 + p[0].abs() / 5.0
}

#[test]
fn segment_hyperplane_zero_iff_sides_differ() {
    let h = Hyperplane::<f64>::from_f64(&[0.0, 0.0, 1.0], 1.0).unwrap();
    let below = Point::from_f64(&[3.0, 1.0, -2.0]);
    let above = Point::from_f64(&[-1.0, 4.0, 5.0]);
    let also_above = Point::from_f64(&[0.0, 0.0, 1.5]);
    assert_eq!(segment_hyperplane(&below, &above, &h), 0.0);
    assert!((segment_hyperplane(&also_above, &above, &h) - 0.5).abs() < 1e-12);
}

#[test]
fn gray_tour_visits_every_vertex_with_closed_form_length() {
    let frame = Rotation::<f64>::from_quaternion([0.9, 0.1, -0.3, 0.2]);
    let b = OrientedBox::new(frame, vec![0.0, -1.0, 2.0], vec![1.0, 2.0, 4.5]).unwrap();
    let tour = gray_code_box_tour(&b);
    assert_eq!(tour.len(), 8);
    // sorted widths 1 <= 2.5 <= 3: 4*1 + 2*2.5 + 2*3
    assert!((tour.length() - 15.0).abs() < 1e-9);
    assert!((gray_code_tour_length(&b.widths()) - 15.0).abs() < 1e-9);
    for mask in 0..8 {
        let v = b.vertex(mask);
        assert!(tour.vertices().iter().any(|p| p.dist(&v) < 1e-9));
    }
}

proptest! {
    #[test]
    fn transversal_never_exceeds_anchor_gap(
        p in prop::array::uniform3(-5.0f64..5.0), q in prop::array::uniform3(-5.0f64..5.0),
        u in prop::array::uniform3(-1.0f64..1.0), v in prop::array::uniform3(-1.0f64..1.0),
        s in -10.0f64..10.0, t in -10.0f64..10.0,
    ) {
        prop_assume!(u.iter().map(|x| x * x).sum::<f64>() > 1e-3 && v.iter().map(|x| x * x).sum::<f64>() > 1e-3);
        let a = Line::from_f64(&p, &u).unwrap();
        let b = Line::from_f64(&q, &v).unwrap();
        let d = min_transversal(&a, &b).length();
        prop_assert!(d <= a.at(s).dist(&b.at(t)) + 1e-9);
    }
}
