//! Random configurations for the property suites.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use tspn_core::geom::{angle_between, min_transversal, Line, Point};

use crate::generate::{random_unit, uniform_point};

pub fn random_line(rng: &mut impl Rng, spread: f64) -> Line<f64> {
    Line::from_f64(&uniform_point(rng, 3, -spread, spread), &random_unit(rng, 3)).unwrap()
}

/// Unit vector within `pi/6` of the last axis.
pub fn near_vertical(rng: &mut impl Rng) -> [f64; 3] {
    let psi = rng.random_range(0.0..PI / 6.0);
    let az = rng.random_range(0.0..TAU);
    [psi.sin() * az.cos(), psi.sin() * az.sin(), psi.cos()]
}

/// Two lines, a cutoff angle below their angle, and a point on each.
pub struct DetourConfig {
    pub l1: Line<f64>,
    pub l2: Line<f64>,
    pub p1: Point<f64>,
    pub p2: Point<f64>,
    pub phi0: f64,
}

pub fn detour_config(rng: &mut impl Rng) -> Option<DetourConfig> {
    let (l1, l2) = (random_line(rng, 5.0), random_line(rng, 5.0));
    let phi0 = rng.random_range(0.0..1.0) * angle_between(l1.dir(), l2.dir());
    if phi0 <= 0.0 {
        return None;
    }
    let p1 = l1.at(rng.random_range(-10.0..10.0));
    let p2 = l2.at(rng.random_range(-10.0..10.0));
    Some(DetourConfig { l1, l2, p1, p2, phi0 })
}

/// Two near-vertical lines, points near their transversal, and a height.
/// Configurations outside the check's preconditions are rejected by the
/// check itself.
pub struct ParallelConfig {
    pub l1: Line<f64>,
    pub l2: Line<f64>,
    pub p1: Point<f64>,
    pub p2: Point<f64>,
    pub level: f64,
}

fn near_vertical_line(rng: &mut impl Rng) -> Line<f64> {
    let through = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), 0.0];
    Line::from_f64(&through, &near_vertical(rng)).unwrap()
}

pub fn parallel_config(rng: &mut impl Rng) -> ParallelConfig {
    let (l1, l2) = (near_vertical_line(rng), near_vertical_line(rng));
    let tr = min_transversal(&l1, &l2);
    let level = rng.random_range(-50.0..50.0);
    let p1 = tr.on_a.add_scaled(l1.dir().unit(), rng.random_range(-3.0..3.0));
    let p2 = tr.on_b.add_scaled(l2.dir().unit(), rng.random_range(-3.0..3.0));
    ParallelConfig { l1, l2, p1, p2, level }
}

/// `n` random lines and one point on each, visited in order as a closed cycle.
pub fn random_cycle(rng: &mut impl Rng, n: usize) -> (Vec<Line<f64>>, Vec<Point<f64>>) {
    let lines: Vec<_> = (0..n).map(|_| random_line(rng, 5.0)).collect();
    let pts = lines.iter().map(|l| l.at(rng.random_range(-5.0..5.0))).collect();
    (lines, pts)
}

pub fn cycle_length(pts: &[Point<f64>]) -> f64 {
    (0..pts.len()).map(|i| pts[i].dist(&pts[(i + 1) % pts.len()])).sum()
}

pub fn random_polygon(rng: &mut impl Rng, max_vertices: usize, d: usize) -> Vec<Point<f64>> {
    let n = rng.random_range(2..=max_vertices);
    (0..n).map(|_| Point::from_f64(&uniform_point(rng, d, -5.0, 5.0))).collect()
}

/// Random tree on up to `max_vertices` points of `[0, side]^d`: each vertex
/// hangs off a uniformly chosen earlier one.
pub fn random_tree(rng: &mut impl Rng, max_vertices: usize, d: usize, side: f64) -> (Vec<Point<f64>>, Vec<(usize, usize)>) {
    let n = rng.random_range(1..=max_vertices);
    let pts = (0..n).map(|_| Point::from_f64(&uniform_point(rng, d, 0.0, side))).collect();
    let edges = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    (pts, edges)
}

/// Offset of a unit ball meeting the unit ball at the origin from above:
/// uniform in the upper half of the radius-2 ball.
pub fn upper_offset(rng: &mut impl Rng) -> Point<f64> {
    loop {
        let q = [rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0), rng.random_range(0.0..=2.0)];
        if q.iter().map(|c| c * c).sum::<f64>() <= 4.0 {
            return Point::from_f64(&q);
        }
    }
}
