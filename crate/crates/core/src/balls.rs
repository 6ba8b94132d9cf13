//! Tours of unit balls in `R^3`: sweep independent set, a point tour of its
//! centers, and a walk through 28 lattice points at every selected ball.

use crate::error::{check_dim, Result, TspnError};
use crate::disks::check_unit;
use crate::geom::{Ball, Point, Tour};
use crate::point_tsp::{center_tour, PointBackend};
use crate::report::RatioBudget;
use crate::scalar::{count, lit, Real};
use crate::sweep::{sweep_independent_set, SweepIndependentSet};

/// Lattice coordinates in units of `a = 1/sqrt 3`: 16 points at height `a`,
/// then 12 at height `3a`.
const LATTICE: [[i8; 3]; 28] = [
    [-3, -3, 1], [-3, -1, 1], [-3, 1, 1], [-3, 3, 1],
    [-1, -3, 1], [-1, -1, 1], [-1, 1, 1], [-1, 3, 1],
    [1, -3, 1], [1, -1, 1], [1, 1, 1], [1, 3, 1],
    [3, -3, 1], [3, -1, 1], [3, 1, 1], [3, 3, 1],
    [-3, -1, 3], [-3, 1, 3],
    [-1, -3, 3], [-1, -1, 3], [-1, 1, 3], [-1, 3, 3],
    [1, -3, 3], [1, -1, 3], [1, 1, 3], [1, 3, 3],
    [3, -1, 3], [3, 1, 3],
];
const PATH_START: [i8; 3] = [-1, -3, 1];
const PATH_END: [i8; 3] = [-1, -3, 3];

/// The 28 lattice points around a unit ball centered at the origin, and a
/// Hamiltonian path through them with all steps of length `2a`.
#[derive(Clone, Debug)]
pub struct GammaSet<T> {
    pub a: T,
    pub points: Vec<Point<T>>,
    /// Indices into `points`, from `(-a,-3a,a)` to `(-a,-3a,3a)`.
    pub path: Vec<usize>,
}

impl<T: Real> GammaSet<T> {
    pub fn lattice(&self) -> &'static [[i8; 3]; 28] {
        &LATTICE
    }

    /// Path points translated to `center`.
    pub fn path_at(&self, center: &Point<T>) -> Vec<Point<T>> {
        self.path.iter().map(|&i| center + &self.points[i]).collect()
    }

    pub fn path_length(&self) -> T {
        self.path.windows(2).map(|w| self.points[w[0]].dist(&self.points[w[1]])).sum()
    }
}

fn lattice_sq_dist(p: [i8; 3], q: [i8; 3]) -> i32 {
    (0..3).map(|k| (p[k] as i32 - q[k] as i32).pow(2)).sum()
}

/// Builds the lattice and finds the path by backtracking over the graph of
/// point pairs at distance `2a` (squared lattice distance 4).
pub fn build_gamma<T: Real>() -> GammaSet<T> {
    let n = LATTICE.len();
    let adj: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).filter(|&j| lattice_sq_dist(LATTICE[i], LATTICE[j]) == 4).collect()).collect();
    let start = LATTICE.iter().position(|&p| p == PATH_START).unwrap();
    let end = LATTICE.iter().position(|&p| p == PATH_END).unwrap();
    let mut path = vec![start];
    let mut used = vec![false; n];
    used[start] = true;
    assert!(extend(&adj, end, &mut path, &mut used), "lattice admits no Hamiltonian path");

    let a = T::one() / lit::<T>(3.0).sqrt();
    let points = LATTICE
        .iter()
        .map(|p| Point::new(p.iter().map(|&c| a * lit(c as f64)).collect()))
        .collect();
    GammaSet { a, points, path }
}

fn extend(adj: &[Vec<usize>], end: usize, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let v = *path.last().unwrap();
    if path.len() == adj.len() {
        return v == end;
    }
    // fewest free neighbors first
    let mut next: Vec<usize> = adj[v].iter().copied().filter(|&w| !used[w]).collect();
    next.sort_by_key(|&w| (adj[w].iter().filter(|&&x| !used[x]).count(), w));
    for w in next {
        if w == end && path.len() + 1 != adj.len() {
            continue;
        }
        used[w] = true;
        path.push(w);
        if extend(adj, end, path, used) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

/// Whether a unit ball centered at `offset` (relative to the ball owning the
/// lattice) contains a lattice point. Requires `|offset| <= 2`, `z >= 0`.
pub fn check_gamma_coverage<T: Real>(gamma: &GammaSet<T>, offset: &Point<T>) -> Result<bool> {
    check_dim(3, offset.dim())?;
    if offset.norm() > lit::<T>(2.0) + lit(1e-12) || offset[2] < T::zero() {
        return Err(TspnError::InvalidInput("offset must satisfy |offset| <= 2 and z >= 0".into()));
    }
    let tol = T::one() + lit(1e-9);
    Ok(gamma.points.iter().any(|p| p.dist(offset) <= tol))
}

/// `18 sqrt 3`: length of the lattice path.
pub fn path_length_exact<T: Real>() -> T {
    lit::<T>(18.0) * lit::<T>(3.0).sqrt()
}

/// `(7 alpha + 54 sqrt 3, 16 alpha + 144 sqrt 3)`, plus one more path length
/// in the additive term for odd `k`.
pub fn balls_budget<T: Real>(alpha: T, odd: bool) -> RatioBudget<T> {
    let base = balls_disjoint_budget(alpha);
    let s3 = lit::<T>(3.0).sqrt();
    let extra = if odd { path_length_exact() } else { T::zero() };
    RatioBudget {
        multiplier: base.multiplier + lit::<T>(54.0) * s3,
        additive: base.additive + lit::<T>(144.0) * s3 + extra,
    }
}

/// `(7 alpha, 16 alpha)`: what the backbone alone would give on pairwise
/// disjoint balls. Reported only; the solver always stitches.
pub fn balls_disjoint_budget<T: Real>(alpha: T) -> RatioBudget<T> {
    RatioBudget { multiplier: lit::<T>(7.0) * alpha, additive: lit::<T>(16.0) * alpha }
}

pub fn balls_lower_bound<T: Real>(k: usize, backbone: T, alpha: T) -> T {
    let kk = count::<T>(k);
    let packing = (kk - lit(8.0)) / lit(3.0);
    let detour = backbone / alpha - lit::<T>(2.0) * kk;
    T::zero().max(packing).max(detour)
}

#[derive(Clone, Debug)]
pub struct BallsTspResult<T> {
    pub tour: Tour<T>,
    pub independent: SweepIndependentSet,
    pub backbone_order: Vec<usize>,
    pub backbone_length: T,
    pub backend: PointBackend,
    pub lower_bound: T,
    pub budget: RatioBudget<T>,
    /// All balls pairwise disjoint.
    pub disjoint: bool,
    /// Odd `k`: the first ball walks the path there and back.
    pub odd_fallback: bool,
}

impl<T: Real> BallsTspResult<T> {
    pub fn k(&self) -> usize {
        self.independent.len()
    }
}

pub fn solve_balls<T: Real>(balls: &[Ball<T>], backend: Option<PointBackend>) -> Result<BallsTspResult<T>> {
    check_unit(balls, 3)?;
    let independent = sweep_independent_set(balls, 2)?;
    let centers: Vec<Point<T>> = independent.selected.iter().map(|&i| balls[i].center().clone()).collect();
    let (order, backend) = center_tour(&centers, backend)?;
    let backbone_order: Vec<usize> = order.iter().map(|&i| independent.selected[i]).collect();
    let backbone: Vec<Point<T>> = order.iter().map(|&i| centers[i].clone()).collect();
    let backbone_length = Tour::new(backbone.clone())?.length();
    let k = backbone.len();
    let disjoint = k == balls.len();
    let odd = k % 2 == 1;
    let alpha = backend.alpha::<T>();

    let tour = stitch(&backbone, &build_gamma())?;
    Ok(BallsTspResult {
        tour,
        independent,
        backbone_order,
        backbone_length,
        backend,
        lower_bound: balls_lower_bound(k, backbone_length, alpha),
        budget: balls_budget(alpha, odd),
        disjoint,
        odd_fallback: odd,
    })
}

/// Backbone segment `i` (1-based) joins the path starts when `i` is odd and
/// the path ends when even; paths alternate direction.
fn stitch<T: Real>(backbone: &[Point<T>], gamma: &GammaSet<T>) -> Result<Tour<T>> {
    let k = backbone.len();
    let mut pts = Vec::with_capacity(k * 28 + 28);
    for (i, c) in backbone.iter().enumerate() {
        let forward = gamma.path_at(c);
        if i == 0 {
            if k % 2 == 1 {
                pts.extend(forward.iter().cloned());
                pts.extend(forward.into_iter().rev());
            } else {
                pts.extend(forward.into_iter().rev());
            }
        } else if i % 2 == 1 {
            pts.extend(forward);
        } else {
            pts.extend(forward.into_iter().rev());
        }
    }
    let mut tour: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for p in pts {
        if tour.last() != Some(&p) {
            tour.push(p);
        }
    }
    Ok(Tour::new(tour)?.dedup())
}
