//! Tours for hyperplanes: the best minimum-perimeter box over an orientation
//! net, toured through its vertices along a Gray code.

mod net;

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use net::{build_orientation_net, coarse_orientation_net, OrientationNet, MAX_GRID_NET};
use net::RodriguesLattice;

use crate::error::{check_dim, Result, TspnError};
use crate::geom::{gray_code_box_tour, Hyperplane, OrientedBox, Point, Rotation, Tour};
use crate::lp::{DualSimplex, Seidel};
use crate::scalar::{count, lit, Real};

#[derive(Clone, Debug)]
pub struct HyperplaneTspResult<T> {
    pub tour: Tour<T>,
    pub best_box: OrientedBox<T>,
    /// Certified lower bound on the optimal tour length.
    pub lower_bound: T,
    /// `tour length <= ratio_budget * lower_bound`.
    pub ratio_budget: T,
    /// Perimeter slack certified by the net used.
    pub eps: T,
    pub net_size: usize,
}

/// `(1 + eps) (d + 1) / sqrt(d) * 2^(d - 3)` for `d >= 3`. In the plane the
/// tour is the whole rectangle boundary `2 (w_1 + w_2)`, so the budget there is
/// `(1 + eps) sqrt(2)`.
pub fn ratio_budget<T: Real>(d: usize, eps: T) -> T {
    if d <= 2 {
        return (T::one() + eps) * T::SQRT_2();
    }
    let d_t = count::<T>(d);
    (T::one() + eps) * (d_t + T::one()) / d_t.sqrt() * lit::<T>(2.0).powi(d as i32 - 3)
}

/// Any closed curve meeting every plane of an instance whose best net box has
/// width sum `width_sum` is at least this long.
pub fn lower_bound_from_width_sum<T: Real>(d: usize, width_sum: T, eps: T) -> T {
    lit::<T>(2.0) / count::<T>(d).sqrt() * width_sum / (T::one() + eps)
}

/// Minimum-perimeter box with edges along `frame` meeting every plane.
pub fn min_perimeter_box<T: Real>(planes: &[Hyperplane<T>], frame: &Rotation<T>, seed: u64) -> Result<OrientedBox<T>> {
    let mut lp = BoxLp::new(planes, seed)?;
    check_dim(lp.d, frame.dim())?;
    lp.solve(frame);
    Ok(lp.current_box(frame))
}

/// Best box over `net`. Ties go to the earlier net frame.
pub fn best_box_over_net<T: Real>(
    planes: &[Hyperplane<T>],
    net: &OrientationNet<T>,
    seed: u64,
) -> Result<(OrientedBox<T>, usize)> {
    let mut lp = BoxLp::new(planes, seed)?;
    check_dim(lp.d, net.dim())?;
    if let Some(lat) = net.lattice() {
        let (frame, x, evaluated) = best_on_lattice(&mut lp, lat);
        lp.x = x;
        return Ok((lp.current_box(&frame), evaluated));
    }
    let mut best: Option<(T, Rotation<T>, Vec<T>)> = None;
    for frame in net.iter() {
        let value = lp.solve(&frame);
        if best.as_ref().is_none_or(|b| value < b.0) {
            best = Some((value, frame, lp.x.clone()));
        }
    }
    let (_, frame, x) = best.ok_or_else(|| TspnError::InvalidInput("empty orientation net".into()))?;
    lp.x = x;
    Ok((lp.current_box(&frame), net.len()))
}

/// Exact minimum over the level-0 lattice by coarse-to-fine pruning.
///
/// Frames `theta` apart (rotation angle) have optimal width sums within a
/// factor `1 + (d - 1) theta` of each other, so a point whose nearest coarser
/// point has value `W` is skipped when `W / (1 + 2 theta)` already exceeds the
/// best value found. Returns the best frame, its LP point and the number of
/// LPs solved.
fn best_on_lattice<T: Real>(lp: &mut BoxLp<T>, lat: &RodriguesLattice<T>) -> (Rotation<T>, Vec<T>, usize) {
    let top = {
        let mut l = 0u32;
        while lat.points(l, lat.rho).count() > 512 {
            l += 1;
        }
        l
    };
    // level l keeps points within rho (2^(l+1) - 1) of the zone, so the nearest
    // level l + 1 point of any kept level l point is itself kept
    let margin = |l: u32| lat.rho * T::from_i64((1i64 << (l + 1)) - 1).unwrap();
    // value (or pruning bound) and optimal basis of coarser points
    let mut known: HashMap<[i64; 3], (T, Option<Vec<usize>>)> = HashMap::new();
    let mut best: Option<(T, (i64, [i64; 3]), Rotation<T>, Vec<T>)> = None;
    let mut evaluated = 0;
    let two = lit::<T>(2.0);

    for level in (0..=top).rev() {
        for c in lat.points(level, margin(level)) {
            if level < top && RodriguesLattice::<T>::on_level(c, level + 1) {
                continue;
            }
            if level < top {
                let parent = RodriguesLattice::<T>::nearest(c, level + 1);
                let (pv, basis) = &known[&parent];
                let theta = two * lat.dist(c, parent) + lit(2.0 * net::NUDGE);
                let bound = *pv / (T::one() + two * theta);
                if best.as_ref().is_some_and(|b| bound > b.0) {
                    if level > 0 {
                        known.insert(c, (bound, basis.clone()));
                    }
                    continue;
                }
                if let Some(basis) = basis {
                    lp.warm.copy_from_slice(basis);
                }
            }
            let frame = lat.frame(c);
            let value = lp.solve(&frame);
            evaluated += 1;
            if level > 0 {
                known.insert(c, (value, Some(lp.warm.clone())));
            }
            if lat.in_zone(c, lat.rho) {
                // net order: sublattice, then coordinates
                let key = (c[0].rem_euclid(2), c);
                if best.as_ref().is_none_or(|b| value < b.0 || (value == b.0 && key < b.1)) {
                    best = Some((value, key, frame, lp.x.clone()));
                }
            }
        }
    }
    let (_, _, frame, x) = best.expect("zone contains lattice points");
    (frame, x, evaluated)
}

pub fn solve_hyperplanes<T: Real>(planes: &[Hyperplane<T>], eps: T, seed: u64) -> Result<HyperplaneTspResult<T>> {
    let d = planes.first().ok_or_else(|| TspnError::InvalidInput("no hyperplanes".into()))?.dim();
    let net = build_orientation_net(d, eps)?;
    solve_hyperplanes_with_net(planes, &net, seed)
}

pub fn solve_hyperplanes_with_net<T: Real>(
    planes: &[Hyperplane<T>],
    net: &OrientationNet<T>,
    seed: u64,
) -> Result<HyperplaneTspResult<T>> {
    let (best_box, _) = best_box_over_net(planes, net, seed)?;
    let d = best_box.dim();
    let eps = net.eps();
    Ok(HyperplaneTspResult {
        tour: gray_code_box_tour(&best_box),
        lower_bound: lower_bound_from_width_sum(d, best_box.width_sum(), eps),
        ratio_budget: ratio_budget(d, eps),
        best_box,
        eps,
        net_size: net.len(),
    })
}

/// Lower bound on any closed curve meeting all `planes`.
pub fn box_lower_bound<T: Real>(planes: &[Hyperplane<T>], eps: T, seed: u64) -> Result<T> {
    let d = planes.first().ok_or_else(|| TspnError::InvalidInput("no hyperplanes".into()))?.dim();
    let net = build_orientation_net(d, eps)?;
    let (b, _) = best_box_over_net(planes, &net, seed)?;
    Ok(lower_bound_from_width_sum(d, b.width_sum(), net.eps()))
}

/// Width sum of the smallest box with edges along `frame` containing `points`.
pub fn enclosing_width_sum<T: Real>(points: &[Point<T>], frame: &Rotation<T>) -> T {
    let d = frame.dim();
    let mut lo = vec![T::infinity(); d];
    let mut hi = vec![T::neg_infinity(); d];
    let mut local = vec![T::zero(); d];
    for p in points {
        frame.apply_transpose_into(p.coords(), &mut local);
        for j in 0..d {
            lo[j] = lo[j].min(local[j]);
            hi[j] = hi[j].max(local[j]);
        }
    }
    (0..d).map(|j| hi[j] - lo[j]).sum()
}

/// Smallest enclosing width sum over the frames of `net`.
pub fn min_enclosing_width_sum<T: Real>(points: &[Point<T>], net: &OrientationNet<T>) -> T {
    net.iter().map(|f| enclosing_width_sum(points, &f)).fold(T::infinity(), T::min)
}

/// LP over `(x_1, y_1, ..., x_d, y_d)` for one frame at a time. A dual
/// simplex restarts from the previous optimal basis; Seidel's algorithm is the
/// fallback.
struct BoxLp<T> {
    d: usize,
    normals: Vec<T>,
    offsets: Vec<T>,
    simplex: DualSimplex<T>,
    seidel: Seidel<T>,
    rows: Vec<T>,
    perm: Vec<usize>,
    warm: Vec<usize>,
    last: Vec<usize>,
    cold: Vec<usize>,
    obj: Vec<T>,
    x: Vec<T>,
    big: T,
}

/// Dual simplex pivots allowed before falling back to Seidel.
const MAX_PIVOTS: usize = 200;

impl<T: Real> BoxLp<T> {
    fn new(planes: &[Hyperplane<T>], seed: u64) -> Result<Self> {
        let d = planes.first().ok_or_else(|| TspnError::InvalidInput("no hyperplanes".into()))?.dim();
        let mut normals = Vec::with_capacity(planes.len() * d);
        let mut offsets = Vec::with_capacity(planes.len());
        for p in planes {
            check_dim(d, p.dim())?;
            normals.extend_from_slice(p.normal().coords());
            offsets.push(p.offset());
        }
        // two rows per plane, x_j <= y_j, then x_j <= big and -y_j <= big
        let n = planes.len();
        let m = 2 * n + 3 * d;
        let mut perm: Vec<usize> = (0..2 * n + d).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let obj = (0..2 * d).map(|v| if v % 2 == 0 { -T::one() } else { T::one() }).collect();
        let scale = offsets.iter().fold(T::one(), |acc, c| acc.max(c.abs()));
        let big = scale * lit(1e6);
        let stride = 2 * d + 1;
        let mut rows = vec![T::zero(); m * stride];
        for v in 0..2 * d {
            let row = &mut rows[(2 * n + d + v) * stride..(2 * n + d + v + 1) * stride];
            row[v] = if v % 2 == 0 { T::one() } else { -T::one() };
            row[2 * d] = big;
        }
        let cold: Vec<usize> = (2 * n + d..m).collect();
        Ok(BoxLp {
            d,
            normals,
            offsets,
            simplex: DualSimplex::new(2 * d),
            seidel: Seidel::new(2 * d),
            rows,
            perm,
            warm: cold.clone(),
            last: cold.clone(),
            cold,
            obj,
            x: vec![T::zero(); 2 * d],
            big,
        })
    }

    fn build_rows(&mut self, frame: &Rotation<T>) {
        let d = self.d;
        let stride = 2 * d + 1;
        let n = self.offsets.len();
        let mut u = vec![T::zero(); d];
        for p in 0..n {
            frame.apply_transpose_into(&self.normals[p * d..(p + 1) * d], &mut u);
            let c = self.offsets[p];
            let (lo_row, rest) = self.rows[2 * p * stride..].split_at_mut(stride);
            let hi_row = &mut rest[..stride];
            // lowest box point along u is at or below the plane, highest at or above
            for j in 0..d {
                let (at_lo, at_hi) = if u[j] >= T::zero() { (2 * j, 2 * j + 1) } else { (2 * j + 1, 2 * j) };
                lo_row[at_lo] = u[j];
                lo_row[at_hi] = T::zero();
                hi_row[at_hi] = -u[j];
                hi_row[at_lo] = T::zero();
            }
            lo_row[2 * d] = c;
            hi_row[2 * d] = -c;
        }
        for j in 0..d {
            let row = &mut self.rows[(2 * n + j) * stride..(2 * n + j + 1) * stride];
            row.fill(T::zero());
            row[2 * j] = T::one();
            row[2 * j + 1] = -T::one();
        }
    }

    /// Minimum width sum for `frame`; the optimum is left in `self.x`.
    fn solve(&mut self, frame: &Rotation<T>) -> T {
        self.build_rows(frame);
        let solved = self.simplex.solve(&self.rows, &self.obj, &self.warm, MAX_PIVOTS)
            || (self.last != self.warm && self.simplex.solve(&self.rows, &self.obj, &self.last, MAX_PIVOTS))
            || self.simplex.solve(&self.rows, &self.obj, &self.cold, MAX_PIVOTS);
        if solved {
            self.x.copy_from_slice(self.simplex.x());
            self.warm.copy_from_slice(self.simplex.basis());
        } else {
            let feasible = self.seidel.solve(&self.rows, &self.perm, &self.obj, self.big, &mut self.x);
            debug_assert!(feasible, "box LP is always feasible");
            self.warm.copy_from_slice(&self.cold);
        }
        self.last.copy_from_slice(&self.warm);
        (0..self.d).map(|j| self.x[2 * j + 1] - self.x[2 * j]).sum()
    }

    fn current_box(&self, frame: &Rotation<T>) -> OrientedBox<T> {
        let mut lo = Vec::with_capacity(self.d);
        let mut hi = Vec::with_capacity(self.d);
        for j in 0..self.d {
            let (a, b) = (self.x[2 * j], self.x[2 * j + 1]);
            if a <= b {
                lo.push(a);
                hi.push(b);
            } else {
                let mid = (a + b) / lit(2.0);
                lo.push(mid);
                hi.push(mid);
            }
        }
        OrientedBox::new(frame.clone(), lo, hi).expect("intervals ordered")
    }
}
