//! Tours of unit disks: sweep independent set, a point tour of its centers,
//! and a short detour curve at every selected disk.

use crate::error::{check_dim, Result, TspnError};
use crate::geom::{Ball, OpenPath, Point, Tour};
use crate::point_tsp::{center_tour, PointBackend};
use crate::report::RatioBudget;
use crate::scalar::{count, lit, Real};
use crate::sweep::{sweep_independent_set, SweepIndependentSet};

/// Largest distance between the arc and its polyline.
pub const ARC_SAGITTA: f64 = 5e-8;

/// `2 (pi/6 + sqrt 3 - 1)`.
pub fn gamma_length<T: Real>() -> T {
    lit::<T>(2.0) * (T::PI() / lit(6.0) + lit::<T>(3.0).sqrt() - T::one())
}

/// `4 - sqrt 3`.
pub fn chord_length<T: Real>() -> T {
    lit::<T>(4.0) - lit::<T>(3.0).sqrt()
}

/// Rounded constants used in the length accounting.
pub const GAMMA_LENGTH_BOUND: f64 = 2.512;
pub const CHORD_LENGTH_BOUND: f64 = 2.268;

/// Detour at a selected disk: tangent from below, the arc over angles
/// `[-pi/6, pi/6]`, tangent upward, with one unit trimmed at each end.
#[derive(Clone, Debug)]
pub struct GammaCurve<T> {
    pub center: Point<T>,
    /// From `p_low` to `p_high`.
    pub path: OpenPath<T>,
    pub p_low: Point<T>,
    pub p_high: Point<T>,
}

pub fn gamma_curve<T: Real>(center: &Point<T>) -> Result<GammaCurve<T>> {
    check_dim(2, center.dim())?;
    let half = lit::<T>(0.5);
    let s3 = lit::<T>(3.0).sqrt() * half;
    let (cx, cy) = (center[0], center[1]);
    let two = lit::<T>(2.0);
    let p_low = Point::new(vec![cx + half, cy - two + s3]);
    let p_high = Point::new(vec![cx + half, cy + two - s3]);

    let sixth = T::PI() / lit(6.0);
    let step = lit::<T>(2.0) * (T::one() - lit(ARC_SAGITTA)).acos();
    let m = ((sixth + sixth) / step).ceil().to_usize().unwrap().max(1);
    let mut pts = Vec::with_capacity(m + 3);
    pts.push(p_low.clone());
    for i in 0..=m {
        let a = -sixth + (sixth + sixth) * count::<T>(i) / count::<T>(m);
        pts.push(Point::new(vec![cx + a.cos(), cy + a.sin()]));
    }
    pts.push(p_high.clone());
    Ok(GammaCurve { center: center.clone(), path: OpenPath::new(pts)?, p_low, p_high })
}

/// Lower bound on a disk tour from a tour of `n` centers: `2 n r`.
pub fn center_detour_bound<T: Real>(n: usize, r: T) -> T {
    lit::<T>(2.0) * count::<T>(n) * r
}

#[derive(Clone, Debug)]
pub struct DisksTspResult<T> {
    pub tour: Tour<T>,
    pub independent: SweepIndependentSet,
    /// Selected disk indices in backbone order.
    pub backbone_order: Vec<usize>,
    pub backbone_length: T,
    pub backend: PointBackend,
    pub lower_bound: T,
    pub budget: RatioBudget<T>,
    /// At least two disks, pairwise disjoint; the tour is the backbone itself.
    pub disjoint: bool,
}

impl<T: Real> DisksTspResult<T> {
    pub fn k(&self) -> usize {
        self.independent.len()
    }
}

pub(crate) fn check_unit<T: Real>(balls: &[Ball<T>], dim: usize) -> Result<()> {
    if balls.is_empty() {
        return Err(TspnError::InvalidInput("no neighborhoods".into()));
    }
    for b in balls {
        check_dim(dim, b.dim())?;
        if (b.radius() - T::one()).abs() > lit(1e-9) {
            return Err(TspnError::UnequalRadii);
        }
    }
    Ok(())
}

/// `(alpha (1 + 8/pi) + 2.512 * 4/pi, 8 alpha + 4 * 2.512 + 2.268)`, or
/// `(alpha (1 + 8/pi), 8 alpha)` for pairwise disjoint disks.
pub fn disks_budget<T: Real>(alpha: T, disjoint: bool) -> RatioBudget<T> {
    let four_pi = lit::<T>(4.0) / T::PI();
    let g = lit::<T>(GAMMA_LENGTH_BOUND);
    let base = RatioBudget { multiplier: alpha * (T::one() + four_pi + four_pi), additive: lit::<T>(8.0) * alpha };
    if disjoint {
        base
    } else {
        RatioBudget {
            multiplier: base.multiplier + g * four_pi,
            additive: base.additive + lit::<T>(4.0) * g + lit(CHORD_LENGTH_BOUND),
        }
    }
}

/// Lower bound on the optimum from `k` disjoint selected disks and a point
/// tour of their centers of length `backbone` built with factor `alpha`.
pub fn disks_lower_bound<T: Real>(k: usize, backbone: T, alpha: T) -> T {
    let kk = count::<T>(k);
    let packing = T::PI() / lit(4.0) * (kk - lit(4.0));
    let detour = backbone / alpha - center_detour_bound(k, T::one());
    T::zero().max(packing).max(detour)
}

pub fn solve_disks<T: Real>(disks: &[Ball<T>], backend: Option<PointBackend>) -> Result<DisksTspResult<T>> {
    check_unit(disks, 2)?;
    let independent = sweep_independent_set(disks, 0)?;
    let centers: Vec<Point<T>> = independent.selected.iter().map(|&i| disks[i].center().clone()).collect();
    let (order, backend) = center_tour(&centers, backend)?;
    let backbone_order: Vec<usize> = order.iter().map(|&i| independent.selected[i]).collect();
    let backbone: Vec<Point<T>> = order.iter().map(|&i| centers[i].clone()).collect();
    let backbone_length = Tour::new(backbone.clone())?.length();
    let k = backbone.len();
    let disjoint = k == disks.len() && k >= 2;
    let alpha = backend.alpha::<T>();

    let tour = if disjoint { Tour::new(backbone)? } else { stitch(&backbone)? };
    Ok(DisksTspResult {
        tour,
        independent,
        backbone_order,
        backbone_length,
        backend,
        lower_bound: disks_lower_bound(k, backbone_length, alpha),
        budget: disks_budget(alpha, disjoint),
        disjoint,
    })
}

/// Backbone segment `i` (1-based) is shifted to the high endpoints when `i`
/// is odd and to the low endpoints when even; curves are walked up and down
/// alternately. For odd `k` the first curve closes with the vertical chord.
fn stitch<T: Real>(backbone: &[Point<T>]) -> Result<Tour<T>> {
    let k = backbone.len();
    let curves = backbone.iter().map(gamma_curve).collect::<Result<Vec<_>>>()?;
    let up = |c: &GammaCurve<T>| c.path.vertices().to_vec();
    let down = |c: &GammaCurve<T>| c.path.reversed().vertices().to_vec();
    let mut pts = Vec::new();
    if k % 2 == 1 {
        // down the curve, back up the chord to p_high
        pts.extend(down(&curves[0]));
        pts.push(curves[0].p_high.clone());
    } else {
        // arrive low from the closing even segment
        pts.extend(up(&curves[0]));
    }
    for (i, c) in curves.iter().enumerate().skip(1) {
        // segment i (1-based) ends at curve i+1 (1-based)
        if i % 2 == 1 {
            pts.extend(down(c));
        } else {
            pts.extend(up(c));
        }
    }
    Ok(Tour::new(pts)?.dedup())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_endpoints_and_lengths() {
        let g = gamma_curve(&Point::<f64>::from_f64(&[0.0, 0.0])).unwrap();
        let s = 3f64.sqrt();
        assert!(g.p_low.dist(&Point::from_f64(&[0.5, -2.0 + s / 2.0])) < 1e-15);
        assert!((g.p_high.dist(&g.p_low) - chord_length::<f64>()).abs() < 1e-9);
        assert!((g.path.length() - gamma_length::<f64>()).abs() < 1e-6);
        assert!(gamma_length::<f64>() <= GAMMA_LENGTH_BOUND && chord_length::<f64>() <= CHORD_LENGTH_BOUND);
    }

    #[test]
    fn budget_constants() {
        let b = disks_budget(1.001f64, false);
        assert!(b.multiplier <= 6.75 && b.additive <= 20.4);
        // 1 + 8/pi = 3.5465, so 3.55 needs alpha <= 1.0009
        let b = disks_budget(1.0009f64, true);
        assert!(b.multiplier <= 3.55 && b.additive <= 8.01);
    }
}
