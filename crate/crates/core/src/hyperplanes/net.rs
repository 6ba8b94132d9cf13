use crate::error::{Result, TspnError};
use crate::geom::Rotation;
use crate::scalar::{count, lit, Real};

/// Frames within this angle of a coordinate axis are nudged off it.
const AXIS_GUARD: f64 = 1e-9;
pub(crate) const NUDGE: f64 = 1e-6;

/// Upper limit on net size for the Givens-grid nets used when d >= 4.
pub const MAX_GRID_NET: usize = 5_000_000;

/// A finite set of box frames such that every frame is within
/// `covering_radius` (rotation angle) of one of them, up to the symmetries of
/// a box.
#[derive(Clone, Debug)]
pub struct OrientationNet<T> {
    dim: usize,
    covering_radius: T,
    eps: T,
    kind: Kind<T>,
    len: usize,
}

#[derive(Clone, Debug)]
enum Kind<T> {
    Planar { step: T, count: usize },
    /// Body-centered cubic lattice in Rodrigues coordinates, clipped to the
    /// cube's fundamental zone.
    Rodrigues(RodriguesLattice<T>),
    /// Product of Givens rotations over all coordinate planes, each angle on a
    /// uniform grid of `per_angle` values.
    Givens { per_angle: usize },
}

impl<T: Real> OrientationNet<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Guaranteed covering radius of the net, in radians of rotation.
    pub fn covering_radius(&self) -> T {
        self.covering_radius
    }

    /// Relative perimeter loss certified by the net: the best net box has
    /// width sum at most `(1 + eps)` times the optimum.
    pub fn eps(&self) -> T {
        self.eps
    }

    pub(crate) fn lattice(&self) -> Option<&RodriguesLattice<T>> {
        match &self.kind {
            Kind::Rodrigues(lat) => Some(lat),
            _ => None,
        }
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = Rotation<T>> + '_> {
        match &self.kind {
            Kind::Planar { step, count } => {
                let step = *step;
                Box::new((0..*count).map(move |k| nudge(Rotation::planar(step * crate::scalar::count(k)))))
            }
            Kind::Rodrigues(lat) => {
                let lat = *lat;
                Box::new(lat.points(0, lat.rho).map(move |c| lat.frame(c)))
            }
            Kind::Givens { per_angle } => {
                let d = self.dim;
                let per = *per_angle;
                let pairs = plane_pairs(d);
                let total = per.pow(pairs.len() as u32);
                Box::new((0..total).map(move |mut idx| {
                    let mut r = Rotation::identity(d);
                    for &(i, j) in &pairs {
                        let a = idx % per;
                        idx /= per;
                        r = r.compose(&Rotation::givens(d, i, j, grid_angle::<T>(a, per)));
                    }
                    nudge(r)
                }))
            }
        }
    }
}

/// Net whose covering radius is at most `eps / (d - 1)`, so the best net box
/// loses at most a factor `1 + eps` in perimeter.
pub fn build_orientation_net<T: Real>(d: usize, eps: T) -> Result<OrientationNet<T>> {
    if !(eps > T::zero() && eps.is_finite()) {
        return Err(TspnError::InvalidInput("eps must be positive".into()));
    }
    let target = eps / count::<T>(d.max(2) - 1);
    match d {
        2 => {
            let n = (T::TAU() / eps).ceil().to_usize().unwrap().max(1);
            let step = T::TAU() / count(n);
            Ok(OrientationNet {
                dim: 2,
                covering_radius: step / lit(2.0) + lit(NUDGE),
                eps,
                kind: Kind::Planar { step, count: n },
                len: n,
            })
        }
        3 => {
            // gnomonic images of S^3 are contracted, and rotation angle is twice
            // the quaternion angle
            let rho = (target - lit(2.0 * NUDGE)) / lit(2.0);
            let lat = RodriguesLattice { unit: rho * lit(2.0) / lit::<T>(5.0).sqrt(), rho };
            let len = lat.points(0, rho).count();
            Ok(OrientationNet { dim: 3, covering_radius: rho * lit(2.0) + lit(NUDGE), eps, kind: Kind::Rodrigues(lat), len })
        }
        4 | 5 => {
            let p = d * (d - 1) / 2;
            // each factor angle is off by at most step / 2
            let step = target * lit(2.0) / count(p);
            let per = (T::TAU() / step).ceil().to_usize().unwrap_or(usize::MAX);
            let len = checked_pow(per, p).filter(|&n| n <= MAX_GRID_NET).ok_or_else(|| {
                TspnError::LimitsExceeded(format!("orientation net for d={d}, eps={eps} exceeds {MAX_GRID_NET} frames"))
            })?;
            Ok(grid_net(d, per, len))
        }
        _ => Err(TspnError::UnsupportedDimension(d)),
    }
}

/// Givens-grid net with at most `max_size` frames and whatever covering radius
/// that affords. The certified `eps` is capped at `d - 1`, which holds for any
/// frame.
pub fn coarse_orientation_net<T: Real>(d: usize, max_size: usize) -> Result<OrientationNet<T>> {
    if !(2..=8).contains(&d) {
        return Err(TspnError::UnsupportedDimension(d));
    }
    let p = d * (d - 1) / 2;
    let mut per = 1usize;
    while checked_pow(per + 1, p).is_some_and(|n| n <= max_size) {
        per += 1;
    }
    Ok(grid_net(d, per, per.pow(p as u32)))
}

fn grid_net<T: Real>(d: usize, per: usize, len: usize) -> OrientationNet<T> {
    let p = d * (d - 1) / 2;
    let step = T::TAU() / count(per);
    let covering_radius = step / lit(2.0) * count(p) + lit(NUDGE);
    let eps = (covering_radius * count(d - 1)).min(count(d - 1));
    OrientationNet { dim: d, covering_radius, eps, kind: Kind::Givens { per_angle: per }, len }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

fn grid_angle<T: Real>(a: usize, per: usize) -> T {
    -T::PI() + (count::<T>(a) + lit(0.5)) * T::TAU() / count(per)
}

fn plane_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
}

/// BCC lattice in Rodrigues space on integer coordinates (in units of `unit`):
/// level `l` holds the points whose coordinates are all `0` or all `2^l`
/// modulo `2^(l+1)`, a BCC lattice of cell side `2^(l+1) unit` with covering
/// radius `2^l rho`. Level 0 is the net.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RodriguesLattice<T> {
    pub(crate) unit: T,
    pub(crate) rho: T,
}

impl<T: Real> RodriguesLattice<T> {
    pub(crate) fn on_level(c: [i64; 3], level: u32) -> bool {
        let m = 1i64 << (level + 1);
        let r = c.map(|x| x.rem_euclid(m));
        r == [0, 0, 0] || r == [m / 2; 3]
    }

    /// Whether `c` lies within `margin` of the fundamental zone.
    pub(crate) fn in_zone(&self, c: [i64; 3], margin: T) -> bool {
        let r = c.map(|x| (T::from_i64(x).unwrap() * self.unit).abs());
        let edge = T::SQRT_2() - T::one() + margin;
        r.iter().all(|&x| x <= edge) && r[0] + r[1] + r[2] <= T::one() + margin * lit::<T>(3.0).sqrt()
    }

    /// Level-`level` points within `margin` of the zone, in a fixed order.
    pub(crate) fn points(self, level: u32, margin: T) -> impl Iterator<Item = [i64; 3]> {
        let step = 1i64 << level;
        let reach = ((T::SQRT_2() - T::one() + margin) / self.unit).floor().to_i64().unwrap();
        let half = reach / (2 * step) + 1;
        (0..2i64).flat_map(move |sub| {
            (-half..=half).flat_map(move |i| {
                (-half..=half).flat_map(move |j| {
                    (-half..=half).filter_map(move |k| {
                        let c = [i, j, k].map(|x| (2 * x + sub) * step);
                        self.in_zone(c, margin).then_some(c)
                    })
                })
            })
        })
    }

    /// Level-`level` point nearest to `c`.
    pub(crate) fn nearest(c: [i64; 3], level: u32) -> [i64; 3] {
        let m = 1i64 << (level + 1);
        let snap = |x: i64, off: i64| ((x - off) as f64 / m as f64).round() as i64 * m + off;
        let a = c.map(|x| snap(x, 0));
        let b = c.map(|x| snap(x, m / 2));
        let d2 = |p: [i64; 3]| (0..3).map(|i| (p[i] - c[i]).pow(2)).sum::<i64>();
        if d2(a) <= d2(b) {
            a
        } else {
            b
        }
    }

    pub(crate) fn dist(&self, a: [i64; 3], b: [i64; 3]) -> T {
        let s: i64 = (0..3).map(|i| (a[i] - b[i]).pow(2)).sum();
        T::from_i64(s).unwrap().sqrt() * self.unit
    }

    pub(crate) fn frame(&self, c: [i64; 3]) -> Rotation<T> {
        let r = c.map(|x| T::from_i64(x).unwrap() * self.unit);
        nudge(Rotation::from_quaternion([T::one(), r[0], r[1], r[2]]))
    }
}

/// Moves frames that have an axis within `AXIS_GUARD` of a coordinate axis.
fn nudge<T: Real>(r: Rotation<T>) -> Rotation<T> {
    if r.min_axis_angle() > lit(AXIS_GUARD) {
        return r;
    }
    let d = r.dim();
    let mut tilt = Rotation::identity(d);
    for (n, (i, j)) in plane_pairs(d).into_iter().enumerate() {
        tilt = tilt.compose(&Rotation::givens(d, i, j, lit::<T>(NUDGE) / count(n + 1)));
    }
    r.compose(&tilt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turn_planar_net() {
        let net = build_orientation_net::<f64>(2, std::f64::consts::FRAC_PI_2).unwrap();
        assert_eq!(net.len(), 4);
        assert_eq!(net.iter().count(), 4);
        assert!(net.covering_radius() <= std::f64::consts::FRAC_PI_4 + 1e-5);
    }

    #[test]
    fn planar_net_count() {
        let net = build_orientation_net::<f64>(2, 0.01).unwrap();
        assert_eq!(net.len(), 629);
    }

    #[test]
    fn frames_avoid_coordinate_axes() {
        for net in [build_orientation_net::<f64>(2, 0.3).unwrap(), build_orientation_net::<f64>(3, 0.4).unwrap()] {
            for r in net.iter() {
                assert!(r.min_axis_angle() > 1e-9);
                assert!(r.is_orthonormal(1e-9));
            }
        }
    }

    #[test]
    fn rodrigues_count_matches_iteration() {
        let net = build_orientation_net::<f64>(3, 0.3).unwrap();
        assert_eq!(net.iter().count(), net.len());
        assert!(net.covering_radius() <= 0.15);
    }

    #[test]
    fn high_dimension_limits() {
        assert!(matches!(build_orientation_net::<f64>(4, 0.5), Err(TspnError::LimitsExceeded(_))));
        assert!(matches!(build_orientation_net::<f64>(6, 0.5), Err(TspnError::UnsupportedDimension(6))));
        let net = coarse_orientation_net::<f64>(4, 5000).unwrap();
        assert!(net.len() <= 5000);
        assert_eq!(net.iter().count(), net.len());
        assert!(net.eps() <= 3.0);
    }
}
