//! Finite cover of the space of line directions in `R^3`.

use crate::error::{Result, TspnError};
use crate::geom::{angle_between, Direction, Point};
use crate::scalar::{lit, Real};

/// Subdivision frequency of the icosahedron faces.
const FREQUENCY: usize = 3;

/// Directions `L_j` such that every direction lies within `pi/12` of one.
#[derive(Clone, Debug)]
pub struct DirectionNet<T> {
    centers: Vec<Direction<T>>,
}

impl<T: Real> DirectionNet<T> {
    pub fn centers(&self) -> &[Direction<T>] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Radius the net covers with.
    pub fn covering_radius() -> T {
        T::PI() / lit(12.0)
    }

    /// Radius of the bundles `L_j`.
    pub fn membership_radius() -> T {
        T::PI() / lit(6.0)
    }

    /// Index of the closest center and the angle to it.
    pub fn nearest(&self, dir: &Direction<T>) -> (usize, T) {
        let mut best = (0, T::infinity());
        for (j, c) in self.centers.iter().enumerate() {
            let a = angle_between(c, dir);
            if a < best.1 {
                best = (j, a);
            }
        }
        best
    }

    /// `dir` belongs to the bundle of center `j`.
    pub fn contains(&self, j: usize, dir: &Direction<T>) -> bool {
        angle_between(&self.centers[j], dir) <= Self::membership_radius() + lit(1e-12)
    }
}

/// Net of 46 directions: vertices of a frequency-3 geodesic icosahedron,
/// one per antipodal pair. Covering radius is about 13.7 degrees.
pub fn build_direction_net<T: Real>(d: usize) -> Result<DirectionNet<T>> {
    if d != 3 {
        return Err(TspnError::UnsupportedDimension(d));
    }
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut ico = Vec::with_capacity(12);
    for &a in &[-1.0, 1.0] {
        for &b in &[-phi, phi] {
            ico.push([0.0, a, b]);
            ico.push([a, b, 0.0]);
            ico.push([b, 0.0, a]);
        }
    }
    let edge = 2.0;
    let adjacent = |p: &[f64; 3], q: &[f64; 3]| {
        let d2: f64 = (0..3).map(|k| (p[k] - q[k]).powi(2)).sum();
        (d2.sqrt() - edge).abs() < 1e-9
    };

    let mut units: Vec<[f64; 3]> = Vec::new();
    for a in 0..12 {
        for b in a + 1..12 {
            for c in b + 1..12 {
                if !(adjacent(&ico[a], &ico[b]) && adjacent(&ico[b], &ico[c]) && adjacent(&ico[a], &ico[c])) {
                    continue;
                }
                for i in 0..=FREQUENCY {
                    for j in 0..=FREQUENCY - i {
                        let k = FREQUENCY - i - j;
                        let mut v = [0.0; 3];
                        for (t, x) in v.iter_mut().enumerate() {
                            *x = (i as f64 * ico[a][t] + j as f64 * ico[b][t] + k as f64 * ico[c][t]) / FREQUENCY as f64;
                        }
                        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                        v.iter_mut().for_each(|x| *x /= n);
                        let seen = units.iter().any(|u| (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]).abs() > 1.0 - 1e-9);
                        if !seen {
                            units.push(v);
                        }
                    }
                }
            }
        }
    }
    let centers = units
        .iter()
        .map(|u| Direction::new(&Point::from_f64(u)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DirectionNet { centers })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn net_has_one_center_per_antipodal_pair() {
        let net = build_direction_net::<f64>(3).unwrap();
        assert_eq!(net.len(), 46);
        for (i, a) in net.centers().iter().enumerate() {
            for b in &net.centers()[i + 1..] {
                assert!(angle_between(a, b) > 0.1);
            }
        }
        assert!(build_direction_net::<f64>(2).is_err());
    }
}
