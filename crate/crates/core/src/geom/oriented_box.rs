use std::cmp::Ordering;

use num_traits::Num;

use crate::error::{Result, TspnError};
use crate::geom::point::Point;
use crate::geom::rotation::Rotation;
use crate::geom::tour::Tour;
use crate::scalar::Real;

/// A box `[lo_1, hi_1] x ... x [lo_d, hi_d]` expressed in a rotated frame.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedBox<T> {
    frame: Rotation<T>,
    lo: Vec<T>,
    hi: Vec<T>,
}

impl<T: Real> OrientedBox<T> {
    pub fn new(frame: Rotation<T>, lo: Vec<T>, hi: Vec<T>) -> Result<Self> {
        let d = frame.dim();
        crate::error::check_dim(d, lo.len())?;
        crate::error::check_dim(d, hi.len())?;
        if lo.iter().zip(&hi).any(|(l, h)| !(l <= h)) {
            return Err(TspnError::InvalidInput("box interval with lo > hi".into()));
        }
        Ok(OrientedBox { frame, lo, hi })
    }

    pub fn frame(&self) -> &Rotation<T> {
        &self.frame
    }

    pub fn lo(&self) -> &[T] {
        &self.lo
    }

    pub fn hi(&self) -> &[T] {
        &self.hi
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn widths(&self) -> Vec<T> {
        self.lo.iter().zip(&self.hi).map(|(&l, &h)| h - l).collect()
    }

    /// Sum of the edge extents `w_1 + ... + w_d`.
    pub fn width_sum(&self) -> T {
        self.widths().into_iter().sum()
    }

    /// Total edge length `2^{d-1} (w_1 + ... + w_d)`.
    pub fn perimeter(&self) -> T {
        let copies = T::from_u64(1u64 << (self.dim() - 1)).unwrap();
        copies * self.width_sum()
    }

    /// World position of the vertex selecting `hi` on the axes whose bit is set in `mask`.
    pub fn vertex(&self, mask: usize) -> Point<T> {
        let local: Vec<T> =
            (0..self.dim()).map(|j| if mask >> j & 1 == 1 { self.hi[j] } else { self.lo[j] }).collect();
        self.frame.apply(&local)
    }

    /// Whether the box meets `{x : n . x = c}` (within `tol`).
    pub fn meets_plane(&self, normal: &Point<T>, offset: T, tol: T) -> bool {
        let local = self.frame.apply_transpose(normal.coords());
        let (mut min, mut max) = (T::zero(), T::zero());
        for j in 0..self.dim() {
            let (a, b) = (local[j] * self.lo[j], local[j] * self.hi[j]);
            min = min + a.min(b);
            max = max + a.max(b);
        }
        min - tol <= offset && offset <= max + tol
    }
}

/// Flip order of the reflected Gray code on `d` bits, closing flip included.
///
/// Entry `i` is the bit that changes between codes `i` and `i + 1 (mod 2^d)`.
pub fn gray_flip_sequence(d: usize) -> Vec<usize> {
    let n = 1usize << d;
    (1..=n).map(|i| if i == n { d - 1 } else { i.trailing_zeros() as usize }).collect()
}

/// Axes ordered by ascending width (ties by axis index): entry `b` is the axis
/// driven by Gray-code bit `b`, so the narrowest axis flips most often.
pub fn axes_by_width<N: PartialOrd + Copy>(widths: &[N]) -> Vec<usize> {
    let mut axes: Vec<usize> = (0..widths.len()).collect();
    axes.sort_by(|&a, &b| widths[a].partial_cmp(&widths[b]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
    axes
}

/// Length of the Gray-code vertex cycle of an axis-parallel box, summed flip by flip.
///
/// Works in any numeric field, so rational widths give an exact value.
pub fn gray_code_tour_length<N: Num + Copy + PartialOrd>(widths: &[N]) -> N {
    if widths.is_empty() {
        return N::zero();
    }
    let axes = axes_by_width(widths);
    gray_flip_sequence(widths.len()).into_iter().fold(N::zero(), |acc, bit| acc + widths[axes[bit]])
}

/// Hamiltonian cycle through the `2^d` box vertices following the reflected Gray
/// code, narrowest axis on the most frequently flipped bit. Repeated vertices of
/// zero-width boxes are collapsed.
pub fn gray_code_box_tour<T: Real>(b: &OrientedBox<T>) -> Tour<T> {
    let d = b.dim();
    let axes = axes_by_width(&b.widths());
    let mut mask = 0usize;
    let mut vertices = Vec::with_capacity(1 << d);
    for bit in gray_flip_sequence(d) {
        vertices.push(b.vertex(mask));
        mask ^= 1 << axes[bit];
    }
    debug_assert_eq!(mask, 0);
    Tour::new(vertices).expect("box vertices are finite").dedup()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn axis_box(widths: &[f64]) -> OrientedBox<f64> {
        OrientedBox::new(Rotation::identity(widths.len()), vec![0.0; widths.len()], widths.to_vec()).unwrap()
    }

    #[test]
    fn rectangle_cycle_is_perimeter() {
        let t = gray_code_box_tour(&axis_box(&[1.0, 2.0]));
        assert_eq!(t.len(), 4);
        assert!((t.length() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn three_d_cycle_length() {
        let t = gray_code_box_tour(&axis_box(&[1.0, 2.0, 3.0]));
        assert_eq!(t.len(), 8);
        assert!((t.length() - 14.0).abs() < 1e-12);
        // axis order does not matter
        let t = gray_code_box_tour(&axis_box(&[3.0, 1.0, 2.0]));
        assert!((t.length() - 14.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_box_is_single_point() {
        let t = gray_code_box_tour(&axis_box(&[0.0, 0.0, 0.0]));
        assert_eq!(t.len(), 1);
        assert_eq!(t.length(), 0.0);
    }

    #[test]
    fn flat_box_collapses_duplicates() {
        let t = gray_code_box_tour(&axis_box(&[5.0, 0.0, 0.0]));
        assert_eq!(t.len(), 2);
        assert!((t.length() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn cycle_visits_every_vertex_once() {
        for d in 1..=6 {
            let widths: Vec<f64> = (0..d).map(|j| 1.0 + j as f64).collect();
            let t = gray_code_box_tour(&axis_box(&widths));
            assert_eq!(t.len(), 1 << d);
            let mut seen: Vec<Vec<f64>> = t.vertices().iter().map(|v| v.coords().to_vec()).collect();
            seen.sort_by(|a, b| a.partial_cmp(b).unwrap());
            seen.dedup();
            assert_eq!(seen.len(), 1 << d);
        }
    }

    #[test]
    fn exact_length_matches_closed_form() {
        // tau = w_d + sum_j 2^{d-j} w_j over ascending widths
        let r = |n, d| Rational64::new(n, d);
        for widths in [
            vec![r(1, 3), r(7, 2), r(5, 4)],
            vec![r(2, 1), r(2, 1), r(1, 7), r(9, 5)],
            vec![r(0, 1), r(3, 2)],
            vec![r(1, 2), r(1, 3), r(1, 5), r(1, 7), r(1, 11)],
        ] {
            let d = widths.len();
            let mut sorted = widths.clone();
            sorted.sort();
            let mut tau = sorted[d - 1];
            for (j, w) in sorted.iter().enumerate() {
                tau += *w * Rational64::from_integer(1 << (d - 1 - j));
            }
            assert_eq!(gray_code_tour_length(&widths), tau);
        }
    }

    #[test]
    fn rotated_box_tour_length_is_frame_independent() {
        let frame = Rotation::<f64>::from_quaternion([0.9, 0.1, -0.3, 0.2]);
        let b = OrientedBox::new(frame, vec![-1.0, 0.5, 2.0], vec![0.0, 2.5, 5.0]).unwrap();
        let t = gray_code_box_tour(&b);
        assert!((t.length() - gray_code_tour_length(&b.widths())).abs() < 1e-12);
    }

    #[test]
    fn meets_plane_detects_separation() {
        let b = axis_box(&[1.0, 1.0, 1.0]);
        let n = Point::from_f64(&[1.0, 1.0, 1.0]);
        assert!(b.meets_plane(&n, 1.5, 0.0));
        assert!(b.meets_plane(&n, 3.0, 0.0));
        assert!(!b.meets_plane(&n, 3.1, 0.0));
    }
}
