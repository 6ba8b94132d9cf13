use crate::error::{Result, TspnError};
use crate::geom::point::Point;
use crate::scalar::{lit, Real};

/// A proper rotation of `R^d`, stored row-major.
///
/// Its columns are the axes of a rotated frame: a point with local frame
/// coordinates `l` sits at world position `R l`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rotation<T> {
    dim: usize,
    m: Vec<T>,
}

impl<T: Real> Rotation<T> {
    pub fn identity(dim: usize) -> Self {
        let mut m = vec![T::zero(); dim * dim];
        for i in 0..dim {
            m[i * dim + i] = T::one();
        }
        Rotation { dim, m }
    }

    /// Validates orthonormality (1e-9) and a positive determinant.
    pub fn from_rows(dim: usize, m: Vec<T>) -> Result<Self> {
        if m.len() != dim * dim {
            return Err(TspnError::InvalidInput("rotation matrix has wrong size".into()));
        }
        let r = Rotation { dim, m };
        if !r.is_orthonormal(lit(1e-9)) || r.determinant() < T::zero() {
            return Err(TspnError::InvalidInput("matrix is not a proper rotation".into()));
        }
        Ok(r)
    }

    pub fn planar(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Rotation { dim: 2, m: vec![c, -s, s, c] }
    }

    /// Rotation in the `(i, j)` coordinate plane by `theta`.
    pub fn givens(dim: usize, i: usize, j: usize, theta: T) -> Self {
        let mut r = Self::identity(dim);
        let (s, c) = theta.sin_cos();
        r.m[i * dim + i] = c;
        r.m[j * dim + j] = c;
        r.m[i * dim + j] = -s;
        r.m[j * dim + i] = s;
        r
    }

    /// Rotation of `R^3` from a (not necessarily unit) quaternion `w + xi + yj + zk`.
    pub fn from_quaternion(q: [T; 4]) -> Self {
        let n = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
        let [w, x, y, z] = q.map(|c| c / n);
        let two = lit::<T>(2.0);
        let one = T::one();
        Rotation {
            dim: 3,
            m: vec![
                one - two * (y * y + z * z),
                two * (x * y - w * z),
                two * (x * z + w * y),
                two * (x * y + w * z),
                one - two * (x * x + z * z),
                two * (y * z - w * x),
                two * (x * z - w * y),
                two * (y * z + w * x),
                one - two * (x * x + y * y),
            ],
        }
    }

    /// Rotation by `angle` about the (normalized) 3-D `axis`.
    pub fn axis_angle(axis: [T; 3], angle: T) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let (s, c) = (angle / lit(2.0)).sin_cos();
        Self::from_quaternion([c, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.m[row * self.dim + col]
    }

    pub fn rows(&self) -> &[T] {
        &self.m
    }

    /// Frame axis `j` (column `j`) in world coordinates.
    pub fn axis(&self, j: usize) -> Point<T> {
        Point::new((0..self.dim).map(|i| self.get(i, j)).collect())
    }

    /// World coordinates of local vector `v`: `R v`.
    pub fn apply(&self, v: &[T]) -> Point<T> {
        let mut out = vec![T::zero(); self.dim];
        self.apply_into(v, &mut out);
        Point::new(out)
    }

    #[inline]
    pub fn apply_into(&self, v: &[T], out: &mut [T]) {
        let d = self.dim;
        for (i, o) in out.iter_mut().enumerate().take(d) {
            let row = &self.m[i * d..(i + 1) * d];
            *o = row.iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
        }
    }

    /// Local coordinates of world vector `v`: `R^T v`.
    #[inline]
    pub fn apply_transpose_into(&self, v: &[T], out: &mut [T]) {
        let d = self.dim;
        for (j, o) in out.iter_mut().enumerate().take(d) {
            let mut acc = T::zero();
            for (i, &vi) in v.iter().enumerate().take(d) {
                acc = acc + self.m[i * d + j] * vi;
            }
            *o = acc;
        }
    }

    pub fn apply_transpose(&self, v: &[T]) -> Point<T> {
        let mut out = vec![T::zero(); self.dim];
        self.apply_transpose_into(v, &mut out);
        Point::new(out)
    }

    /// `self * other`
    pub fn compose(&self, other: &Rotation<T>) -> Rotation<T> {
        let d = self.dim;
        let mut m = vec![T::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = T::zero();
                for k in 0..d {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                m[i * d + j] = acc;
            }
        }
        Rotation { dim: d, m }
    }

    pub fn transpose(&self) -> Rotation<T> {
        let d = self.dim;
        let mut m = vec![T::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                m[j * d + i] = self.get(i, j);
            }
        }
        Rotation { dim: d, m }
    }

    pub fn is_orthonormal(&self, tol: T) -> bool {
        let d = self.dim;
        (0..d).all(|a| {
            (0..d).all(|b| {
                let dot = (0..d).fold(T::zero(), |acc, k| acc + self.get(k, a) * self.get(k, b));
                let want = if a == b { T::one() } else { T::zero() };
                (dot - want).abs() <= tol
            })
        })
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> T {
        let d = self.dim;
        let mut a = self.m.clone();
        let mut det = T::one();
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&x, &y| a[x * d + col].abs().partial_cmp(&a[y * d + col].abs()).unwrap())
                .unwrap();
            if a[pivot * d + col].is_zero() {
                return T::zero();
            }
            if pivot != col {
                for k in 0..d {
                    a.swap(pivot * d + k, col * d + k);
                }
                det = -det;
            }
            let p = a[col * d + col];
            det = det * p;
            for r in col + 1..d {
                let f = a[r * d + col] / p;
                for k in col..d {
                    a[r * d + k] = a[r * d + k] - f * a[col * d + k];
                }
            }
        }
        det
    }

    /// Smallest angle between any frame axis and any coordinate axis.
    pub fn min_axis_angle(&self) -> T {
        let d = self.dim;
        let mut best = T::infinity();
        for j in 0..d {
            let total = (0..d).fold(T::zero(), |acc, i| acc + self.get(i, j) * self.get(i, j));
            for i in 0..d {
                let c = self.get(i, j);
                let off = (total - c * c).max(T::zero()).sqrt();
                best = best.min(off.atan2(c.abs()));
            }
        }
        best
    }

    /// Rotation angle of `self^T other` for d = 2, 3. For larger d, the largest
    /// angle through which a basis vector is moved.
    pub fn angle_to(&self, other: &Rotation<T>) -> T {
        let d = self.dim;
        let rel = self.transpose().compose(other);
        if d == 2 {
            return rel.get(1, 0).atan2(rel.get(0, 0)).abs();
        }
        if d == 3 {
            let tr = rel.get(0, 0) + rel.get(1, 1) + rel.get(2, 2);
            let c = ((tr - T::one()) / lit(2.0)).max(-T::one()).min(T::one());
            // sine from the antisymmetric part keeps small angles accurate
            let s = ((rel.get(2, 1) - rel.get(1, 2)).powi(2)
                + (rel.get(0, 2) - rel.get(2, 0)).powi(2)
                + (rel.get(1, 0) - rel.get(0, 1)).powi(2))
            .sqrt()
                / lit(2.0);
            return s.atan2(c);
        }
        (0..d)
            .map(|j| {
                let c = rel.get(j, j).max(-T::one()).min(T::one());
                let off = (0..d).filter(|&i| i != j).fold(T::zero(), |acc, i| acc + rel.get(i, j).powi(2)).sqrt();
                off.atan2(c)
            })
            .fold(T::zero(), T::max)
    }
}
