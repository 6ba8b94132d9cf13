use crate::error::{Result, TspnError};
use crate::geom::point::{Direction, Point};
use crate::scalar::Real;

/// The hyperplane `{x : normal . x = offset}`.
///
/// The normal is a unit vector with nonnegative last coordinate. When the last
/// coordinate is zero the plane is parallel to the last axis and the first
/// nonzero coordinate is made positive instead; such planes are flagged
/// [`Hyperplane::is_axis_degenerate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane<T> {
    normal: Point<T>,
    offset: T,
}

impl<T: Real> Hyperplane<T> {
    pub fn new(normal: &Point<T>, offset: T) -> Result<Self> {
        if !offset.is_finite() {
            return Err(TspnError::InvalidInput("non-finite hyperplane offset".into()));
        }
        let len = normal.norm();
        if !(len > T::zero()) || !len.is_finite() {
            return Err(TspnError::InvalidInput("degenerate hyperplane normal".into()));
        }
        let (mut n, mut c) = (normal.scale(T::one() / len), offset / len);
        let d = n.dim();
        let flip = if n[d - 1] != T::zero() {
            n[d - 1] < T::zero()
        } else {
            n.coords().iter().find(|x| !x.is_zero()).is_some_and(|x| *x < T::zero())
        };
        if flip {
            n = -&n;
            c = -c;
        }
        Ok(Hyperplane { normal: n, offset: c })
    }

    pub fn from_f64(normal: &[f64], offset: f64) -> Result<Self> {
        Self::new(&Point::from_f64(normal), crate::scalar::lit(offset))
    }

    #[inline]
    pub fn normal(&self) -> &Point<T> {
        &self.normal
    }

    #[inline]
    pub fn offset(&self) -> T {
        self.offset
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    pub fn is_axis_degenerate(&self) -> bool {
        self.normal[self.dim() - 1] == T::zero()
    }

    /// Signed distance `normal . p - offset`.
    #[inline]
    pub fn signed_dist(&self, p: &Point<T>) -> T {
        self.normal.dot(p) - self.offset
    }
}

/// An infinite line, stored by its point closest to the origin and its direction.
#[derive(Clone, Debug, PartialEq)]
pub struct Line<T> {
    anchor: Point<T>,
    dir: Direction<T>,
}

impl<T: Real> Line<T> {
    pub fn new(through: &Point<T>, dir: &Point<T>) -> Result<Self> {
        if !through.is_finite() {
            return Err(TspnError::InvalidInput("non-finite line point".into()));
        }
        if through.dim() != dir.dim() {
            return Err(TspnError::DimensionMismatch { expected: through.dim(), found: dir.dim() });
        }
        let dir = Direction::new(dir)?;
        let t = through.dot(dir.unit());
        let anchor = through.add_scaled(dir.unit(), -t);
        Ok(Line { anchor, dir })
    }

    pub fn from_f64(through: &[f64], dir: &[f64]) -> Result<Self> {
        Self::new(&Point::from_f64(through), &Point::from_f64(dir))
    }

    #[inline]
    pub fn anchor(&self) -> &Point<T> {
        &self.anchor
    }

    #[inline]
    pub fn dir(&self) -> &Direction<T> {
        &self.dir
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.anchor.dim()
    }

    /// `anchor + t * dir`
    pub fn at(&self, t: T) -> Point<T> {
        self.anchor.add_scaled(self.dir.unit(), t)
    }

    /// Parameter of the orthogonal projection of `p` onto the line.
    pub fn param_of(&self, p: &Point<T>) -> T {
        (p - &self.anchor).dot(self.dir.unit())
    }

    pub fn project(&self, p: &Point<T>) -> Point<T> {
        self.at(self.param_of(p))
    }

    /// Intersection with the hyperplane `{x : normal . x = offset}`, if not parallel.
    pub fn intersect_plane(&self, normal: &Point<T>, offset: T) -> Option<T> {
        let denom = normal.dot(self.dir.unit());
        if denom.abs() < crate::scalar::lit(1e-12) {
            return None;
        }
        Some((offset - normal.dot(&self.anchor)) / denom)
    }
}

/// A closed ball (a disk when `d = 2`).
#[derive(Clone, Debug, PartialEq)]
pub struct Ball<T> {
    center: Point<T>,
    radius: T,
}

impl<T: Real> Ball<T> {
    pub fn new(center: Point<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(TspnError::InvalidInput("ball radius must be positive".into()));
        }
        if !center.is_finite() {
            return Err(TspnError::InvalidInput("non-finite ball center".into()));
        }
        Ok(Ball { center, radius })
    }

    pub fn unit(center: Point<T>) -> Self {
        Ball { center, radius: T::one() }
    }

    pub fn from_f64(center: &[f64], radius: f64) -> Result<Self> {
        Self::new(Point::from_f64(center), crate::scalar::lit(radius))
    }

    #[inline]
    pub fn center(&self) -> &Point<T> {
        &self.center
    }

    #[inline]
    pub fn radius(&self) -> T {
        self.radius
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn intersects(&self, other: &Ball<T>) -> bool {
        self.center.dist(&other.center) <= self.radius + other.radius
    }
}
