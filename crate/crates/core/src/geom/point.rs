use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Result, TspnError};
use crate::scalar::{lit, Real};

/// A point (or free vector) in `R^d`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Point<T> {
    coords: Vec<T>,
}

impl<T: Real> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Point { coords }
    }

    /// Builds a point after checking that every coordinate is finite.
    pub fn try_new(coords: Vec<T>) -> Result<Self> {
        if coords.iter().all(|c| c.is_finite()) {
            Ok(Point { coords })
        } else {
            Err(TspnError::InvalidInput("non-finite coordinate".into()))
        }
    }

    pub fn origin(dim: usize) -> Self {
        Point { coords: vec![T::zero(); dim] }
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut coords = vec![T::zero(); dim];
        coords[axis] = T::one();
        Point { coords }
    }

    pub fn from_f64(coords: &[f64]) -> Self {
        Point { coords: coords.iter().map(|&c| lit(c)).collect() }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| crate::scalar::to_f64(*c)).collect()
    }

    #[inline]
    pub fn dot(&self, other: &Point<T>) -> T {
        dot(&self.coords, &other.coords)
    }

    #[inline]
    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn dist(&self, other: &Point<T>) -> T {
        dist(&self.coords, &other.coords)
    }

    pub fn scale(&self, s: T) -> Point<T> {
        Point { coords: self.coords.iter().map(|&c| c * s).collect() }
    }

    /// `self + s * v`
    pub fn add_scaled(&self, v: &Point<T>, s: T) -> Point<T> {
        Point { coords: self.coords.iter().zip(&v.coords).map(|(&a, &b)| a + s * b).collect() }
    }

    pub fn lerp(&self, other: &Point<T>, t: T) -> Point<T> {
        Point {
            coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| a + (b - a) * t).collect(),
        }
    }

    pub fn normalized(&self) -> Option<Point<T>> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self.scale(T::one() / n))
        } else {
            None
        }
    }

    /// Cross product; both operands must be three-dimensional.
    pub fn cross(&self, other: &Point<T>) -> Point<T> {
        let (a, b) = (&self.coords, &other.coords);
        debug_assert!(a.len() == 3 && b.len() == 3);
        Point::new(vec![
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

impl<T> Index<usize> for Point<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

impl<'a, T: Real> Add<&'a Point<T>> for &'a Point<T> {
    type Output = Point<T>;
    fn add(self, rhs: &Point<T>) -> Point<T> {
        Point { coords: self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| a + b).collect() }
    }
}

impl<'a, T: Real> Sub<&'a Point<T>> for &'a Point<T> {
    type Output = Point<T>;
    fn sub(self, rhs: &Point<T>) -> Point<T> {
        Point { coords: self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| a - b).collect() }
    }
}

impl<T: Real> Mul<T> for &Point<T> {
    type Output = Point<T>;
    fn mul(self, s: T) -> Point<T> {
        self.scale(s)
    }
}

impl<T: Real> Neg for &Point<T> {
    type Output = Point<T>;
    fn neg(self) -> Point<T> {
        Point { coords: self.coords.iter().map(|&c| -c).collect() }
    }
}

/// A unit vector identified with its negative: the first nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction<T> {
    unit: Point<T>,
}

impl<T: Real> Direction<T> {
    /// Normalizes and canonicalizes `v`; fails on the zero vector.
    pub fn new(v: &Point<T>) -> Result<Self> {
        let unit = v
            .normalized()
            .ok_or_else(|| TspnError::InvalidInput("zero-length direction".into()))?;
        Ok(Direction { unit: canonical_sign(unit) })
    }

    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        Self::new(&Point::from_f64(coords))
    }

    pub fn axis(dim: usize, axis: usize) -> Self {
        Direction { unit: Point::unit(dim, axis) }
    }

    #[inline]
    pub fn unit(&self) -> &Point<T> {
        &self.unit
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.unit.dim()
    }
}

fn canonical_sign<T: Real>(p: Point<T>) -> Point<T> {
    match p.coords().iter().find(|c| !c.is_zero()) {
        Some(c) if *c < T::zero() => -&p,
        _ => p,
    }
}

#[inline]
pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

#[inline]
pub(crate) fn dist_sq<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| {
        let d = x - y;
        acc + d * d
    })
}

#[inline]
pub(crate) fn dist<T: Real>(a: &[T], b: &[T]) -> T {
    dist_sq(a, b).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_is_canonical_and_unit() {
        let d = Direction::<f64>::from_f64(&[0.0, -3.0, 4.0]).unwrap();
        for (got, want) in d.unit().coords().iter().zip([0.0, 0.6, -0.8]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!((d.unit().norm() - 1.0).abs() < 1e-12);
        assert!(Direction::<f64>::from_f64(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn reversed_vectors_give_the_same_direction() {
        let a = Direction::<f64>::from_f64(&[1.0, 2.0, -2.0]).unwrap();
        let b = Direction::<f64>::from_f64(&[-1.0, -2.0, 2.0]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Point::<f64>::try_new(vec![1.0, f64::NAN]).is_err());
    }
}
