//! Checks that a closed tour meets every neighborhood.

use crate::error::{check_dim, Result};
use crate::geom::distance::{segment_ball, segment_hyperplane, segment_line};
use crate::geom::{Ball, Hyperplane, Line, Tour};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub enum Neighborhood<T> {
    Hyperplane(Hyperplane<T>),
    Line(Line<T>),
    Ball(Ball<T>),
}

impl<T: Real> Neighborhood<T> {
    pub fn dim(&self) -> usize {
        match self {
            Neighborhood::Hyperplane(h) => h.dim(),
            Neighborhood::Line(l) => l.dim(),
            Neighborhood::Ball(b) => b.dim(),
        }
    }

    /// Distance from the closed polyline to the set.
    pub fn distance_to(&self, tour: &Tour<T>) -> T {
        tour.segments()
            .map(|(a, b)| match self {
                Neighborhood::Hyperplane(h) => segment_hyperplane(a, b, h),
                Neighborhood::Line(l) => segment_line(a, b, l),
                Neighborhood::Ball(ball) => segment_ball(a, b, ball),
            })
            .fold(T::infinity(), T::min)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verification<T> {
    pub distances: Vec<T>,
    /// First neighborhood farther than the tolerance.
    pub first_violation: Option<usize>,
}

impl<T> Verification<T> {
    pub fn is_valid(&self) -> bool {
        self.first_violation.is_none()
    }
}

pub fn verify_tour<T: Real>(tour: &Tour<T>, items: &[Neighborhood<T>], tol: T) -> Result<Verification<T>> {
    for item in items {
        check_dim(tour.dim(), item.dim())?;
    }
    let distances: Vec<T> = items.iter().map(|n| n.distance_to(tour)).collect();
    let first_violation = distances.iter().position(|&d| d > tol);
    Ok(Verification { distances, first_violation })
}

pub fn balls<T: Real>(items: &[Ball<T>]) -> Vec<Neighborhood<T>> {
    items.iter().cloned().map(Neighborhood::Ball).collect()
}

pub fn lines<T: Real>(items: &[Line<T>]) -> Vec<Neighborhood<T>> {
    items.iter().cloned().map(Neighborhood::Line).collect()
}

pub fn hyperplanes<T: Real>(items: &[Hyperplane<T>]) -> Vec<Neighborhood<T>> {
    items.iter().cloned().map(Neighborhood::Hyperplane).collect()
}
