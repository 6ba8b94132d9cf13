use crate::error::{Result, TspnError};
use crate::geom::point::Point;
use crate::scalar::Real;

/// A closed polyline; the last vertex connects back to the first.
#[derive(Clone, Debug, PartialEq)]
pub struct Tour<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Real> Tour<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self> {
        check_vertices(&vertices)?;
        Ok(Tour { vertices })
    }

    pub fn single(p: Point<T>) -> Self {
        Tour { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point<T>> {
        self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Euclidean length including the closing edge.
    pub fn length(&self) -> T {
        self.segments().map(|(a, b)| a.dist(b)).sum()
    }

    /// Consecutive vertex pairs, closing edge last. A single-vertex tour yields one
    /// degenerate segment.
    pub fn segments(&self) -> impl Iterator<Item = (&Point<T>, &Point<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Drops consecutive exact duplicates (cyclically); never empties the tour.
    pub fn dedup(mut self) -> Self {
        self.vertices.dedup();
        while self.vertices.len() > 1 && self.vertices.first() == self.vertices.last() {
            self.vertices.pop();
        }
        self
    }

    pub fn translated(&self, offset: &Point<T>) -> Self {
        Tour { vertices: self.vertices.iter().map(|v| v + offset).collect() }
    }
}

/// An open polyline.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenPath<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Real> OpenPath<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self> {
        check_vertices(&vertices)?;
        Ok(OpenPath { vertices })
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn first(&self) -> &Point<T> {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Point<T> {
        self.vertices.last().unwrap()
    }

    pub fn length(&self) -> T {
        self.segments().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point<T>, &Point<T>)> + '_ {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        OpenPath { vertices }
    }

    pub fn translated(&self, offset: &Point<T>) -> Self {
        OpenPath { vertices: self.vertices.iter().map(|v| v + offset).collect() }
    }
}

fn check_vertices<T: Real>(vertices: &[Point<T>]) -> Result<()> {
    let Some(first) = vertices.first() else {
        return Err(TspnError::InvalidInput("polyline needs at least one vertex".into()));
    };
    let d = first.dim();
    for v in vertices {
        crate::error::check_dim(d, v.dim())?;
        if !v.is_finite() {
            return Err(TspnError::InvalidInput("non-finite polyline vertex".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Point<f64> {
        Point::from_f64(c)
    }

    #[test]
    fn closed_length_includes_closing_edge() {
        let t = Tour::new(vec![p(&[0., 0.]), p(&[1., 0.]), p(&[1., 1.]), p(&[0., 1.])]).unwrap();
        assert_eq!(t.length(), 4.0);
        let o = OpenPath::new(t.vertices().to_vec()).unwrap();
        assert_eq!(o.length(), 3.0);
    }

    #[test]
    fn single_point_tour_has_zero_length() {
        assert_eq!(Tour::single(p(&[3., 4.])).length(), 0.0);
    }

    #[test]
    fn dedup_is_cyclic() {
        let t = Tour::new(vec![p(&[0., 0.]), p(&[0., 0.]), p(&[1., 0.]), p(&[0., 0.])]).unwrap().dedup();
        assert_eq!(t.len(), 2);
        let z = Tour::new(vec![p(&[2., 2.]); 4]).unwrap().dedup();
        assert_eq!(z.len(), 1);
    }

    #[test]
    fn empty_and_mixed_dimension_rejected() {
        assert!(Tour::<f64>::new(vec![]).is_err());
        assert!(Tour::new(vec![p(&[0., 0.]), p(&[0., 0., 0.])]).is_err());
    }
}
