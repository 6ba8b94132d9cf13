//! Monte-Carlo measure of the `x`-neighborhood of a geometric graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, TspnError};
use crate::geom::distance::point_segment;
use crate::geom::Point;
use crate::lines::steiner::UnionFind;
use crate::scalar::{lit, to_f64, Real};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PackingCheck<T> {
    pub estimate: T,
    /// Standard error of the estimate.
    pub sigma: T,
    pub bound: T,
    /// `estimate <= bound + 3 sigma`.
    pub holds: bool,
}

pub fn graph_length<T: Real>(vertices: &[Point<T>], edges: &[(usize, usize)]) -> T {
    edges.iter().map(|&(u, v)| vertices[u].dist(&vertices[v])).sum()
}

/// Area (d=2) or volume (d=3) of all points within `x` of the graph, by
/// uniform sampling of its bounding box grown by `x`.
pub fn neighborhood_measure<T: Real>(
    vertices: &[Point<T>],
    edges: &[(usize, usize)],
    x: T,
    samples: usize,
    seed: u64,
) -> Result<(T, T)> {
    let Some(first) = vertices.first() else {
        return Err(TspnError::InvalidInput("empty graph".into()));
    };
    let d = first.dim();
    let mut uf = UnionFind::new(vertices.len());
    for &(u, v) in edges {
        if u >= vertices.len() || v >= vertices.len() {
            return Err(TspnError::InvalidInput(format!("edge ({u}, {v}) out of range")));
        }
        uf.union(u, v);
    }
    let root = uf.find(0);
    if (1..vertices.len()).any(|v| uf.find(v) != root) {
        return Err(TspnError::Disconnected);
    }

    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for p in vertices {
        for (a, c) in p.coords().iter().enumerate() {
            lo[a] = lo[a].min(to_f64(*c) - to_f64(x));
            hi[a] = hi[a].max(to_f64(*c) + to_f64(x));
        }
    }
    let box_measure: f64 = (0..d).map(|a| hi[a] - lo[a]).product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let q = Point::new((0..d).map(|a| lit(rng.random_range(lo[a]..=hi[a]))).collect());
        let near = if edges.is_empty() {
            vertices.iter().any(|v| v.dist(&q) <= x)
        } else {
            edges.iter().any(|&(u, v)| point_segment(&q, &vertices[u], &vertices[v]) <= x)
        };
        if near {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    let est = p * box_measure;
    let sigma = (p * (1.0 - p) / samples as f64).sqrt() * box_measure;
    Ok((lit(est), lit(sigma)))
}

/// Planar check of `area <= 2 L x + pi x^2`.
pub fn check_area_packing<T: Real>(
    vertices: &[Point<T>],
    edges: &[(usize, usize)],
    x: T,
    samples: usize,
    seed: u64,
) -> Result<PackingCheck<T>> {
    let bound = lit::<T>(2.0) * graph_length(vertices, edges) * x + T::PI() * x * x;
    check(vertices, edges, x, samples, seed, bound, 2)
}

/// Spatial check of `volume <= pi x^2 L + (4 pi / 3) x^3`.
pub fn check_volume_packing<T: Real>(
    vertices: &[Point<T>],
    edges: &[(usize, usize)],
    x: T,
    samples: usize,
    seed: u64,
) -> Result<PackingCheck<T>> {
    let bound = T::PI() * x * x * graph_length(vertices, edges) + lit::<T>(4.0) * T::PI() / lit(3.0) * x * x * x;
    check(vertices, edges, x, samples, seed, bound, 3)
}

fn check<T: Real>(
    vertices: &[Point<T>],
    edges: &[(usize, usize)],
    x: T,
    samples: usize,
    seed: u64,
    bound: T,
    dim: usize,
) -> Result<PackingCheck<T>> {
    if let Some(p) = vertices.first() {
        crate::error::check_dim(dim, p.dim())?;
    }
    let (estimate, sigma) = neighborhood_measure(vertices, edges, x, samples, seed)?;
    let holds = estimate <= bound + lit::<T>(3.0) * sigma + lit::<T>(1e-12) * bound;
    Ok(PackingCheck { estimate, sigma, bound, holds })
}
