use std::collections::BinaryHeap;

use crate::geom::Point;
use crate::lines::graph::MinItem;
use crate::scalar::{lit, Real};

/// Stretch of the spanners built by [`greedy_2_spanner`].
pub const SPANNER_STRETCH: f64 = 2.0;

/// Greedy 2-spanner: pairs in order of increasing distance, an edge is added
/// when the current spanner distance exceeds twice the pair distance.
pub fn greedy_2_spanner<T: Real>(points: &[Point<T>]) -> Vec<(usize, usize)> {
    let n = points.len();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((points[i].dist(&points[j]), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then((a.1, a.2).cmp(&(b.1, b.2))));

    let stretch: T = lit(SPANNER_STRETCH);
    let mut adj: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    let mut dist = vec![T::infinity(); n];
    let mut touched = Vec::new();
    for (d, i, j) in pairs {
        let limit = stretch * d;
        if bounded_dist(&adj, i, j, limit, &mut dist, &mut touched) > limit {
            adj[i].push((j, d));
            adj[j].push((i, d));
            edges.push((i, j));
        }
    }
    edges
}

/// Spanner distance from `s` to `t`, or infinity if it exceeds `limit`.
fn bounded_dist<T: Real>(
    adj: &[Vec<(usize, T)>],
    s: usize,
    t: usize,
    limit: T,
    dist: &mut [T],
    touched: &mut Vec<usize>,
) -> T {
    for &v in touched.iter() {
        dist[v] = T::infinity();
    }
    touched.clear();
    let mut heap = BinaryHeap::new();
    dist[s] = T::zero();
    touched.push(s);
    heap.push(MinItem(T::zero(), s));
    while let Some(MinItem(d, v)) = heap.pop() {
        if v == t {
            return d;
        }
        if d > dist[v] {
            continue;
        }
        for &(w, len) in &adj[v] {
            let nd = d + len;
            if nd <= limit && nd < dist[w] {
                if dist[w] == T::infinity() {
                    touched.push(w);
                }
                dist[w] = nd;
                heap.push(MinItem(nd, w));
            }
        }
    }
    T::infinity()
}
