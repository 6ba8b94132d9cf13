//! Exhaustive solvers for tiny instances.

use tspn_core::geom::Point;
use tspn_core::lines::GroupGraph;

/// Shortest closed tour through `points` over all orders with the first point
/// fixed. Exponential; meant for `n <= 9`.
pub fn permutation_tsp(points: &[Point<f64>]) -> f64 {
    fn go(pts: &[Point<f64>], last: usize, used: &mut [bool], left: usize, acc: f64, best: &mut f64) {
        if acc >= *best {
            return;
        }
        if left == 0 {
            *best = best.min(acc + pts[last].dist(&pts[0]));
            return;
        }
        for v in 1..pts.len() {
            if !used[v] {
                used[v] = true;
                go(pts, v, used, left - 1, acc + pts[last].dist(&pts[v]), best);
                used[v] = false;
            }
        }
    }
    if points.len() < 2 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    let mut used = vec![false; points.len()];
    used[0] = true;
    go(points, 0, &mut used, points.len() - 1, 0.0, &mut best);
    best
}

/// Minimum group Steiner tree length: over every vertex subset meeting all
/// groups whose induced subgraph is connected, the minimum spanning tree.
/// Meant for at most ~16 vertices.
pub fn subset_steiner(g: &GroupGraph<f64>) -> f64 {
    let n = g.num_vertices();
    assert!(n < 32);
    let mut edges: Vec<_> = g.edges().iter().collect();
    edges.sort_by(|a, b| a.weight.total_cmp(&b.weight));
    let mut best = f64::INFINITY;
    let mut comp = vec![0usize; n];
    for mask in 1u32..(1 << n) {
        if !g.groups().iter().all(|grp| grp.iter().any(|&v| mask >> v & 1 == 1)) {
            continue;
        }
        for (i, c) in comp.iter_mut().enumerate() {
            *c = i;
        }
        fn find(c: &mut [usize], mut x: usize) -> usize {
            while c[x] != x {
                c[x] = c[c[x]];
                x = c[x];
            }
            x
        }
        let (mut len, mut joined) = (0.0, 0);
        for e in edges.iter().filter(|e| mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1) {
            let (a, b) = (find(&mut comp, e.u), find(&mut comp, e.v));
            if a != b {
                comp[a] = b;
                len += e.weight;
                joined += 1;
            }
        }
        if joined + 1 == mask.count_ones() {
            best = best.min(len);
        }
    }
    best
}
