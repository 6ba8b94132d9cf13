//! Tours through points: exact subset DP, MST doubling with 2-opt, and an
//! exact tour through one point of each group.

use crate::error::{Result, TspnError};
use crate::geom::{Point, Tour};
use crate::scalar::Real;

pub const HELD_KARP_MAX: usize = 16;
pub const GROUP_TSP_MAX_GROUPS: usize = 10;
pub const GROUP_TSP_MAX_POINTS: usize = 640;
const TWO_OPT_PASSES: usize = 50;
/// Largest point count for which [`center_tour`] picks Held-Karp by default.
pub const AUTO_EXACT_MAX: usize = 13;

/// Point tour used under the neighborhood tours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointBackend {
    HeldKarp,
    MstTwoOpt,
}

impl PointBackend {
    /// Approximation factor guaranteed by the backend.
    pub fn alpha<T: Real>(self) -> T {
        match self {
            PointBackend::HeldKarp => T::one(),
            PointBackend::MstTwoOpt => T::one() + T::one(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PointBackend::HeldKarp => "held-karp",
            PointBackend::MstTwoOpt => "mst-2opt",
        }
    }
}

/// Visiting order of `points` with the requested backend, or Held-Karp up
/// to [`AUTO_EXACT_MAX`] points and MST doubling beyond.
pub fn center_tour<T: Real>(points: &[Point<T>], backend: Option<PointBackend>) -> Result<(Vec<usize>, PointBackend)> {
    let backend = backend.unwrap_or(if points.len() <= AUTO_EXACT_MAX {
        PointBackend::HeldKarp
    } else {
        PointBackend::MstTwoOpt
    });
    let order = match (backend, points.len()) {
        (_, 0) => return Err(TspnError::InvalidInput("no points".into())),
        (_, 1) => vec![0],
        (PointBackend::HeldKarp, _) => held_karp_order(points)?,
        (PointBackend::MstTwoOpt, _) => mst_order(points),
    };
    Ok((order, backend))
}

fn pick<T: Real>(points: &[Point<T>], order: &[usize]) -> Result<Tour<T>> {
    Tour::new(order.iter().map(|&i| points[i].clone()).collect())
}

fn distance_matrix<T: Real>(points: &[Point<T>]) -> Vec<T> {
    let n = points.len();
    let mut d = vec![T::zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let x = points[i].dist(&points[j]);
            d[i * n + j] = x;
            d[j * n + i] = x;
        }
    }
    d
}

/// Optimal closed tour by dynamic programming over subsets.
pub fn held_karp<T: Real>(points: &[Point<T>]) -> Result<Tour<T>> {
    pick(points, &held_karp_order(points)?)
}

fn held_karp_order<T: Real>(points: &[Point<T>]) -> Result<Vec<usize>> {
    let n = points.len();
    match n {
        0 => return Err(TspnError::InvalidInput("no points".into())),
        1 => return Ok(vec![0]),
        _ if n > HELD_KARP_MAX => {
            return Err(TspnError::LimitsExceeded(format!("held_karp takes at most {HELD_KARP_MAX} points, got {n}")));
        }
        _ => {}
    }
    let d = distance_matrix(points);
    // vertex 0 is the fixed start; masks range over vertices 1..n
    let m = n - 1;
    let full = (1usize << m) - 1;
    let mut dp = vec![T::infinity(); (full + 1) * m];
    let mut from = vec![usize::MAX; (full + 1) * m];
    for v in 0..m {
        dp[(1 << v) * m + v] = d[v + 1];
    }
    for mask in 1..=full {
        for v in 0..m {
            let cur = dp[mask * m + v];
            if mask >> v & 1 == 0 || !cur.is_finite() {
                continue;
            }
            for w in 0..m {
                if mask >> w & 1 == 1 {
                    continue;
                }
                let next = mask | 1 << w;
                let c = cur + d[(v + 1) * n + w + 1];
                if c < dp[next * m + w] {
                    dp[next * m + w] = c;
                    from[next * m + w] = v;
                }
            }
        }
    }
    let mut last = 0;
    for v in 1..m {
        if dp[full * m + v] + d[v + 1] < dp[full * m + last] + d[last + 1] {
            last = v;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    let mut v = last;
    while v != usize::MAX {
        order.push(v + 1);
        let prev = from[mask * m + v];
        mask ^= 1 << v;
        v = prev;
    }
    order.push(0);
    order.reverse();
    Ok(order)
}

/// Preorder walk of a minimum spanning tree, then first-improvement 2-opt.
pub fn mst_double_tour<T: Real>(points: &[Point<T>]) -> Result<Tour<T>> {
    if points.is_empty() {
        return Err(TspnError::InvalidInput("no points".into()));
    }
    pick(points, &mst_order(points))
}

fn mst_order<T: Real>(points: &[Point<T>]) -> Vec<usize> {
    let n = points.len();
    let d = distance_matrix(points);
    let mut in_tree = vec![false; n];
    let mut best = vec![T::infinity(); n];
    let mut parent = vec![usize::MAX; n];
    let mut children = vec![Vec::new(); n];
    best[0] = T::zero();
    for _ in 0..n {
        let mut u = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (u == usize::MAX || best[v] < best[u]) {
                u = v;
            }
        }
        in_tree[u] = true;
        if parent[u] != usize::MAX {
            children[parent[u]].push(u);
        }
        for v in 0..n {
            if !in_tree[v] && d[u * n + v] < best[v] {
                best[v] = d[u * n + v];
                parent[v] = u;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        order.push(v);
        stack.extend(children[v].iter().rev());
    }
    two_opt(&mut order, &d, n);
    order
}

fn two_opt<T: Real>(order: &mut [usize], d: &[T], n: usize) {
    let k = order.len();
    if k < 4 {
        return;
    }
    let eps = T::epsilon() * T::from(16.0).unwrap();
    for _ in 0..TWO_OPT_PASSES {
        let mut improved = false;
        for i in 0..k - 1 {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                let (a, b) = (order[i], order[i + 1]);
                let (c, e) = (order[j], order[(j + 1) % k]);
                let before = d[a * n + b] + d[c * n + e];
                let after = d[a * n + c] + d[b * n + e];
                if after < before - eps * (T::one() + before) {
                    order[i + 1..=j].reverse();
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
}

/// Shortest closed tour through at least one point of every group.
pub fn group_tsp_exact<T: Real>(groups: &[Vec<Point<T>>]) -> Result<Tour<T>> {
    let g = groups.len();
    let total: usize = groups.iter().map(Vec::len).sum();
    if g == 0 || groups.iter().any(Vec::is_empty) {
        return Err(TspnError::InvalidInput("groups must be nonempty".into()));
    }
    if g > GROUP_TSP_MAX_GROUPS || total > GROUP_TSP_MAX_POINTS {
        return Err(TspnError::LimitsExceeded(format!(
            "group_tsp_exact handles {GROUP_TSP_MAX_GROUPS} groups and {GROUP_TSP_MAX_POINTS} points, got {g} and {total}"
        )));
    }
    // start from the smallest group; the others are indexed 0..g-1 in masks
    let start_group = (0..g).min_by_key(|&i| groups[i].len()).unwrap();
    let others: Vec<usize> = (0..g).filter(|&i| i != start_group).collect();
    if others.is_empty() {
        return Ok(Tour::single(groups[start_group][0].clone()));
    }
    let pts: Vec<Point<T>> = others.iter().flat_map(|&i| groups[i].iter().cloned()).collect();
    let mut owner = Vec::with_capacity(pts.len());
    let mut ranges = Vec::with_capacity(others.len());
    for (k, &i) in others.iter().enumerate() {
        let lo = owner.len();
        owner.extend(std::iter::repeat_n(k, groups[i].len()));
        ranges.push(lo..owner.len());
    }
    let p = pts.len();
    let d = distance_matrix(&pts);
    let m = others.len();
    let full = (1usize << m) - 1;

    let mut best_len = T::infinity();
    let mut best_tour = Vec::new();
    let mut dp = vec![T::infinity(); (full + 1) * p];
    let mut from = vec![usize::MAX; (full + 1) * p];
    for s in &groups[start_group] {
        dp.iter_mut().for_each(|x| *x = T::infinity());
        for (v, q) in pts.iter().enumerate() {
            dp[(1 << owner[v]) * p + v] = s.dist(q);
            from[(1 << owner[v]) * p + v] = usize::MAX;
        }
        for mask in 1..full {
            for v in 0..p {
                let cur = dp[mask * p + v];
                if mask >> owner[v] & 1 == 0 || cur >= best_len {
                    continue;
                }
                for (h, range) in ranges.iter().enumerate() {
                    if mask >> h & 1 == 1 {
                        continue;
                    }
                    let next = (mask | 1 << h) * p;
                    for w in range.clone() {
                        let c = cur + d[v * p + w];
                        if c < dp[next + w] {
                            dp[next + w] = c;
                            from[next + w] = v;
                        }
                    }
                }
            }
        }
        for v in 0..p {
            let c = dp[full * p + v] + pts[v].dist(s);
            if c < best_len {
                best_len = c;
                let mut tour = Vec::with_capacity(g);
                let (mut mask, mut w) = (full, v);
                while w != usize::MAX {
                    tour.push(pts[w].clone());
                    let prev = from[mask * p + w];
                    mask ^= 1 << owner[w];
                    w = prev;
                }
                tour.push(s.clone());
                tour.reverse();
                best_tour = tour;
            }
        }
    }
    Tour::new(best_tour)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(c: &[[f64; 2]]) -> Vec<Point<f64>> {
        c.iter().map(|x| Point::from_f64(x)).collect()
    }

    #[test]
    fn square_and_collinear() {
        let sq = pts(&[[0., 0.], [1., 1.], [1., 0.], [0., 1.]]);
        assert!((held_karp(&sq).unwrap().length() - 4.0).abs() < 1e-12);
        assert!((mst_double_tour(&sq).unwrap().length() - 4.0).abs() < 1e-12);
        let line = pts(&[[3., 0.], [-1., 0.], [7., 0.], [0., 0.]]);
        assert!((held_karp(&line).unwrap().length() - 16.0).abs() < 1e-12);
        assert_eq!(held_karp(&pts(&[[0., 0.]])).unwrap().len(), 1);
        assert!(held_karp::<f64>(&[]).is_err());
    }

    #[test]
    fn two_points_and_groups() {
        let two = pts(&[[0., 0.], [3., 4.]]);
        assert!((mst_double_tour(&two).unwrap().length() - 10.0).abs() < 1e-12);
        let groups = vec![pts(&[[0., 0.]]), pts(&[[3., 4.]])];
        assert!((group_tsp_exact(&groups).unwrap().length() - 10.0).abs() < 1e-12);
        assert_eq!(mst_double_tour(&pts(&[[1., 1.]])).unwrap().length(), 0.0);
    }
}
