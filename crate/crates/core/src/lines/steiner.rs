//! Group Steiner tree solvers and the tree-to-tour shortcut.

use std::collections::BinaryHeap;

use crate::error::{Result, TspnError};
use crate::geom::Tour;
use crate::lines::graph::{GroupGraph, MinItem};
use crate::scalar::Real;

pub const EXACT_MAX_GROUPS: usize = 12;
pub const EXACT_MAX_VERTICES: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SteinerSolver {
    Exact,
    Greedy,
}

/// Tree in a [`GroupGraph`] touching every group. `root` is one of its
/// vertices; it is the only vertex when `edges` is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct SteinerTree<T> {
    pub edges: Vec<usize>,
    pub root: usize,
    pub length: T,
}

impl<T: Real> SteinerTree<T> {
    pub fn vertices(&self, g: &GroupGraph<T>) -> Vec<usize> {
        let mut vs = vec![self.root];
        for &e in &self.edges {
            vs.push(g.edges()[e].u);
            vs.push(g.edges()[e].v);
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Acyclic, connected and touching every group.
    pub fn is_valid(&self, g: &GroupGraph<T>) -> bool {
        let vs = self.vertices(g);
        if self.edges.len() + 1 != vs.len() {
            return false;
        }
        let mut uf = UnionFind::new(g.num_vertices());
        for &e in &self.edges {
            let edge = &g.edges()[e];
            if !uf.union(edge.u, edge.v) {
                return false;
            }
        }
        let root = uf.find(self.root);
        if vs.iter().any(|&v| uf.find(v) != root) {
            return false;
        }
        let mut hit = vec![false; g.groups().len()];
        for &v in &vs {
            for &k in g.groups_of(v) {
                hit[k] = true;
            }
        }
        hit.iter().all(|&h| h)
    }
}

#[derive(Clone, Copy)]
enum Back {
    Unset,
    Leaf,
    Merge(u32),
    Edge(u32),
}

/// Minimum group Steiner tree by dynamic programming over
/// (group subset, vertex) states.
pub fn group_steiner_exact<T: Real>(g: &GroupGraph<T>) -> Result<SteinerTree<T>> {
    let k = g.groups().len();
    let n = g.num_vertices();
    if k > EXACT_MAX_GROUPS || n > EXACT_MAX_VERTICES {
        return Err(TspnError::LimitsExceeded(format!(
            "exact group Steiner handles at most {EXACT_MAX_GROUPS} groups and {EXACT_MAX_VERTICES} vertices, got {k} and {n}"
        )));
    }
    if k == 0 {
        return Err(TspnError::InvalidInput("no groups".into()));
    }
    check_reachable(g)?;

    let full = (1usize << k) - 1;
    let mut dp = vec![T::infinity(); (full + 1) * n];
    let mut back = vec![Back::Unset; (full + 1) * n];
    for (i, members) in g.groups().iter().enumerate() {
        for &v in members {
            dp[(1 << i) * n + v] = T::zero();
            back[(1 << i) * n + v] = Back::Leaf;
        }
    }
    let mut heap = BinaryHeap::new();
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        if mask != low {
            let mut sub = (mask - 1) & mask;
            while sub > 0 {
                if sub & low != 0 {
                    let rest = mask ^ sub;
                    for v in 0..n {
                        let c = dp[sub * n + v] + dp[rest * n + v];
                        if c < dp[mask * n + v] {
                            dp[mask * n + v] = c;
                            back[mask * n + v] = Back::Merge(sub as u32);
                        }
                    }
                }
                sub = (sub - 1) & mask;
            }
        }
        let row = &mut dp[mask * n..(mask + 1) * n];
        let brow = &mut back[mask * n..(mask + 1) * n];
        for (v, &d) in row.iter().enumerate() {
            if d.is_finite() {
                heap.push(MinItem(d, v));
            }
        }
        while let Some(MinItem(d, v)) = heap.pop() {
            if d > row[v] {
                continue;
            }
            for &(w, e) in g.neighbors(v) {
                let nd = d + g.edges()[e].weight;
                if nd < row[w] {
                    row[w] = nd;
                    brow[w] = Back::Edge(e as u32);
                    heap.push(MinItem(nd, w));
                }
            }
        }
    }

    let mut root = 0;
    for v in 1..n {
        if dp[full * n + v] < dp[full * n + root] {
            root = v;
        }
    }
    let mut chosen = vec![false; g.edges().len()];
    let mut stack = vec![(full, root)];
    while let Some((mask, v)) = stack.pop() {
        match back[mask * n + v] {
            Back::Unset => unreachable!("state without back pointer"),
            Back::Leaf => {}
            Back::Merge(sub) => {
                stack.push((sub as usize, v));
                stack.push((mask ^ sub as usize, v));
            }
            Back::Edge(e) => {
                chosen[e as usize] = true;
                stack.push((mask, g.edges()[e as usize].other(v)));
            }
        }
    }
    let edges = (0..chosen.len()).filter(|&e| chosen[e]).collect::<Vec<_>>();
    Ok(finish(g, root, &edges))
}

/// Greedy accretion: join the closest pair of groups, then repeatedly attach
/// the group nearest to the tree by a shortest path.
pub fn group_steiner_greedy<T: Real>(g: &GroupGraph<T>) -> Result<SteinerTree<T>> {
    let k = g.groups().len();
    if k == 0 {
        return Err(TspnError::InvalidInput("no groups".into()));
    }
    check_reachable(g)?;
    let mut covered = vec![false; k];
    let mut in_tree = vec![false; g.num_vertices()];
    let mut edges = Vec::new();

    let root;
    if k == 1 {
        root = g.groups()[0][0];
    } else {
        let mut best: Option<(T, usize, Vec<Option<usize>>)> = None;
        for a in 0..k {
            let (dist, pred) = g.shortest_paths(&g.groups()[a]);
            let mut here: Option<usize> = None;
            for (b, members) in g.groups().iter().enumerate() {
                if b == a {
                    continue;
                }
                for &v in members {
                    if here.is_none_or(|h| dist[v] < dist[h]) {
                        here = Some(v);
                    }
                }
            }
            let v = here.expect("at least two groups");
            if best.as_ref().is_none_or(|x| dist[v] < x.0) {
                best = Some((dist[v], v, pred));
            }
            if best.as_ref().is_some_and(|x| x.0.is_zero()) {
                break;
            }
        }
        let (_, end, pred) = best.expect("at least two groups");
        let path = g.path_to(&pred, end);
        root = path.iter().rev().fold(end, |v, &e| g.edges()[e].other(v));
        edges.extend(path);
    }
    mark(g, root, &edges, &mut in_tree, &mut covered);

    while covered.iter().any(|&c| !c) {
        let sources: Vec<usize> = (0..g.num_vertices()).filter(|&v| in_tree[v]).collect();
        let (dist, pred) = g.shortest_paths(&sources);
        let mut target = None;
        for (b, members) in g.groups().iter().enumerate() {
            if covered[b] {
                continue;
            }
            for &v in members {
                if target.is_none_or(|t: usize| dist[v] < dist[t]) {
                    target = Some(v);
                }
            }
        }
        let path = g.path_to(&pred, target.unwrap());
        mark(g, root, &path, &mut in_tree, &mut covered);
        edges.extend(path);
    }
    Ok(finish(g, root, &edges))
}

fn mark<T: Real>(g: &GroupGraph<T>, root: usize, edges: &[usize], in_tree: &mut [bool], covered: &mut [bool]) {
    let mut visit = |v: usize| {
        in_tree[v] = true;
        for &k in g.groups_of(v) {
            covered[k] = true;
        }
    };
    visit(root);
    for &e in edges {
        visit(g.edges()[e].u);
        visit(g.edges()[e].v);
    }
}

fn check_reachable<T: Real>(g: &GroupGraph<T>) -> Result<()> {
    let (dist, _) = g.shortest_paths(&g.groups()[0]);
    for (k, members) in g.groups().iter().enumerate() {
        if members.iter().all(|&v| !dist[v].is_finite()) {
            return Err(TspnError::NoFeasibleTree(k));
        }
    }
    Ok(())
}

/// Spanning tree of the chosen edges (cheapest first), then drops leaves
/// whose groups are all covered elsewhere.
fn finish<T: Real>(g: &GroupGraph<T>, root: usize, chosen: &[usize]) -> SteinerTree<T> {
    let mut order = chosen.to_vec();
    order.sort_by(|&a, &b| g.edges()[a].weight.partial_cmp(&g.edges()[b].weight).unwrap().then(a.cmp(&b)));
    let mut uf = UnionFind::new(g.num_vertices());
    let mut keep: Vec<usize> = order.into_iter().filter(|&e| uf.union(g.edges()[e].u, g.edges()[e].v)).collect();

    let mut cover = vec![0usize; g.groups().len()];
    let mut degree = vec![0usize; g.num_vertices()];
    let tree = SteinerTree { edges: keep.clone(), root, length: T::zero() };
    for v in tree.vertices(g) {
        for &k in g.groups_of(v) {
            cover[k] += 1;
        }
    }
    for &e in &keep {
        degree[g.edges()[e].u] += 1;
        degree[g.edges()[e].v] += 1;
    }
    let mut alive = vec![true; g.edges().len()];
    let mut survivor = root;
    loop {
        let mut changed = false;
        for &e in &keep {
            if !alive[e] {
                continue;
            }
            let edge = &g.edges()[e];
            for leaf in [edge.u, edge.v] {
                if degree[leaf] == 1 && g.groups_of(leaf).iter().all(|&k| cover[k] > 1) {
                    alive[e] = false;
                    degree[edge.u] -= 1;
                    degree[edge.v] -= 1;
                    for &k in g.groups_of(leaf) {
                        cover[k] -= 1;
                    }
                    survivor = edge.other(leaf);
                    changed = true;
                    break;
                }
            }
        }
        if !changed {
            break;
        }
    }
    keep.retain(|&e| alive[e]);
    let root = match keep.first() {
        Some(&e) if degree[root] == 0 => g.edges()[e].u,
        Some(_) => root,
        None => survivor,
    };
    let length = keep.iter().map(|&e| g.edges()[e].weight).sum();
    SteinerTree { edges: keep, root, length }
}

/// Preorder walk of the tree from its root, keeping a vertex only when it
/// reaches a group not yet visited.
pub fn tree_to_tour<T: Real>(t: &SteinerTree<T>, g: &GroupGraph<T>) -> Tour<T> {
    let mut adj: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for &e in &t.edges {
        let edge = &g.edges()[e];
        adj.entry(edge.u).or_default().push(edge.v);
        adj.entry(edge.v).or_default().push(edge.u);
    }
    let mut covered = vec![false; g.groups().len()];
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![t.root];
    let mut out = Vec::new();
    while let Some(v) = stack.pop() {
        if !seen.insert(v) {
            continue;
        }
        if g.groups_of(v).iter().any(|&k| !covered[k]) || out.is_empty() {
            g.groups_of(v).iter().for_each(|&k| covered[k] = true);
            out.push(g.vertices()[v].clone());
        }
        if let Some(ns) = adj.get(&v) {
            stack.extend(ns.iter().rev().copied());
        }
    }
    Tour::new(out).expect("tree has a vertex").dedup()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn triangle(groups: Vec<Vec<usize>>) -> GroupGraph<f64> {
        let s = 3f64.sqrt() / 2.0;
        let pts = vec![Point::from_f64(&[0., 0.]), Point::from_f64(&[1., 0.]), Point::from_f64(&[0.5, s])];
        GroupGraph::new(pts, &[(0, 1), (1, 2), (0, 2)], groups).unwrap()
    }

    #[test]
    fn triangle_examples() {
        let g = triangle(vec![vec![0], vec![1], vec![2]]);
        for t in [group_steiner_exact(&g).unwrap(), group_steiner_greedy(&g).unwrap()] {
            assert!((t.length - 2.0).abs() < 1e-12);
            assert!(t.is_valid(&g));
        }
        let g = triangle(vec![vec![0, 1], vec![2]]);
        let t = group_steiner_exact(&g).unwrap();
        assert!((t.length - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unreachable_group_is_reported() {
        let pts: Vec<Point<f64>> = vec![Point::from_f64(&[0., 0.]), Point::from_f64(&[1., 0.]), Point::from_f64(&[5., 0.])];
        let g = GroupGraph::new(pts, &[(0, 1)], vec![vec![0], vec![2]]).unwrap();
        assert_eq!(group_steiner_exact(&g), Err(TspnError::NoFeasibleTree(1)));
        assert_eq!(group_steiner_greedy(&g), Err(TspnError::NoFeasibleTree(1)));
    }

    #[test]
    fn single_vertex_tree_gives_point_tour() {
        let g = triangle(vec![vec![1], vec![1, 2]]);
        let t = group_steiner_exact(&g).unwrap();
        assert!(t.edges.is_empty() && t.root == 1);
        let tour = tree_to_tour(&t, &g);
        assert_eq!(tour.len(), 1);
        assert_eq!(tour.length(), 0.0);
    }
}
