//! The graph `G_L` over a set of lines in `R^3`.

use std::collections::HashMap;

use crate::error::{check_dim, Result, TspnError};
use crate::geom::{min_transversal, Line, Point};
use crate::lines::graph::{EdgeKind, GroupGraph, MinItem};
use crate::lines::net::{build_direction_net, DirectionNet};
use crate::lines::spanner::greedy_2_spanner;
use crate::scalar::{lit, Real};

/// Points of the lines of one bundle in one orthogonal plane, with the
/// spanner built on them.
#[derive(Clone, Debug)]
pub struct SpannerPlane {
    /// Vertex on each line, `None` if the line is outside the bundle.
    pub on_line: Vec<Option<usize>>,
    /// Edge ids in the group graph.
    pub edges: Vec<usize>,
}

/// Group graph of a line set together with how it was assembled.
#[derive(Clone, Debug)]
pub struct LineGraph<T> {
    pub graph: GroupGraph<T>,
    pub net: DirectionNet<T>,
    lines: Vec<Line<T>>,
    along: Vec<Vec<usize>>,
    transversals: HashMap<(usize, usize), (usize, usize)>,
    planes: HashMap<(usize, usize), SpannerPlane>,
    edge_ids: HashMap<(usize, usize), usize>,
}

impl<T: Real> LineGraph<T> {
    pub fn lines(&self) -> &[Line<T>] {
        &self.lines
    }

    /// Vertices of line `l` in order of increasing parameter.
    pub fn along(&self, l: usize) -> &[usize] {
        &self.along[l]
    }

    /// Endpoints `(on a, on b)` of the minimum transversal of lines `a != b`.
    pub fn transversal(&self, a: usize, b: usize) -> (usize, usize) {
        if a < b {
            self.transversals[&(a, b)]
        } else {
            let (x, y) = self.transversals[&(b, a)];
            (y, x)
        }
    }

    /// Transversal endpoints lying on line `l`.
    pub fn transversal_endpoints(&self, l: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.lines.len()).filter(|&m| m != l).map(|m| self.transversal(l, m).0).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Plane through vertex `root` orthogonal to net center `j`.
    pub fn plane(&self, root: usize, j: usize) -> Option<&SpannerPlane> {
        self.planes.get(&(root, j))
    }

    pub fn planes(&self) -> impl Iterator<Item = (&(usize, usize), &SpannerPlane)> {
        self.planes.iter()
    }

    /// Edge id joining `u` and `v`, if any.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_ids.get(&(u.min(v), u.max(v))).copied()
    }

    /// Edges walking line `l` from vertex `from` to vertex `to`.
    pub fn along_path(&self, l: usize, from: usize, to: usize) -> Result<Vec<usize>> {
        let pos = |v: usize| {
            self.along[l]
                .iter()
                .position(|&x| x == v)
                .ok_or_else(|| TspnError::InvalidInput(format!("vertex {v} is not on line {l}")))
        };
        let (a, b) = (pos(from)?, pos(to)?);
        let (lo, hi) = (a.min(b), a.max(b));
        Ok((lo..hi)
            .map(|i| self.edge_between(self.along[l][i], self.along[l][i + 1]).expect("consecutive vertices joined"))
            .collect())
    }

    /// Shortest path between two vertices of a spanner plane using only its edges.
    pub fn plane_path(&self, plane: &SpannerPlane, from: usize, to: usize) -> Result<Vec<usize>> {
        if from == to {
            return Ok(Vec::new());
        }
        let mut adj: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for &e in &plane.edges {
            let edge = &self.graph.edges()[e];
            adj.entry(edge.u).or_default().push((edge.v, e));
            adj.entry(edge.v).or_default().push((edge.u, e));
        }
        let mut dist: HashMap<usize, T> = HashMap::from([(from, T::zero())]);
        let mut pred: HashMap<usize, usize> = HashMap::new();
        let mut heap = std::collections::BinaryHeap::from([MinItem(T::zero(), from)]);
        while let Some(MinItem(d, v)) = heap.pop() {
            if v == to {
                break;
            }
            if d > dist[&v] {
                continue;
            }
            for &(w, e) in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                let nd = d + self.graph.edges()[e].weight;
                if dist.get(&w).is_none_or(|&old| nd < old) {
                    dist.insert(w, nd);
                    pred.insert(w, e);
                    heap.push(MinItem(nd, w));
                }
            }
        }
        if !pred.contains_key(&to) {
            return Err(TspnError::Disconnected);
        }
        let mut path = Vec::new();
        let mut v = to;
        while v != from {
            let e = pred[&v];
            path.push(e);
            v = self.graph.edges()[e].other(v);
        }
        path.reverse();
        Ok(path)
    }
}

struct Builder<T> {
    lines: Vec<Line<T>>,
    points: Vec<Point<T>>,
    /// `(parameter, vertex)` per line, sorted.
    on_line: Vec<Vec<(T, usize)>>,
    edges: Vec<(usize, usize, EdgeKind)>,
    edge_ids: HashMap<(usize, usize), usize>,
}

impl<T: Real> Builder<T> {
    fn slot(&self, l: usize, t: T) -> std::result::Result<usize, usize> {
        let tol = lit::<T>(1e-9) * (T::one() + t.abs());
        let list = &self.on_line[l];
        let i = list.partition_point(|&(s, _)| s < t - tol);
        if i < list.len() && (list[i].0 - t).abs() <= tol {
            Ok(i)
        } else {
            Err(i)
        }
    }

    /// Vertex of line `l` at parameter `t`, created if absent.
    fn vertex_at(&mut self, l: usize, t: T) -> usize {
        match self.slot(l, t) {
            Ok(i) => self.on_line[l][i].1,
            Err(i) => {
                let v = self.points.len();
                self.points.push(self.lines[l].at(t));
                self.on_line[l].insert(i, (t, v));
                v
            }
        }
    }

    /// Makes existing vertex `v` (a point of line `l`) a vertex of `l` too.
    /// If `l` already has a vertex there, the two are joined by an edge.
    fn attach(&mut self, l: usize, v: usize) -> usize {
        let t = self.lines[l].param_of(&self.points[v]);
        match self.slot(l, t) {
            Ok(i) => {
                let w = self.on_line[l][i].1;
                self.edge(v, w, EdgeKind::Transversal);
                w
            }
            Err(i) => {
                self.on_line[l].insert(i, (t, v));
                v
            }
        }
    }

    fn edge(&mut self, u: usize, v: usize, kind: EdgeKind) -> Option<usize> {
        if u == v {
            return None;
        }
        let key = (u.min(v), u.max(v));
        if let Some(&id) = self.edge_ids.get(&key) {
            return Some(id);
        }
        let id = self.edges.len();
        self.edges.push((u, v, kind));
        self.edge_ids.insert(key, id);
        Some(id)
    }
}

/// Builds `G_L`: all pairwise minimum transversals, the spanners in the
/// planes through their endpoints orthogonal to each net direction, and the
/// segments between consecutive vertices of every line. Group `i` is the
/// vertex set of `lines[i]`.
pub fn build_group_graph<T: Real>(lines: &[Line<T>]) -> Result<LineGraph<T>> {
    let n = lines.len();
    if n < 2 {
        return Err(TspnError::InvalidInput("at least two lines required".into()));
    }
    for l in lines {
        check_dim(3, l.dim())?;
    }
    let net = build_direction_net::<T>(3)?;
    let mut b = Builder {
        lines: lines.to_vec(),
        points: Vec::new(),
        on_line: vec![Vec::new(); n],
        edges: Vec::new(),
        edge_ids: HashMap::new(),
    };

    let mut transversals = HashMap::new();
    let mut endpoints = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            let tr = min_transversal(&lines[i], &lines[k]);
            let u = b.vertex_at(i, lines[i].param_of(&tr.on_a));
            let coincide = tr.length() <= lit::<T>(1e-9) * (T::one() + tr.on_a.norm());
            let v = if coincide { b.attach(k, u) } else { b.vertex_at(k, lines[k].param_of(&tr.on_b)) };
            b.edge(u, v, EdgeKind::Transversal);
            transversals.insert((i, k), (u, v));
            endpoints.push((u, i));
            endpoints.push((v, k));
        }
    }
    endpoints.sort_unstable();
    endpoints.dedup();

    let bundles: Vec<Vec<usize>> = (0..net.len())
        .map(|j| (0..n).filter(|&l| net.contains(j, lines[l].dir())).collect())
        .collect();
    let mut planes = HashMap::new();
    for &(root, l) in &endpoints {
        for (j, bundle) in bundles.iter().enumerate() {
            if !bundle.contains(&l) || planes.contains_key(&(root, j)) {
                continue;
            }
            let normal = net.centers()[j].unit().clone();
            let offset = normal.dot(&b.points[root]);
            let mut on_line = vec![None; n];
            let mut verts: Vec<usize> = Vec::new();
            for &m in bundle {
                let v = if m == l {
                    root
                } else {
                    match lines[m].intersect_plane(&normal, offset) {
                        Some(t) => b.vertex_at(m, t),
                        None => continue,
                    }
                };
                on_line[m] = Some(v);
                if !verts.contains(&v) {
                    verts.push(v);
                }
            }
            let pts: Vec<Point<T>> = verts.iter().map(|&v| b.points[v].clone()).collect();
            let edges = greedy_2_spanner(&pts)
                .into_iter()
                .filter_map(|(x, y)| b.edge(verts[x], verts[y], EdgeKind::Spanner))
                .collect();
            planes.insert((root, j), SpannerPlane { on_line, edges });
        }
    }

    let mut along = Vec::with_capacity(n);
    for l in 0..n {
        let vs: Vec<usize> = b.on_line[l].iter().map(|&(_, v)| v).collect();
        for w in vs.windows(2) {
            b.edge(w[0], w[1], EdgeKind::AlongLine);
        }
        along.push(vs);
    }
    let groups = along.clone();
    let graph = GroupGraph::with_kinds(b.points, &b.edges, groups)?;
    Ok(LineGraph { graph, net, lines: b.lines, along, transversals, planes, edge_ids: b.edge_ids })
}
