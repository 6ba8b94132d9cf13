//! Geometric graphs whose vertices are partitioned into (overlapping) groups.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Result, TspnError};
use crate::geom::Point;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Minimum transversal between two lines.
    Transversal,
    /// Spanner edge inside a plane orthogonal to a net direction.
    Spanner,
    /// Segment between consecutive vertices of one line.
    AlongLine,
    /// Edge of a hand-built graph.
    Plain,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<T> {
    pub u: usize,
    pub v: usize,
    pub weight: T,
    pub kind: EdgeKind,
}

impl<T> Edge<T> {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected graph with Euclidean edge weights and vertex groups.
#[derive(Clone, Debug)]
pub struct GroupGraph<T> {
    vertices: Vec<Point<T>>,
    edges: Vec<Edge<T>>,
    groups: Vec<Vec<usize>>,
    adj: Vec<Vec<(usize, usize)>>,
    member_of: Vec<Vec<usize>>,
}

impl<T: Real> GroupGraph<T> {
    /// Edge weights are the Euclidean lengths. Every group must be nonempty.
    pub fn new(vertices: Vec<Point<T>>, edges: &[(usize, usize)], groups: Vec<Vec<usize>>) -> Result<Self> {
        let edges = edges.iter().map(|&(u, v)| (u, v, EdgeKind::Plain)).collect::<Vec<_>>();
        Self::with_kinds(vertices, &edges, groups)
    }

    pub fn with_kinds(
        vertices: Vec<Point<T>>,
        edges: &[(usize, usize, EdgeKind)],
        groups: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut adj = vec![Vec::new(); n];
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v, kind) in edges {
            if u >= n || v >= n {
                return Err(TspnError::InvalidInput(format!("edge ({u}, {v}) out of range")));
            }
            let id = out.len();
            adj[u].push((v, id));
            if u != v {
                adj[v].push((u, id));
            }
            out.push(Edge { u, v, weight: vertices[u].dist(&vertices[v]), kind });
        }
        let mut member_of = vec![Vec::new(); n];
        for (g, members) in groups.iter().enumerate() {
            if members.is_empty() {
                return Err(TspnError::InvalidInput(format!("group {g} is empty")));
            }
            for &v in members {
                if v >= n {
                    return Err(TspnError::InvalidInput(format!("group {g} names vertex {v}")));
                }
                member_of[v].push(g);
            }
        }
        Ok(GroupGraph { vertices, edges: out, groups, adj, member_of })
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// `(neighbor, edge id)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Groups containing vertex `v`.
    pub fn groups_of(&self, v: usize) -> &[usize] {
        &self.member_of[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Multi-source Dijkstra; returns distances and the edge each vertex was reached by.
    pub fn shortest_paths(&self, sources: &[usize]) -> (Vec<T>, Vec<Option<usize>>) {
        let mut dist = vec![T::infinity(); self.vertices.len()];
        let mut pred = vec![None; self.vertices.len()];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            dist[s] = T::zero();
            heap.push(MinItem(T::zero(), s));
        }
        while let Some(MinItem(d, v)) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(w, e) in &self.adj[v] {
                let nd = d + self.edges[e].weight;
                if nd < dist[w] {
                    dist[w] = nd;
                    pred[w] = Some(e);
                    heap.push(MinItem(nd, w));
                }
            }
        }
        (dist, pred)
    }

    /// Edges of the path ending at `v` in a predecessor forest.
    pub fn path_to(&self, pred: &[Option<usize>], mut v: usize) -> Vec<usize> {
        let mut path = Vec::new();
        while let Some(e) = pred[v] {
            path.push(e);
            v = self.edges[e].other(v);
        }
        path.reverse();
        path
    }
}

/// Heap entry ordered so that `BinaryHeap` pops the smallest key first.
#[derive(Clone, Copy, Debug)]
pub(crate) struct MinItem<T>(pub T, pub usize);

impl<T: PartialOrd> PartialEq for MinItem<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: PartialOrd> Eq for MinItem<T> {}

impl<T: PartialOrd> PartialOrd for MinItem<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: PartialOrd> Ord for MinItem<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .partial_cmp(&self.0)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.1.cmp(&self.1))
    }
}
