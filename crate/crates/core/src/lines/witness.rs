//! Group Steiner tree in `G_L` built from a given cycle through the lines.

use crate::error::{Result, TspnError};
use crate::geom::{angle_between, Line, Point};
use crate::lines::build::{build_group_graph, LineGraph};
use crate::scalar::{lit, Real};

/// Ratio between the witness length and the cycle length it is built from.
pub const WITNESS_FACTOR: f64 = 68.0;

#[derive(Clone, Debug)]
pub struct WitnessTree<T> {
    /// Edge ids in the group graph (no repeats).
    pub edges: Vec<usize>,
    pub length: T,
    /// First line index of each block.
    pub blocks: Vec<usize>,
    /// Vertex reached on each line.
    pub visited: Vec<usize>,
}

/// Builds `G_L` for `lines` and the witness for the cycle visiting
/// `points[i]` on `lines[i]` in index order.
pub fn witness_tree<T: Real>(lines: &[Line<T>], points: &[Point<T>]) -> Result<(LineGraph<T>, WitnessTree<T>)> {
    let g = build_group_graph(lines)?;
    let w = witness_in(&g, points)?;
    Ok((g, w))
}

/// Witness for the cycle through `points[i] in lines[i]` inside an existing `G_L`.
pub fn witness_in<T: Real>(g: &LineGraph<T>, points: &[Point<T>]) -> Result<WitnessTree<T>> {
    let lines = g.lines();
    let n = lines.len();
    if points.len() != n {
        return Err(TspnError::InvalidInput(format!("{} points for {n} lines", points.len())));
    }
    let split = T::PI() / lit(12.0);
    let mut blocks = vec![0];
    for i in 1..n {
        if angle_between(lines[i].dir(), lines[*blocks.last().unwrap()].dir()) > split {
            blocks.push(i);
        }
    }
    let k = blocks.len();
    let mut used = vec![false; g.graph.edges().len()];
    let mut take = |es: &[usize]| es.iter().for_each(|&e| used[e] = true);

    // backbone: s_b on block b, t_{b+1} on block b+1
    let mut s = vec![usize::MAX; k];
    let mut t = vec![usize::MAX; k];
    for b in 0..k - 1 {
        let (x, y) = g.transversal(blocks[b], blocks[b + 1]);
        s[b] = x;
        t[b + 1] = y;
        if let Some(e) = g.edge_between(x, y) {
            take(&[e]);
        }
    }
    for b in 1..k - 1 {
        take(&g.along_path(blocks[b], t[b], s[b])?);
    }

    let mut visited = vec![usize::MAX; n];
    for b in 0..k {
        let first = blocks[b];
        let end = if b + 1 < k { blocks[b + 1] } else { n };
        let mut q = if b + 1 < k {
            s[b]
        } else if k > 1 {
            t[b]
        } else {
            let ends = g.transversal_endpoints(first);
            let near = |v: &usize| g.graph.vertices()[*v].dist(&points[first]);
            *ends.iter().min_by(|a, b| near(a).partial_cmp(&near(b)).unwrap()).expect("n >= 2")
        };
        let (j, _) = g.net.nearest(lines[first].dir());
        let mut root = q;
        visited[first] = q;
        for i in first..end - 1 {
            let plane = g.plane(root, j).ok_or_else(|| missing(root, j))?;
            let r = plane.on_line[i + 1].ok_or_else(|| missing(root, j))?;
            let gap = points[i].dist(&points[i + 1]);
            let vs = g.graph.vertices();
            if vs[q].dist(&vs[r]) <= lit::<T>(3.0) * gap * (T::one() + lit(1e-12)) {
                take(&g.plane_path(plane, q, r)?);
                q = r;
            } else {
                let (_, hat) = g.transversal(i, i + 1);
                let next = g.plane(hat, j).ok_or_else(|| missing(hat, j))?;
                let u = next.on_line[i].ok_or_else(|| missing(hat, j))?;
                take(&g.along_path(i, q, u)?);
                take(&g.plane_path(next, u, hat)?);
                root = hat;
                q = hat;
            }
            visited[i + 1] = q;
        }
    }

    let edges: Vec<usize> = (0..used.len()).filter(|&e| used[e]).collect();
    let length = edges.iter().map(|&e| g.graph.edges()[e].weight).sum();
    Ok(WitnessTree { edges, length, blocks, visited })
}

fn missing(root: usize, j: usize) -> TspnError {
    TspnError::InvalidInput(format!("no spanner plane at vertex {root} for direction {j}"))
}
