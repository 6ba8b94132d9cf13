//! Tours touching a set of lines in `R^3` via group Steiner trees in `G_L`.

pub mod build;
pub mod graph;
pub mod lemmas;
pub mod net;
pub mod spanner;
pub mod steiner;
pub mod witness;

pub use build::{build_group_graph, LineGraph, SpannerPlane};
pub use graph::{Edge, EdgeKind, GroupGraph};
pub use lemmas::{check_lemma_mt, check_lemma_par, near_parallel_constant, transversal_detour_constant};
pub use net::{build_direction_net, DirectionNet};
pub use spanner::{greedy_2_spanner, SPANNER_STRETCH};
pub use steiner::{
    group_steiner_exact, group_steiner_greedy, tree_to_tour, SteinerSolver, SteinerTree, EXACT_MAX_GROUPS,
    EXACT_MAX_VERTICES,
};
pub use witness::{witness_in, witness_tree, WitnessTree, WITNESS_FACTOR};

use crate::error::{Result, TspnError};
use crate::geom::distance::line_line_distance;
use crate::geom::{Line, Tour};
use crate::scalar::{lit, Real};

#[derive(Clone, Debug)]
pub struct LinesTspResult<T> {
    pub tour: Tour<T>,
    pub tree_length: T,
    /// Twice the largest distance between two lines.
    pub lower_bound: T,
    pub solver: SteinerSolver,
    /// Tour length over the optimum is at most this; only known when the
    /// tree is an exact group Steiner tree.
    pub ratio_budget: Option<T>,
    pub graph_vertices: usize,
    pub graph_edges: usize,
}

/// `2 * WITNESS_FACTOR`: doubling an optimal tree that is at most 68 times the optimum.
pub fn lines_ratio_budget<T: Real>() -> T {
    lit::<T>(2.0 * WITNESS_FACTOR)
}

pub fn lines_lower_bound<T: Real>(lines: &[Line<T>]) -> T {
    let mut best = T::zero();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            best = best.max(line_line_distance(a, b));
        }
    }
    best + best
}

/// Exact solver when the instance fits its limits, greedy otherwise.
pub fn solve_lines<T: Real>(lines: &[Line<T>]) -> Result<LinesTspResult<T>> {
    solve_lines_with(lines, None)
}

pub fn solve_lines_with<T: Real>(lines: &[Line<T>], solver: Option<SteinerSolver>) -> Result<LinesTspResult<T>> {
    match lines.len() {
        0 => return Err(TspnError::InvalidInput("no lines".into())),
        1 => {
            crate::error::check_dim(3, lines[0].dim())?;
            return Ok(LinesTspResult {
                tour: Tour::single(lines[0].anchor().clone()),
                tree_length: T::zero(),
                lower_bound: T::zero(),
                solver: solver.unwrap_or(SteinerSolver::Exact),
                ratio_budget: Some(lines_ratio_budget()),
                graph_vertices: 1,
                graph_edges: 0,
            });
        }
        _ => {}
    }
    let lg = build_group_graph(lines)?;
    let g = &lg.graph;
    let fits = lines.len() <= EXACT_MAX_GROUPS && g.num_vertices() <= EXACT_MAX_VERTICES;
    let solver = solver.unwrap_or(if fits { SteinerSolver::Exact } else { SteinerSolver::Greedy });
    let tree = match solver {
        SteinerSolver::Exact => group_steiner_exact(g)?,
        SteinerSolver::Greedy => group_steiner_greedy(g)?,
    };
    Ok(LinesTspResult {
        tour: tree_to_tour(&tree, g),
        tree_length: tree.length,
        lower_bound: lines_lower_bound(lines),
        solver,
        ratio_budget: (solver == SteinerSolver::Exact).then(lines_ratio_budget),
        graph_vertices: g.num_vertices(),
        graph_edges: g.edges().len(),
    })
}
