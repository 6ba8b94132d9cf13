use std::time::Instant;

use anyhow::bail;
use serde::{Deserialize, Serialize};
use tspn_core::balls::solve_balls;
use tspn_core::disks::solve_disks;
use tspn_core::geom::Tour;
use tspn_core::hyperplanes::{coarse_orientation_net, solve_hyperplanes, solve_hyperplanes_with_net};
use tspn_core::lines::{solve_lines, SteinerSolver};
use tspn_core::report::RatioBudget;
use tspn_core::TspnError;

use crate::io::{Instance, Kind};
use crate::UsageError;

/// Frames used for `d >= 4` when the requested eps needs too large a net.
pub const COARSE_NET_FRAMES: usize = 2000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub instance_id: String,
    pub algorithm: String,
    pub tour_length: f64,
    /// 0 when nothing better is known.
    pub lower_bound: f64,
    pub oracle_opt: Option<f64>,
    pub ratio_budget: f64,
    pub additive_budget: f64,
    /// `tour_length <= ratio_budget * max(lower_bound, oracle_opt) + additive_budget`.
    pub budget_satisfied: bool,
    /// Whether the budget is proven against `lower_bound` (as opposed to the
    /// unknown optimum only).
    pub certified: bool,
    pub wall_time: f64,
    pub backend: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RatioReport {
    pub fn reference(&self) -> f64 {
        self.lower_bound.max(self.oracle_opt.unwrap_or(0.0))
    }

    pub fn with_oracle(mut self, opt: f64) -> Self {
        self.oracle_opt = Some(opt);
        self.recheck();
        self
    }

    fn recheck(&mut self) {
        let budget = RatioBudget { multiplier: self.ratio_budget, additive: self.additive_budget };
        self.budget_satisfied = budget.satisfied(self.tour_length, self.reference());
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub tour: Tour<f64>,
    pub report: RatioReport,
}

/// Runs the algorithm for `algo` on `instance`. `eps` only matters for
/// hyperplanes; `seed` drives the randomized LP.
pub fn solve(instance: &Instance, algo: Kind, eps: f64, seed: u64, instance_id: &str) -> anyhow::Result<Solution> {
    if instance.kind() != algo {
        bail!(UsageError(format!("algorithm {algo} cannot run on a {} instance", instance.kind())));
    }
    let start = Instant::now();
    let mut notes = Vec::new();
    let (tour, lower_bound, budget, certified, backend) = match instance {
        Instance::Hyperplanes(planes) => {
            if !(eps > 0.0) {
                bail!(UsageError("--eps must be positive".into()));
            }
            let r = match solve_hyperplanes(planes, eps, seed) {
                Err(TspnError::LimitsExceeded(_)) => {
                    let d = instance.dim();
                    let net = coarse_orientation_net(d, COARSE_NET_FRAMES)?;
                    notes.push(format!("orientation net for eps={eps} too large in d={d}; used {} frames", net.len()));
                    solve_hyperplanes_with_net(planes, &net, seed)?
                }
                r => r?,
            };
            notes.push(format!("net of {} frames, certified eps {}", r.net_size, r.eps));
            let budget = RatioBudget::multiplicative(r.ratio_budget);
            (r.tour, r.lower_bound, budget, true, "box-lp".to_string())
        }
        Instance::Lines(lines) => {
            let r = solve_lines(lines)?;
            let solver = match r.solver {
                SteinerSolver::Exact => "exact-group-steiner",
                SteinerSolver::Greedy => "greedy-group-steiner",
            };
            notes.push(format!("group graph: {} vertices, {} edges", r.graph_vertices, r.graph_edges));
            notes.push("budget holds against the optimum, not against lower_bound".into());
            if r.ratio_budget.is_none() {
                notes.push("greedy Steiner tree: no ratio guarantee".into());
            }
            let budget = RatioBudget::multiplicative(tspn_core::lines::lines_ratio_budget());
            (r.tour, r.lower_bound, budget, false, solver.to_string())
        }
        Instance::Disks(disks) => {
            let r = solve_disks(disks, None)?;
            notes.push(format!("independent set of {} disks", r.k()));
            if r.disjoint {
                notes.push("pairwise disjoint input: tour through the centers".into());
            }
            (r.tour, r.lower_bound, r.budget, true, r.backend.name().to_string())
        }
        Instance::Balls(balls) => {
            let r = solve_balls(balls, None)?;
            notes.push(format!("independent set of {} balls", r.k()));
            if r.odd_fallback {
                notes.push("odd k: lattice path walked there and back at the first ball, +18*sqrt(3) additive".into());
            }
            (r.tour, r.lower_bound, r.budget, true, r.backend.name().to_string())
        }
    };
    let mut report = RatioReport {
        instance_id: instance_id.to_string(),
        algorithm: algo.to_string(),
        tour_length: tour.length(),
        lower_bound,
        oracle_opt: None,
        ratio_budget: budget.multiplier,
        additive_budget: budget.additive,
        budget_satisfied: false,
        certified,
        wall_time: start.elapsed().as_secs_f64(),
        backend,
        seed,
        notes,
    };
    report.recheck();
    Ok(Solution { tour, report })
}
