//! Desk-scale benchmark suites behind `tspn bench`.

use rand::Rng;
use serde::Serialize;
use tspn_core::balls::{build_gamma, check_gamma_coverage};
use tspn_core::geom::{Ball, Point};
use tspn_core::hyperplanes::{build_orientation_net, min_enclosing_width_sum};
use tspn_core::lines::{
    check_lemma_mt, check_lemma_par, group_steiner_exact, group_steiner_greedy, transversal_detour_constant,
    witness_tree, GroupGraph,
};
use tspn_core::packing::{check_area_packing, check_volume_packing};
use tspn_core::point_tsp::{group_tsp_exact, held_karp, mst_double_tour};
use tspn_core::verify::verify_tour;

use crate::generate::{random_hyperplanes, random_lines, random_unit_balls, rng, uniform_point, BALL_SIDE, DISK_SIDE};
use crate::io::{Instance, Kind};
use crate::oracle::{permutation_tsp, subset_steiner};
use crate::sample::{
    cycle_length, detour_config, parallel_config, random_cycle, random_polygon, random_tree, upper_offset,
};
use crate::solve::{solve, RatioReport};

/// Boundary samples per disk for the discretized optimum.
pub const DISK_ORACLE_SAMPLES: usize = 64;
/// Net resolution for the enclosing-box check.
pub const POLYGON_NET_EPS: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Lemmas,
    Ratios,
    Oracles,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub violations: usize,
    /// Largest observed value of the checked quantity over its bound.
    pub worst_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaSuite {
    pub seed: u64,
    pub checks: Vec<Check>,
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioEntry {
    #[serde(flatten)]
    pub report: RatioReport,
    pub valid: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioSuite {
    pub seed: u64,
    pub reports: Vec<RatioEntry>,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRow {
    pub name: String,
    pub instances: usize,
    pub max_abs_diff: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSuite {
    pub seed: u64,
    pub rows: Vec<OracleRow>,
    pub mismatches: usize,
}

struct Tally {
    name: &'static str,
    samples: usize,
    violations: usize,
    worst: f64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, samples: 0, violations: 0, worst: 0.0 }
    }

    fn add(&mut self, ok: bool, ratio: f64) {
        self.samples += 1;
        self.violations += usize::from(!ok);
        self.worst = self.worst.max(ratio);
    }

    fn done(self) -> Check {
        Check { name: self.name.into(), samples: self.samples, violations: self.violations, worst_ratio: self.worst }
    }
}

pub fn lemmas(seed: u64) -> anyhow::Result<LemmaSuite> {
    let mut rng = rng(seed);
    let mut checks = Vec::new();

    let mut t = Tally::new("transversal detour");
    while t.samples < 10_000 {
        if let Some(c) = detour_config(&mut rng) {
            t.add(check_lemma_mt(&c.l1, &c.l2, &c.p1, &c.p2, c.phi0)?, 0.0);
        }
    }
    checks.push(t.done());

    let mut t = Tally::new("near-parallel transversal");
    while t.samples < 10_000 {
        let c = parallel_config(&mut rng);
        if let Ok(ok) = check_lemma_par(&c.l1, &c.l2, &c.p1, &c.p2, c.level) {
            t.add(ok, 0.0);
        }
    }
    checks.push(t.done());

    let mut t = Tally::new("detour constant at pi/12 below 9.4");
    let c: f64 = transversal_detour_constant(std::f64::consts::PI / 12.0);
    t.add(c <= 9.4, c / 9.4);
    checks.push(t.done());

    let mut t = Tally::new("witness tree within 68 len(C)");
    for _ in 0..100 {
        let n = rng.random_range(2..=10);
        let (lines, pts) = random_cycle(&mut rng, n);
        let (lg, w) = witness_tree(&lines, &pts)?;
        let ratio = w.length / cycle_length(&pts).max(1e-300);
        let touches = lg.graph.groups().iter().enumerate().all(|(l, g)| g.contains(&w.visited[l]));
        t.add(w.length <= 68.0 * cycle_length(&pts) + 1e-9 && touches, ratio / 68.0);
    }
    checks.push(t.done());

    let mut t = Tally::new("enclosing box of closed polygons");
    let net = build_orientation_net::<f64>(3, POLYGON_NET_EPS)?;
    for _ in 0..100 {
        let poly = random_polygon(&mut rng, 12, 3);
        let bound = 3f64.sqrt() / 2.0 * cycle_length(&poly) * (1.0 + net.covering_radius());
        let w = min_enclosing_width_sum(&poly, &net);
        t.add(w <= bound + 1e-9, w / bound);
    }
    checks.push(t.done());

    let mut t = Tally::new("lattice coverage of upper neighbors");
    let gamma = build_gamma::<f64>();
    for _ in 0..100_000 {
        t.add(check_gamma_coverage(&gamma, &upper_offset(&mut rng))?, 0.0);
    }
    checks.push(t.done());

    let mut t = Tally::new("area of tree neighborhoods");
    for _ in 0..5 {
        let (pts, edges) = random_tree(&mut rng, 8, 2, 5.0);
        let c = check_area_packing(&pts, &edges, rng.random_range(0.1..2.0), 100_000, rng.random())?;
        t.add(c.holds, c.estimate / c.bound);
    }
    checks.push(t.done());

    let mut t = Tally::new("volume of tree neighborhoods");
    for _ in 0..5 {
        let (pts, edges) = random_tree(&mut rng, 8, 3, 5.0);
        let c = check_volume_packing(&pts, &edges, rng.random_range(0.1..2.0), 100_000, rng.random())?;
        t.add(c.holds, c.estimate / c.bound);
    }
    checks.push(t.done());

    let violations = checks.iter().map(|c| c.violations).sum();
    Ok(LemmaSuite { seed, checks, violations })
}

/// Optimum of a disk instance over tours through boundary samples; an upper
/// estimate of the true optimum.
pub fn disk_oracle(disks: &[Ball<f64>], samples: usize) -> anyhow::Result<f64> {
    let groups: Vec<Vec<Point<f64>>> = disks
        .iter()
        .map(|d| {
            (0..samples)
                .map(|i| {
                    let t = std::f64::consts::TAU * i as f64 / samples as f64;
                    let c = d.center();
                    Point::from_f64(&[c[0] + d.radius() * t.cos(), c[1] + d.radius() * t.sin()])
                })
                .collect()
        })
        .collect();
    Ok(group_tsp_exact(&groups)?.length())
}

pub fn ratios(seed: u64) -> anyhow::Result<RatioSuite> {
    let mut rng = rng(seed);
    let mut reports = Vec::new();
    let mut run = |inst: Instance, eps: f64, id: String, oracle: bool| -> anyhow::Result<()> {
        let sol = solve(&inst, inst.kind(), eps, seed, &id)?;
        let valid = verify_tour(&sol.tour, &inst.neighborhoods(), 1e-7)?.is_valid();
        let report = match (&inst, oracle) {
            (Instance::Disks(d), true) => sol.report.with_oracle(disk_oracle(d, DISK_ORACLE_SAMPLES)?),
            _ => sol.report,
        };
        reports.push(RatioEntry { report, valid });
        Ok(())
    };
    for i in 0..5 {
        run(Instance::Hyperplanes(random_hyperplanes(&mut rng, 20, 2)), 0.05, format!("hyperplanes-2d-{i}"), false)?;
    }
    for i in 0..5 {
        run(Instance::Hyperplanes(random_hyperplanes(&mut rng, 20, 3)), 0.1, format!("hyperplanes-3d-{i}"), false)?;
    }
    for i in 0..5 {
        run(Instance::Lines(random_lines(&mut rng, 6)), 0.0, format!("lines-{i}"), false)?;
    }
    for i in 0..5 {
        run(Instance::Disks(random_unit_balls(&mut rng, 8, 2, DISK_SIDE)), 0.0, format!("disks-{i}"), true)?;
    }
    for i in 0..5 {
        run(Instance::Balls(random_unit_balls(&mut rng, 100, 3, BALL_SIDE)), 0.0, format!("balls-{i}"), false)?;
    }
    // lines budgets are not proven against the reported bound
    let failures = reports
        .iter()
        .filter(|e| !e.valid || (e.report.certified && !e.report.budget_satisfied))
        .count();
    Ok(RatioSuite { seed, reports, failures })
}

fn random_group_graph(rng: &mut impl Rng) -> anyhow::Result<GroupGraph<f64>> {
    let n = rng.random_range(4..=14);
    let pts: Vec<Point<f64>> = (0..n).map(|_| Point::from_f64(&uniform_point(rng, 2, 0.0, 10.0))).collect();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    for _ in 0..n {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b {
            edges.push((a, b));
        }
    }
    let g = rng.random_range(1..=8);
    let groups = (0..g)
        .map(|_| {
            let mut grp: Vec<usize> = (0..rng.random_range(1..=3)).map(|_| rng.random_range(0..n)).collect();
            grp.sort_unstable();
            grp.dedup();
            grp
        })
        .collect();
    Ok(GroupGraph::new(pts, &edges, groups)?)
}

fn row(name: &str, diffs: &[f64], ratios: &[f64]) -> OracleRow {
    let max = |v: &[f64]| v.iter().copied().reduce(f64::max);
    OracleRow {
        name: name.into(),
        instances: diffs.len().max(ratios.len()),
        max_abs_diff: max(diffs),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        max_ratio: max(ratios),
    }
}

pub fn oracles(seed: u64) -> anyhow::Result<OracleSuite> {
    let mut rng = rng(seed);
    let mut rows = Vec::new();
    let mut mismatches = 0;

    let (mut diffs, mut ratios) = (Vec::new(), Vec::new());
    for _ in 0..30 {
        let n = rng.random_range(2..=8);
        let pts: Vec<_> = (0..n).map(|_| Point::from_f64(&uniform_point(&mut rng, 2, 0.0, 10.0))).collect();
        let hk = held_karp(&pts)?.length();
        diffs.push((hk - permutation_tsp(&pts)).abs());
        let mst = mst_double_tour(&pts)?.length();
        ratios.push(if hk > 0.0 { mst / hk } else { 1.0 });
    }
    mismatches += diffs.iter().filter(|&&d| d > 1e-9).count() + ratios.iter().filter(|&&r| r > 2.0 + 1e-9).count();
    rows.push(row("held-karp vs permutations", &diffs, &[]));
    rows.push(row("mst-2opt over held-karp", &[], &ratios));

    let (mut diffs, mut ratios) = (Vec::new(), Vec::new());
    for _ in 0..30 {
        let g = random_group_graph(&mut rng)?;
        let exact = group_steiner_exact(&g)?.length;
        let greedy = group_steiner_greedy(&g)?.length;
        diffs.push((exact - subset_steiner(&g)).abs());
        ratios.push(if exact > 0.0 { greedy / exact } else { 1.0 });
    }
    mismatches += diffs.iter().filter(|&&d| d > 1e-9).count();
    rows.push(row("exact group steiner vs subsets", &diffs, &[]));
    rows.push(row("greedy over exact group steiner", &[], &ratios));

    let mut ratios = Vec::new();
    for _ in 0..5 {
        let disks = random_unit_balls(&mut rng, 6, 2, DISK_SIDE);
        let opt = disk_oracle(&disks, DISK_ORACLE_SAMPLES)?;
        let sol = solve(&Instance::Disks(disks), Kind::Disks, 0.0, seed, "")?;
        ratios.push(if opt > 0.0 { sol.report.tour_length / opt } else { 1.0 });
    }
    rows.push(row("disk tour over sampled optimum", &[], &ratios));

    Ok(OracleSuite { seed, rows, mismatches })
}
