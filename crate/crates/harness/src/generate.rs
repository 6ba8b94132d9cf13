//! Seeded random instances.
//!
//! Hyperplanes have uniform random unit normals flipped to a nonnegative last
//! coordinate and offsets uniform in `[-10, 10]`. Lines pass through a uniform
//! point of `[-5, 5]^3` with a uniform random direction. Disks and balls are
//! unit balls with centers uniform in `[0, side]^d`.

use anyhow::bail;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use tspn_core::geom::{Ball, Hyperplane, Line, Point};

use crate::io::{dim_allowed, Instance, InstanceFile, Item, Kind};
use crate::UsageError;

pub const DISK_SIDE: f64 = 10.0;
pub const BALL_SIDE: f64 = 20.0;
pub const OFFSET_RANGE: f64 = 10.0;
pub const LINE_SPREAD: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GenType {
    Hyperplanes,
    Lines,
    Disks,
    Balls,
    Fig5,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

pub fn uniform_point(rng: &mut impl Rng, d: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..d).map(|_| rng.random_range(lo..hi)).collect()
}

fn hyperplane_items(rng: &mut impl Rng, n: usize, d: usize) -> Vec<Item> {
    (0..n)
        .map(|_| {
            let mut normal = random_unit(rng, d);
            if normal[d - 1] < 0.0 {
                normal.iter_mut().for_each(|x| *x = -*x);
            }
            Item::Hyperplane { normal, offset: rng.random_range(-OFFSET_RANGE..=OFFSET_RANGE) }
        })
        .collect()
}

fn line_items(rng: &mut impl Rng, n: usize) -> Vec<Item> {
    (0..n)
        .map(|_| {
            let anchor = uniform_point(rng, 3, -LINE_SPREAD, LINE_SPREAD);
            Item::Line { anchor, dir: random_unit(rng, 3) }
        })
        .collect()
}

fn ball_items(rng: &mut impl Rng, n: usize, d: usize, side: f64) -> Vec<Item> {
    (0..n).map(|_| Item::Ball { center: uniform_point(rng, d, 0.0, side), radius: 1.0 }).collect()
}

/// Three disks on the x-axis with radii `1, x, x` and centers `0`,
/// `1 + x + eps` and `1 + 3x`, on which curve-based disk tours break down.
pub fn fig5(x: f64, eps: f64) -> anyhow::Result<InstanceFile> {
    if !(x > 0.0) || !(eps >= 0.0) {
        bail!(UsageError("fig5 needs x > 0 and eps >= 0".into()));
    }
    let items = [(0.0, 1.0), (1.0 + x + eps, x), (1.0 + 3.0 * x, x)]
        .into_iter()
        .map(|(c, radius)| Item::Ball { center: vec![c, 0.0], radius })
        .collect();
    Ok(InstanceFile { dim: 2, kind: Kind::Disks, items })
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub n: usize,
    pub dim: Option<usize>,
    pub seed: u64,
    pub side: Option<f64>,
    pub x: f64,
    pub eps: f64,
}

pub fn generate(kind: GenType, p: &GenParams) -> anyhow::Result<InstanceFile> {
    let (kind, default_dim) = match kind {
        GenType::Fig5 => return fig5(p.x, p.eps),
        GenType::Hyperplanes => (Kind::Hyperplanes, 3),
        GenType::Lines => (Kind::Lines, 3),
        GenType::Disks => (Kind::Disks, 2),
        GenType::Balls => (Kind::Balls, 3),
    };
    let dim = p.dim.unwrap_or(default_dim);
    if !dim_allowed(kind, dim) {
        bail!(UsageError(format!("{kind} cannot be generated in dimension {dim}")));
    }
    if p.n == 0 {
        bail!(UsageError("--n must be positive".into()));
    }
    let mut rng = rng(p.seed);
    let items = match kind {
        Kind::Hyperplanes => hyperplane_items(&mut rng, p.n, dim),
        Kind::Lines => line_items(&mut rng, p.n),
        Kind::Disks => ball_items(&mut rng, p.n, 2, p.side.unwrap_or(DISK_SIDE)),
        Kind::Balls => ball_items(&mut rng, p.n, 3, p.side.unwrap_or(BALL_SIDE)),
    };
    Ok(InstanceFile { dim, kind, items })
}

pub fn random_hyperplanes(rng: &mut impl Rng, n: usize, d: usize) -> Vec<Hyperplane<f64>> {
    typed(hyperplane_items(rng, n, d), d, Kind::Hyperplanes, |i| match i {
        Instance::Hyperplanes(v) => v,
        _ => unreachable!(),
    })
}

pub fn random_lines(rng: &mut impl Rng, n: usize) -> Vec<Line<f64>> {
    typed(line_items(rng, n), 3, Kind::Lines, |i| match i {
        Instance::Lines(v) => v,
        _ => unreachable!(),
    })
}

pub fn random_unit_balls(rng: &mut impl Rng, n: usize, d: usize, side: f64) -> Vec<Ball<f64>> {
    (0..n).map(|_| Ball::unit(Point::from_f64(&uniform_point(rng, d, 0.0, side)))).collect()
}

/// Unit disks in `[0, side]^2` with pairwise center distance above 2, by
/// rejection.
pub fn random_disjoint_disks(rng: &mut impl Rng, n: usize, side: f64) -> Vec<Ball<f64>> {
    let mut out: Vec<Ball<f64>> = Vec::with_capacity(n);
    while out.len() < n {
        let c = Point::from_f64(&uniform_point(rng, 2, 0.0, side));
        if out.iter().all(|b| b.center().dist(&c) > 2.0 + 1e-6) {
            out.push(Ball::unit(c));
        }
    }
    out
}

fn typed<T>(items: Vec<Item>, dim: usize, kind: Kind, pick: impl FnOnce(Instance) -> T) -> T {
    let f = InstanceFile { dim, kind, items };
    pick(f.to_instance().expect("generated items are valid"))
}
