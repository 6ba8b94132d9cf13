//! JSON instance and tour files.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use tspn_core::geom::{Ball, Hyperplane, Line, Point, Tour};
use tspn_core::verify::Neighborhood;

use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Hyperplanes,
    Lines,
    Disks,
    Balls,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Hyperplanes => "hyperplanes",
            Kind::Lines => "lines",
            Kind::Disks => "disks",
            Kind::Balls => "balls",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Item {
    Hyperplane { normal: Vec<f64>, offset: f64 },
    Line { anchor: Vec<f64>, dir: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
}

/// `{"dim": D, "kind": "...", "items": [...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub dim: usize,
    pub kind: Kind,
    pub items: Vec<Item>,
}

/// `{"dim": D, "closed": true, "vertices": [[...], ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TourFile {
    pub dim: usize,
    pub closed: bool,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Hyperplanes(Vec<Hyperplane<f64>>),
    Lines(Vec<Line<f64>>),
    Disks(Vec<Ball<f64>>),
    Balls(Vec<Ball<f64>>),
}

pub fn dim_allowed(kind: Kind, dim: usize) -> bool {
    match kind {
        Kind::Hyperplanes => (2..=5).contains(&dim),
        Kind::Lines | Kind::Balls => dim == 3,
        Kind::Disks => dim == 2,
    }
}

impl InstanceFile {
    pub fn to_instance(&self) -> anyhow::Result<Instance> {
        if !dim_allowed(self.kind, self.dim) {
            bail!(UsageError(format!("{} instances cannot have dimension {}", self.kind, self.dim)));
        }
        let d = self.dim;
        let check = |i: usize, v: &[f64]| -> anyhow::Result<()> {
            if v.len() != d {
                bail!("item {i}: expected {d} coordinates, found {}", v.len());
            }
            Ok(())
        };
        let wrong = |i: usize| anyhow::anyhow!("item {i} does not match kind {}", self.kind);
        let mut out = match self.kind {
            Kind::Hyperplanes => Instance::Hyperplanes(Vec::new()),
            Kind::Lines => Instance::Lines(Vec::new()),
            Kind::Disks => Instance::Disks(Vec::new()),
            Kind::Balls => Instance::Balls(Vec::new()),
        };
        for (i, item) in self.items.iter().enumerate() {
            match (&mut out, item) {
                (Instance::Hyperplanes(v), Item::Hyperplane { normal, offset }) => {
                    check(i, normal)?;
                    v.push(Hyperplane::from_f64(normal, *offset).with_context(|| format!("item {i}"))?);
                }
                (Instance::Lines(v), Item::Line { anchor, dir }) => {
                    check(i, anchor)?;
                    check(i, dir)?;
                    v.push(Line::from_f64(anchor, dir).with_context(|| format!("item {i}"))?);
                }
                (Instance::Disks(v) | Instance::Balls(v), Item::Ball { center, radius }) => {
                    check(i, center)?;
                    v.push(Ball::from_f64(center, *radius).with_context(|| format!("item {i}"))?);
                }
                _ => return Err(wrong(i)),
            }
        }
        if out.is_empty() {
            bail!("instance has no items");
        }
        Ok(out)
    }
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Hyperplanes(_) => Kind::Hyperplanes,
            Instance::Lines(_) => Kind::Lines,
            Instance::Disks(_) => Kind::Disks,
            Instance::Balls(_) => Kind::Balls,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Instance::Hyperplanes(v) => v.len(),
            Instance::Lines(v) => v.len(),
            Instance::Disks(v) | Instance::Balls(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            Instance::Hyperplanes(v) => v.first().map_or(0, |h| h.dim()),
            Instance::Lines(_) | Instance::Balls(_) => 3,
            Instance::Disks(_) => 2,
        }
    }

    pub fn neighborhoods(&self) -> Vec<Neighborhood<f64>> {
        use tspn_core::verify;
        match self {
            Instance::Hyperplanes(v) => verify::hyperplanes(v),
            Instance::Lines(v) => verify::lines(v),
            Instance::Disks(v) | Instance::Balls(v) => verify::balls(v),
        }
    }

    pub fn to_file(&self) -> InstanceFile {
        let items = match self {
            Instance::Hyperplanes(v) => v
                .iter()
                .map(|h| Item::Hyperplane { normal: h.normal().to_f64(), offset: h.offset() })
                .collect(),
            Instance::Lines(v) => {
                v.iter().map(|l| Item::Line { anchor: l.anchor().to_f64(), dir: l.dir().unit().to_f64() }).collect()
            }
            Instance::Disks(v) | Instance::Balls(v) => {
                v.iter().map(|b| Item::Ball { center: b.center().to_f64(), radius: b.radius() }).collect()
            }
        };
        InstanceFile { dim: self.dim(), kind: self.kind(), items }
    }
}

impl TourFile {
    pub fn from_tour(tour: &Tour<f64>) -> Self {
        TourFile { dim: tour.dim(), closed: true, vertices: tour.vertices().iter().map(|p| p.to_f64()).collect() }
    }

    pub fn to_tour(&self) -> anyhow::Result<Tour<f64>> {
        if !self.closed {
            bail!("only closed tours are supported");
        }
        if let Some((i, v)) = self.vertices.iter().enumerate().find(|(_, v)| v.len() != self.dim) {
            bail!("vertex {i}: expected {} coordinates, found {}", self.dim, v.len());
        }
        Ok(Tour::new(self.vertices.iter().map(|v| Point::from_f64(v)).collect())?)
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

pub fn load_instance(path: &Path) -> anyhow::Result<Instance> {
    read_json::<InstanceFile>(path)?.to_instance()
}

pub fn load_tour(path: &Path) -> anyhow::Result<Tour<f64>> {
    read_json::<TourFile>(path)?.to_tour()
}
