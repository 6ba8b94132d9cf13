//! Approximation algorithms for the traveling salesman problem with
//! neighborhoods: hyperplanes, lines, unit disks and unit balls.

pub mod balls;
pub mod disks;
pub mod error;
pub mod geom;
pub mod hyperplanes;
pub mod lines;
pub mod lp;
pub mod packing;
pub mod point_tsp;
pub mod report;
pub mod scalar;
pub mod sweep;
pub mod verify;

pub use error::{Result, TspnError};
pub use scalar::Real;

pub use geom::{Ball, Direction, Hyperplane, Line, OpenPath, Point, Tour};

/// `f64` instantiations of the generic types.
pub mod f64 {
    pub type Point = crate::geom::Point<f64>;
    pub type Direction = crate::geom::Direction<f64>;
    pub type Hyperplane = crate::geom::Hyperplane<f64>;
    pub type Line = crate::geom::Line<f64>;
    pub type Ball = crate::geom::Ball<f64>;
    pub type Tour = crate::geom::Tour<f64>;
    pub type OpenPath = crate::geom::OpenPath<f64>;
    pub type RatioBudget = crate::report::RatioBudget<f64>;
    pub type Neighborhood = crate::verify::Neighborhood<f64>;
    pub type HyperplaneTspResult = crate::hyperplanes::HyperplaneTspResult<f64>;
    pub type LinesTspResult = crate::lines::LinesTspResult<f64>;
    pub type DisksTspResult = crate::disks::DisksTspResult<f64>;
    pub type BallsTspResult = crate::balls::BallsTspResult<f64>;
}
