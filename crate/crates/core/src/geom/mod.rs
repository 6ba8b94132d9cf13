//! Dimension-generic geometric primitives.

pub mod distance;
pub mod oriented_box;
pub mod point;
pub mod rotation;
pub mod shapes;
pub mod tour;

pub use distance::{angle_between, min_transversal, Transversal};
pub use oriented_box::{gray_code_box_tour, gray_code_tour_length, OrientedBox};
pub use point::{Direction, Point};
pub use rotation::Rotation;
pub use shapes::{Ball, Hyperplane, Line};
pub use tour::{OpenPath, Tour};

/// Unit-norm tolerance.
pub const UNIT_TOL: f64 = 1e-12;
/// Orthogonality tolerance.
pub const ORTHO_TOL: f64 = 1e-9;
/// Set-membership tolerance used when validating tours.
pub const MEMBERSHIP_TOL: f64 = 1e-7;
