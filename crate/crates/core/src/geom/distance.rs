//! Point and segment distances to neighborhoods, plus line-line transversals.

use crate::geom::point::{Direction, Point};
use crate::geom::shapes::{Ball, Hyperplane, Line};
use crate::scalar::{lit, Real};

/// Angle between two undirected directions, in `[0, pi/2]`.
pub fn angle_between<T: Real>(a: &Direction<T>, b: &Direction<T>) -> T {
    let c = a.unit().dot(b.unit()).abs().min(T::one());
    c.acos().min(T::FRAC_PI_2())
}

/// Closest pair of points between two lines.
#[derive(Clone, Debug, PartialEq)]
pub struct Transversal<T> {
    pub on_a: Point<T>,
    pub on_b: Point<T>,
    /// The lines are parallel and the pair is one of infinitely many.
    pub parallel: bool,
}

impl<T: Real> Transversal<T> {
    pub fn length(&self) -> T {
        self.on_a.dist(&self.on_b)
    }

    pub fn swapped(self) -> Self {
        Transversal { on_a: self.on_b, on_b: self.on_a, parallel: self.parallel }
    }
}

/// Minimum transversal of lines `a` and `b`.
///
/// For parallel lines (`|dir_a . dir_b| = 1` within 1e-12) the pair is
/// `(anchor_a, foot of anchor_a on b)`.
pub fn min_transversal<T: Real>(a: &Line<T>, b: &Line<T>) -> Transversal<T> {
    let (u, v) = (a.dir().unit(), b.dir().unit());
    let w0 = a.anchor() - b.anchor();
    let bb = u.dot(v);
    let denom = T::one() - bb * bb;
    if T::one() - bb.abs() <= lit(1e-12) {
        let on_a = a.anchor().clone();
        let on_b = b.project(&on_a);
        return Transversal { on_a, on_b, parallel: true };
    }
    let d = u.dot(&w0);
    let e = v.dot(&w0);
    let s = (bb * e - d) / denom;
    let t = (e - bb * d) / denom;
    Transversal { on_a: a.at(s), on_b: b.at(t), parallel: false }
}

pub fn line_line_distance<T: Real>(a: &Line<T>, b: &Line<T>) -> T {
    min_transversal(a, b).length()
}

pub fn point_hyperplane<T: Real>(p: &Point<T>, h: &Hyperplane<T>) -> T {
    h.signed_dist(p).abs()
}

pub fn point_line<T: Real>(p: &Point<T>, l: &Line<T>) -> T {
    p.dist(&l.project(p))
}

pub fn point_ball<T: Real>(p: &Point<T>, b: &Ball<T>) -> T {
    (p.dist(b.center()) - b.radius()).max(T::zero())
}

pub fn point_segment<T: Real>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    p.dist(&closest_on_segment(p, a, b))
}

pub fn closest_on_segment<T: Real>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> Point<T> {
    let e = b - a;
    let len_sq = e.norm_sq();
    if len_sq <= T::zero() {
        return a.clone();
    }
    let s = ((p - a).dot(&e) / len_sq).max(T::zero()).min(T::one());
    a.add_scaled(&e, s)
}

/// Zero iff the endpoints lie on opposite sides of (or on) the plane.
pub fn segment_hyperplane<T: Real>(a: &Point<T>, b: &Point<T>, h: &Hyperplane<T>) -> T {
    let (sa, sb) = (h.signed_dist(a), h.signed_dist(b));
    if sa * sb <= T::zero() {
        T::zero()
    } else {
        sa.abs().min(sb.abs())
    }
}

pub fn segment_line<T: Real>(a: &Point<T>, b: &Point<T>, l: &Line<T>) -> T {
    let u = l.dir().unit();
    let w = a - l.anchor();
    let e = b - a;
    let w_perp = w.add_scaled(u, -w.dot(u));
    let e_perp = e.add_scaled(u, -e.dot(u));
    let ee = e_perp.norm_sq();
    let s = if ee <= T::zero() { T::zero() } else { (-w_perp.dot(&e_perp) / ee).max(T::zero()).min(T::one()) };
    w_perp.add_scaled(&e_perp, s).norm()
}

pub fn segment_ball<T: Real>(a: &Point<T>, b: &Point<T>, ball: &Ball<T>) -> T {
    (point_segment(ball.center(), a, b) - ball.radius()).max(T::zero())
}
