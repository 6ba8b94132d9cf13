//! Numeric checks of the two transversal inequalities behind the lines bound.

use crate::error::{Result, TspnError};
use crate::geom::distance::point_line;
use crate::geom::{angle_between, min_transversal, Direction, Line, Point};
use crate::scalar::{lit, Real};

/// `sqrt(3 / (1 - cos phi0))`.
pub fn transversal_detour_constant<T: Real>(phi0: T) -> T {
    (lit::<T>(3.0) / (T::one() - phi0.cos())).sqrt()
}

/// `2 sqrt(3) / 9`.
pub fn near_parallel_constant<T: Real>() -> T {
    lit::<T>(2.0) * lit::<T>(3.0).sqrt() / lit(9.0)
}

fn slack<T: Real>(rhs: T) -> T {
    lit::<T>(1e-9) * (T::one() + rhs.abs())
}

fn check_on<T: Real>(p: &Point<T>, l: &Line<T>) -> Result<()> {
    if point_line(p, l) > lit::<T>(1e-9) * (T::one() + p.norm()) {
        return Err(TspnError::InvalidInput("point is not on its line".into()));
    }
    Ok(())
}

/// For lines at angle `phi in (phi0, pi/2]` with minimum transversal `s1 s2`:
/// `|p1 s1| + |s1 s2| + |s2 p2| <= C(phi0) |p1 p2|`.
pub fn check_lemma_mt<T: Real>(l1: &Line<T>, l2: &Line<T>, p1: &Point<T>, p2: &Point<T>, phi0: T) -> Result<bool> {
    check_on(p1, l1)?;
    check_on(p2, l2)?;
    let phi = angle_between(l1.dir(), l2.dir());
    if !(phi > phi0 && phi0 > T::zero()) {
        return Err(TspnError::InvalidInput("line angle must exceed phi0 > 0".into()));
    }
    let tr = min_transversal(l1, l2);
    let lhs = p1.dist(&tr.on_a) + tr.length() + tr.on_b.dist(p2);
    let rhs = transversal_detour_constant(phi0) * p1.dist(p2);
    Ok(lhs <= rhs + slack(rhs))
}

/// For lines at angle `phi in (0, pi/6]`, both within `pi/6` of the last
/// axis, meeting the plane `x_d = level` at `r1, r2`: if
/// `|p1 p2| <= |r1 r2| / 3` then `|p_i s_i| <= (2 sqrt 3 / 9) |r_i s_i|`.
pub fn check_lemma_par<T: Real>(l1: &Line<T>, l2: &Line<T>, p1: &Point<T>, p2: &Point<T>, level: T) -> Result<bool> {
    check_on(p1, l1)?;
    check_on(p2, l2)?;
    let d = l1.dim();
    let sixth = T::PI() / lit(6.0) + lit(1e-12);
    let phi = angle_between(l1.dir(), l2.dir());
    if !(phi > T::zero() && phi <= sixth) {
        return Err(TspnError::InvalidInput("line angle must lie in (0, pi/6]".into()));
    }
    let axis = Direction::axis(d, d - 1);
    if angle_between(l1.dir(), &axis) > sixth || angle_between(l2.dir(), &axis) > sixth {
        return Err(TspnError::InvalidInput("lines must be within pi/6 of the last axis".into()));
    }
    let normal = Point::unit(d, d - 1);
    let r1 = l1.at(l1.intersect_plane(&normal, level).expect("line not parallel to the plane"));
    let r2 = l2.at(l2.intersect_plane(&normal, level).expect("line not parallel to the plane"));
    if p1.dist(p2) > r1.dist(&r2) / lit(3.0) {
        return Err(TspnError::InvalidInput("|p1 p2| exceeds |r1 r2| / 3".into()));
    }
    let tr = min_transversal(l1, l2);
    let c = near_parallel_constant::<T>();
    let (a, e) = (p1.dist(&tr.on_a), r1.dist(&tr.on_a));
    let (b, f) = (p2.dist(&tr.on_b), r2.dist(&tr.on_b));
    Ok(a <= c * e + slack(c * e) && b <= c * f + slack(c * f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let c: f64 = transversal_detour_constant(std::f64::consts::PI / 12.0);
        assert!(c > 9.38 && c <= 9.4);
        assert!((near_parallel_constant::<f64>() - 0.3849).abs() < 1e-4);
    }

    #[test]
    fn endpoints_at_transversal() {
        let l1 = Line::<f64>::from_f64(&[0., 0., 0.], &[1., 0., 0.]).unwrap();
        let l2 = Line::<f64>::from_f64(&[0., 0., 1.], &[0., 1., 0.]).unwrap();
        let p1 = Point::from_f64(&[0., 0., 0.]);
        let p2 = Point::from_f64(&[0., 0., 1.]);
        assert!(check_lemma_mt(&l1, &l2, &p1, &p2, 0.2).unwrap());
        assert!(check_lemma_mt(&l1, &l1, &p1, &p1, 0.2).is_err());
    }
}
