//! Sweep-order maximal independent set of equal balls.

use std::cmp::Ordering;

use crate::error::{Result, TspnError};
use crate::geom::Ball;
use crate::scalar::{lit, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepIndependentSet {
    /// Selected ball indices in sweep order.
    pub selected: Vec<usize>,
    /// For every input ball, the selected ball that removed it (itself if selected).
    pub cover: Vec<usize>,
}

impl SweepIndependentSet {
    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }
}

pub(crate) fn check_equal_radii<T: Real>(balls: &[Ball<T>]) -> Result<()> {
    if let Some(first) = balls.first() {
        let r = first.radius();
        if balls.iter().any(|b| (b.radius() - r).abs() > lit(1e-9)) {
            return Err(TspnError::UnequalRadii);
        }
        let d = first.dim();
        for b in balls {
            crate::error::check_dim(d, b.dim())?;
        }
    }
    Ok(())
}

/// Repeatedly selects the remaining ball with the smallest coordinate along
/// `axis` and removes every ball meeting it. Ties go to the other
/// coordinates from the highest axis down, then to the input index.
pub fn sweep_independent_set<T: Real>(balls: &[Ball<T>], axis: usize) -> Result<SweepIndependentSet> {
    check_equal_radii(balls)?;
    if let Some(b) = balls.first() {
        if axis >= b.dim() {
            return Err(TspnError::InvalidInput(format!("sweep axis {axis} in dimension {}", b.dim())));
        }
    }
    let key = |i: usize| {
        let c = balls[i].center().coords();
        let mut k = vec![c[axis]];
        k.extend((0..c.len()).rev().filter(|&a| a != axis).map(|a| c[a]));
        k
    };
    let mut order: Vec<usize> = (0..balls.len()).collect();
    order.sort_by(|&a, &b| {
        let (ka, kb) = (key(a), key(b));
        ka.iter()
            .zip(&kb)
            .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });

    let mut cover = vec![usize::MAX; balls.len()];
    let mut selected = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        if cover[i] != usize::MAX {
            continue;
        }
        cover[i] = i;
        selected.push(i);
        for &j in &order[pos + 1..] {
            if cover[j] == usize::MAX && balls[i].intersects(&balls[j]) {
                cover[j] = i;
            }
        }
    }
    Ok(SweepIndependentSet { selected, cover })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_disks_on_a_line() {
        let balls: Vec<Ball<f64>> =
            [0.0, 1.0, 4.0].iter().map(|&x| Ball::from_f64(&[x, 0.0], 1.0).unwrap()).collect();
        let s = sweep_independent_set(&balls, 0).unwrap();
        assert_eq!(s.selected, vec![0, 2]);
        assert_eq!(s.cover, vec![0, 0, 2]);
    }

    #[test]
    fn unequal_radii_rejected() {
        let balls = vec![Ball::<f64>::from_f64(&[0.0, 0.0], 1.0).unwrap(), Ball::from_f64(&[5.0, 0.0], 2.0).unwrap()];
        assert_eq!(sweep_independent_set(&balls, 0), Err(TspnError::UnequalRadii));
    }
}
