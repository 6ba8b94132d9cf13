//! Seidel's randomized incremental linear programming in small dimension.
//!
//! Variables are implicitly confined to a large box `|x_i| <= M`, which keeps
//! every intermediate problem bounded. A solution touching that box is re-solved
//! with a larger box to tell a genuinely unbounded objective apart.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, TspnError};
use crate::scalar::{lit, Real};

pub const MAX_VARS: usize = 16;

/// `coeffs . x <= bound`
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub bound: T,
}

/// Minimize `objective . x` subject to every constraint.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<T> {
    pub num_vars: usize,
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
}

impl<T: Real> LinearProgram<T> {
    pub fn new(objective: Vec<T>) -> Self {
        LinearProgram { num_vars: objective.len(), objective, constraints: Vec::new() }
    }

    pub fn add(&mut self, coeffs: Vec<T>, bound: T) -> &mut Self {
        self.constraints.push(Constraint { coeffs, bound });
        self
    }

    fn validate(&self) -> Result<()> {
        if self.num_vars == 0 || self.num_vars > MAX_VARS {
            return Err(TspnError::InvalidInput(format!("LP needs 1..={MAX_VARS} variables")));
        }
        crate::error::check_dim(self.num_vars, self.objective.len())?;
        for c in &self.constraints {
            crate::error::check_dim(self.num_vars, c.coeffs.len())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub point: Vec<T>,
    pub value: T,
    pub status: LpStatus,
}

/// Solves `lp` with a constraint order shuffled by `seed`.
pub fn solve_lp<T: Real>(lp: &LinearProgram<T>, seed: u64) -> Result<LpSolution<T>> {
    lp.validate()?;
    let mut order: Vec<usize> = (0..lp.constraints.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut solver = Seidel::new(lp.num_vars);
    let rows = flatten(lp);
    let scale = lp.constraints.iter().fold(T::one(), |m, c| m.max(c.bound.abs()));
    let big = scale * lit(1e6);

    let mut x = vec![T::zero(); lp.num_vars];
    if !solver.solve(&rows, &order, &lp.objective, big, &mut x) {
        return Ok(LpSolution { point: x, value: T::nan(), status: LpStatus::Infeasible });
    }
    let value = dot(&lp.objective, &x);
    let touches = x.iter().any(|v| v.abs() >= big * lit(0.999_999));
    if touches {
        let mut y = vec![T::zero(); lp.num_vars];
        solver.solve(&rows, &order, &lp.objective, big * lit(4.0), &mut y);
        let v4 = dot(&lp.objective, &y);
        if v4 < value - lit::<T>(1e-9) * (T::one() + value.abs()) {
            return Ok(LpSolution { point: y, value: T::neg_infinity(), status: LpStatus::Unbounded });
        }
    }
    Ok(LpSolution { point: x, value, status: LpStatus::Optimal })
}

fn flatten<T: Real>(lp: &LinearProgram<T>) -> Vec<T> {
    let mut rows = Vec::with_capacity(lp.constraints.len() * (lp.num_vars + 1));
    for c in &lp.constraints {
        rows.extend_from_slice(&c.coeffs);
        rows.push(c.bound);
    }
    rows
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

#[derive(Clone, Debug, Default)]
struct Level<T> {
    rows: Vec<T>,
    obj: Vec<T>,
    lo: Vec<T>,
    hi: Vec<T>,
    x: Vec<T>,
}

/// Reusable solver state. Rows are stored flat with stride `v + 1`, bound last.
#[derive(Clone, Debug)]
pub(crate) struct Seidel<T> {
    levels: Vec<Level<T>>,
}

impl<T: Real> Seidel<T> {
    pub(crate) fn new(num_vars: usize) -> Self {
        Seidel { levels: vec![Level::default(); num_vars + 1] }
    }

    /// Solves over the rows visited in `order` inside the box `|x_i| <= big`.
    /// Returns false if infeasible.
    pub(crate) fn solve(&mut self, rows: &[T], order: &[usize], obj: &[T], big: T, out: &mut [T]) -> bool {
        let v = obj.len();
        let stride = v + 1;
        let top = &mut self.levels[v];
        top.rows.clear();
        for &i in order {
            top.rows.extend_from_slice(&rows[i * stride..(i + 1) * stride]);
        }
        top.obj.clear();
        top.obj.extend_from_slice(obj);
        top.lo.clear();
        top.lo.resize(v, -big);
        top.hi.clear();
        top.hi.resize(v, big);
        let ok = solve_level(&mut self.levels[..=v], v);
        out.copy_from_slice(&self.levels[v].x);
        ok
    }
}

fn tol_for<T: Real>(row: &[T], x: &[T]) -> T {
    let v = x.len();
    let mag = row[..v].iter().zip(x).fold(row[v].abs(), |acc, (&a, &b)| acc + (a * b).abs());
    lit::<T>(1e-9) * (T::one() + mag)
}

fn box_optimum<T: Real>(obj: &[T], lo: &[T], hi: &[T], x: &mut Vec<T>) {
    x.clear();
    for i in 0..obj.len() {
        x.push(if obj[i] > T::zero() {
            lo[i]
        } else if obj[i] < T::zero() {
            hi[i]
        } else {
            T::zero().max(lo[i]).min(hi[i])
        });
    }
}

fn solve_level<T: Real>(levels: &mut [Level<T>], v: usize) -> bool {
    let (lower, cur) = levels.split_at_mut(v);
    let cur = &mut cur[0];
    let stride = v + 1;
    let m = cur.rows.len() / stride;

    if v == 1 {
        return solve_1d(cur);
    }

    box_optimum(&cur.obj, &cur.lo, &cur.hi, &mut cur.x);
    for i in 0..m {
        let row = &cur.rows[i * stride..(i + 1) * stride];
        let lhs = dot(&row[..v], &cur.x);
        if lhs <= row[v] + tol_for(row, &cur.x) {
            continue;
        }
        // Optimum now lies on row i: eliminate its largest coefficient.
        let k = (0..v).max_by(|&a, &b| row[a].abs().partial_cmp(&row[b].abs()).unwrap()).unwrap();
        let ak = row[k];
        if ak.abs() <= T::min_positive_value() {
            return false;
        }
        let sub = &mut lower[v - 1];
        sub.rows.clear();
        // x_k = (b - sum_{i != k} a_i x_i) / a_k, then lo_k <= x_k <= hi_k.
        let b = row[v];
        push_row(&mut sub.rows, (0..v).filter(|&j| j != k).map(|j| -row[j] / ak), cur.hi[k] - b / ak);
        push_row(&mut sub.rows, (0..v).filter(|&j| j != k).map(|j| row[j] / ak), b / ak - cur.lo[k]);
        for p in 0..i {
            let g = &cur.rows[p * stride..(p + 1) * stride];
            let f = g[k] / ak;
            let coeffs = (0..v).filter(|&j| j != k).map(|j| cancel(g[j], f * row[j]));
            push_row(&mut sub.rows, coeffs, cancel(g[v], f * b));
        }
        sub.obj.clear();
        let fc = cur.obj[k] / ak;
        sub.obj.extend((0..v).filter(|&j| j != k).map(|j| cancel(cur.obj[j], fc * row[j])));
        sub.lo.clear();
        sub.lo.extend((0..v).filter(|&j| j != k).map(|j| cur.lo[j]));
        sub.hi.clear();
        sub.hi.extend((0..v).filter(|&j| j != k).map(|j| cur.hi[j]));

        if !prune_zero_rows(sub, v - 1) || !solve_level(lower, v - 1) {
            return false;
        }
        let y = &lower[v - 1].x;
        let mut acc = b;
        let mut yi = 0;
        for j in 0..v {
            if j != k {
                cur.x[j] = y[yi];
                acc = acc - row[j] * y[yi];
                yi += 1;
            }
        }
        cur.x[k] = acc / ak;
    }
    true
}

/// `a - b`, snapped to zero when the difference is lost to cancellation.
#[inline]
fn cancel<T: Real>(a: T, b: T) -> T {
    let d = a - b;
    if d.abs() <= lit::<T>(1e-12) * (a.abs() + b.abs()) {
        T::zero()
    } else {
        d
    }
}

fn push_row<T: Real>(rows: &mut Vec<T>, coeffs: impl Iterator<Item = T>, bound: T) {
    rows.extend(coeffs);
    rows.push(bound);
}

/// Normalizes each row by its largest coefficient and drops empty rows.
/// Returns false if an empty row is violated.
fn prune_zero_rows<T: Real>(level: &mut Level<T>, v: usize) -> bool {
    let stride = v + 1;
    let m = level.rows.len() / stride;
    let mut w = 0;
    for r in 0..m {
        let row = &level.rows[r * stride..(r + 1) * stride];
        let scale = row[..v].iter().fold(T::zero(), |acc, c| acc.max(c.abs()));
        if scale.is_zero() {
            if row[v] < -lit::<T>(1e-9) * (T::one() + row[v].abs()) {
                return false;
            }
            continue;
        }
        for c in 0..stride {
            level.rows[w * stride + c] = level.rows[r * stride + c] / scale;
        }
        w += 1;
    }
    level.rows.truncate(w * stride);
    true
}

fn solve_1d<T: Real>(cur: &mut Level<T>) -> bool {
    let (mut lo, mut hi) = (cur.lo[0], cur.hi[0]);
    for r in cur.rows.chunks_exact(2) {
        let (a, b) = (r[0], r[1]);
        if a > T::zero() {
            hi = hi.min(b / a);
        } else if a < T::zero() {
            lo = lo.max(b / a);
        } else if b < -lit::<T>(1e-9) * (T::one() + b.abs()) {
            return false;
        }
    }
    if lo > hi {
        if lo - hi > lit::<T>(1e-9) * (T::one() + lo.abs() + hi.abs()) {
            return false;
        }
        let mid = (lo + hi) / lit(2.0);
        lo = mid;
        hi = mid;
    }
    let c = cur.obj[0];
    let x = if c > T::zero() {
        lo
    } else if c < T::zero() {
        hi
    } else {
        T::zero().max(lo).min(hi)
    };
    cur.x.clear();
    cur.x.push(x);
    true
}

/// Revised dual simplex for `min obj . x` subject to `A x <= b` with free
/// variables, started from a dual feasible basis of `v` rows. Meant for
/// sequences of nearby LPs where the previous optimal basis stays dual
/// feasible. Rows are flat with stride `v + 1`, bound last.
#[derive(Clone, Debug)]
pub(crate) struct DualSimplex<T> {
    v: usize,
    basis: Vec<usize>,
    /// `A_B^{-1}`, row-major; column `k` moves along basic row `k` only.
    inv: Vec<T>,
    lambda: Vec<T>,
    alpha: Vec<T>,
    x: Vec<T>,
    work: Vec<T>,
}

/// Pivots between full refactorizations of the basis.
const REFACTOR_EVERY: usize = 16;

impl<T: Real> DualSimplex<T> {
    pub(crate) fn new(v: usize) -> Self {
        DualSimplex {
            v,
            basis: Vec::with_capacity(v),
            inv: vec![T::zero(); v * v],
            lambda: vec![T::zero(); v],
            alpha: vec![T::zero(); v],
            x: vec![T::zero(); v],
            work: vec![T::zero(); 2 * v * v],
        }
    }

    pub(crate) fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub(crate) fn x(&self) -> &[T] {
        &self.x
    }

    /// Runs from basis `start`. Returns false when `start` is singular or not
    /// dual feasible, when the LP is infeasible, or after `max_pivots` pivots.
    pub(crate) fn solve(&mut self, rows: &[T], obj: &[T], start: &[usize], max_pivots: usize) -> bool {
        let v = self.v;
        let stride = v + 1;
        let m = rows.len() / stride;
        if start.len() != v || start.iter().any(|&i| i >= m) {
            return false;
        }
        self.basis.clear();
        self.basis.extend_from_slice(start);
        if !self.refactor(rows) {
            return false;
        }
        let dual_tol = lit::<T>(1e-9);
        for pivots in 0..=max_pivots {
            if pivots > 0 && pivots % REFACTOR_EVERY == 0 && !self.refactor(rows) {
                return false;
            }
            for k in 0..v {
                let dk = (0..v).fold(T::zero(), |acc, i| acc + obj[i] * self.inv[i * v + k]);
                self.lambda[k] = -dk;
            }
            if pivots == 0 && self.lambda.iter().any(|&l| l < -dual_tol) {
                return false;
            }
            for i in 0..v {
                let mut acc = T::zero();
                for k in 0..v {
                    acc = acc + self.inv[i * v + k] * rows[self.basis[k] * stride + v];
                }
                self.x[i] = acc;
            }
            // most violated row, relative to its largest coefficient
            let mut leave: Option<(usize, T)> = None;
            for r in 0..m {
                let row = &rows[r * stride..(r + 1) * stride];
                let excess = dot(&row[..v], &self.x) - row[v];
                if excess <= T::zero() || excess <= tol_for(row, &self.x) {
                    continue;
                }
                let scale = row[..v].iter().fold(T::zero(), |acc, c| acc.max(c.abs()));
                let score = excess / scale;
                if leave.is_none_or(|(_, s)| score > s) {
                    leave = Some((r, score));
                }
            }
            let Some((r, _)) = leave else { return true };
            if pivots == max_pivots {
                return false;
            }
            let row = &rows[r * stride..(r + 1) * stride];
            let alpha = &mut self.alpha;
            let mut amax = T::zero();
            for (k, a) in alpha.iter_mut().enumerate() {
                *a = (0..v).fold(T::zero(), |acc, i| acc + row[i] * self.inv[i * v + k]);
                amax = amax.max(a.abs());
            }
            let piv_tol = lit::<T>(1e-11) * amax;
            let mut enter: Option<(usize, T)> = None;
            for k in 0..v {
                if alpha[k] > piv_tol {
                    let ratio = self.lambda[k].max(T::zero()) / alpha[k];
                    if enter.is_none_or(|(e, best)| ratio < best || (ratio == best && self.basis[k] < self.basis[e])) {
                        enter = Some((k, ratio));
                    }
                }
            }
            let Some((k, _)) = enter else { return false };
            // column update: D_k /= alpha_k, D_j -= alpha_j D_k
            let ak = alpha[k];
            for i in 0..v {
                self.inv[i * v + k] = self.inv[i * v + k] / ak;
            }
            for j in 0..v {
                if j != k && !alpha[j].is_zero() {
                    for i in 0..v {
                        self.inv[i * v + j] = self.inv[i * v + j] - alpha[j] * self.inv[i * v + k];
                    }
                }
            }
            self.basis[k] = r;
        }
        false
    }

    /// Inverts the basis matrix by Gauss-Jordan with partial pivoting.
    fn refactor(&mut self, rows: &[T]) -> bool {
        let v = self.v;
        let stride = v + 1;
        let w = 2 * v;
        let a = &mut self.work;
        for (k, &b) in self.basis.iter().enumerate() {
            for i in 0..v {
                a[k * w + i] = rows[b * stride + i];
                a[k * w + v + i] = if i == k { T::one() } else { T::zero() };
            }
        }
        for c in 0..v {
            let p = (c..v).max_by(|&x, &y| a[x * w + c].abs().partial_cmp(&a[y * w + c].abs()).unwrap()).unwrap();
            let scale = (0..v).fold(T::zero(), |acc, i| acc.max(a[p * w + i].abs()));
            if a[p * w + c].abs() <= lit::<T>(1e-12) * scale {
                return false;
            }
            if p != c {
                for i in 0..w {
                    a.swap(p * w + i, c * w + i);
                }
            }
            let pv = a[c * w + c];
            for i in 0..w {
                a[c * w + i] = a[c * w + i] / pv;
            }
            for r in 0..v {
                let f = a[r * w + c];
                if r != c && !f.is_zero() {
                    for i in 0..w {
                        a[r * w + i] = a[r * w + i] - f * a[c * w + i];
                    }
                }
            }
        }
        // rows of [A_B | I] reduced to [I | A_B^{-1}]
        for i in 0..v {
            for k in 0..v {
                self.inv[i * v + k] = a[i * w + v + k];
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_lower_bound() {
        let mut lp = LinearProgram::<f64>::new(vec![1.0]);
        lp.add(vec![-1.0], -3.0);
        let s = solve_lp(&lp, 0).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.point[0] - 3.0).abs() < 1e-12);
        assert!((s.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut lp = LinearProgram::<f64>::new(vec![1.0, 1.0]);
        lp.add(vec![-1.0, 0.0], -1.0).add(vec![0.0, -1.0], -2.0).add(vec![1.0, 0.0], 0.0);
        assert_eq!(solve_lp(&lp, 7).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_objective_is_detected() {
        let mut lp = LinearProgram::<f64>::new(vec![-1.0, 0.0]);
        lp.add(vec![0.0, 1.0], 1.0);
        assert_eq!(solve_lp(&lp, 1).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn free_direction_stays_bounded() {
        // minimize y with y >= |x - 2|: x is pinned, objective is 0
        let mut lp = LinearProgram::<f64>::new(vec![0.0, 1.0]);
        lp.add(vec![1.0, -1.0], 2.0).add(vec![-1.0, -1.0], -2.0);
        let s = solve_lp(&lp, 3).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(s.value.abs() < 1e-9);
        assert!((s.point[0] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn triangle_vertex() {
        // maximize x + y over x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (1.6, 1.2)
        let mut lp = LinearProgram::<f64>::new(vec![-1.0, -1.0]);
        lp.add(vec![1.0, 2.0], 4.0).add(vec![3.0, 1.0], 6.0);
        lp.add(vec![-1.0, 0.0], 0.0).add(vec![0.0, -1.0], 0.0);
        for seed in 0..20 {
            let s = solve_lp(&lp, seed).unwrap();
            assert!((s.point[0] - 1.6).abs() < 1e-9 && (s.point[1] - 1.2).abs() < 1e-9);
        }
    }

    #[test]
    fn wrong_width_rejected() {
        let mut lp = LinearProgram::<f64>::new(vec![1.0, 1.0]);
        lp.add(vec![1.0], 0.0);
        assert!(solve_lp(&lp, 0).is_err());
    }

    #[test]
    fn dual_simplex_matches_seidel_from_box_basis() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let v = 4;
        for case in 0..40 {
            let obj: Vec<f64> = (0..v).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut lp = LinearProgram::new(obj.clone());
            for _ in 0..30 {
                lp.add((0..v).map(|_| rng.random_range(-1.0..1.0)).collect(), rng.random_range(0.5..5.0));
            }
            // box rows on the side the objective pushes towards form a dual feasible basis
            let mut start = Vec::new();
            for (i, &c) in obj.iter().enumerate() {
                let mut e = vec![0.0; v];
                e[i] = if c < 0.0 { 1.0 } else { -1.0 };
                start.push(lp.constraints.len());
                lp.add(e, 100.0);
            }
            let want = solve_lp(&lp, case).unwrap();
            let mut ds = DualSimplex::new(v);
            assert!(ds.solve(&flatten(&lp), &obj, &start, 1000));
            assert!((dot(&obj, ds.x()) - want.value).abs() < 1e-7, "case {case}");
            // restarting from the optimal basis needs no pivots
            let basis = ds.basis().to_vec();
            assert!(ds.solve(&flatten(&lp), &obj, &basis, 0));
        }
    }
}
