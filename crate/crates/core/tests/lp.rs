use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tspn_core::lp::{solve_lp, LinearProgram, LpStatus};

/// Feasible (origin strictly inside) and bounded (box `|x_i| <= 10` included).
fn random_lp(rng: &mut ChaCha8Rng, v: usize, m: usize) -> LinearProgram<f64> {
    let mut lp = LinearProgram::new((0..v).map(|_| rng.random_range(-1.0..1.0)).collect());
    for i in 0..v {
        let mut e = vec![0.0; v];
        e[i] = 1.0;
        lp.add(e.clone(), 10.0);
        e[i] = -1.0;
        lp.add(e, 10.0);
    }
    for _ in 0..m.saturating_sub(2 * v) {
        let a: Vec<f64> = (0..v).map(|_| rng.random_range(-1.0..1.0)).collect();
        lp.add(a, rng.random_range(0.5..5.0));
    }
    lp
}

fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().partial_cmp(&a[y][c].abs()).unwrap())?;
        if a[p][c].abs() < 1e-10 {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in c..n {
                    a[r][k] -= f * a[c][k];
                }
                b[r] -= f * b[c];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn feasible(lp: &LinearProgram<f64>, x: &[f64]) -> bool {
    lp.constraints.iter().all(|c| c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() <= c.bound + 1e-7)
}

fn combinations(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        combinations(n, k, i + 1, cur, f);
        cur.pop();
    }
}

/// Best objective over every basic solution (all `v`-subsets of tight rows).
fn vertex_enumeration(lp: &LinearProgram<f64>) -> f64 {
    let v = lp.num_vars;
    let mut best = f64::INFINITY;
    combinations(lp.constraints.len(), v, 0, &mut Vec::new(), &mut |idx| {
        let a = idx.iter().map(|&i| lp.constraints[i].coeffs.clone()).collect();
        let b = idx.iter().map(|&i| lp.constraints[i].bound).collect();
        if let Some(x) = gauss_solve(a, b) {
            if feasible(lp, &x) {
                best = best.min(lp.objective.iter().zip(&x).map(|(c, x)| c * x).sum());
            }
        }
    });
    best
}

/// Dense tableau simplex with Bland's rule on `x = p - q`, `p, q >= 0`;
/// the origin is feasible so the slack basis starts phase two directly.
fn bland_simplex(lp: &LinearProgram<f64>) -> f64 {
    let (v, m) = (lp.num_vars, lp.constraints.len());
    let cols = 2 * v + m;
    let mut t = vec![vec![0.0; cols + 1]; m + 1];
    for (r, c) in lp.constraints.iter().enumerate() {
        for j in 0..v {
            t[r][j] = c.coeffs[j];
            t[r][v + j] = -c.coeffs[j];
        }
        t[r][2 * v + r] = 1.0;
        t[r][cols] = c.bound;
    }
    for j in 0..v {
        t[m][j] = lp.objective[j];
        t[m][v + j] = -lp.objective[j];
    }
    let mut basis: Vec<usize> = (0..m).map(|r| 2 * v + r).collect();
    loop {
        let Some(enter) = (0..cols).find(|&j| t[m][j] < -1e-12) else { break };
        let mut leave = None;
        for r in 0..m {
            if t[r][enter] > 1e-12 {
                let ratio = t[r][cols] / t[r][enter];
                let better = match leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - 1e-12 || (ratio <= lratio + 1e-12 && basis[r] < basis[lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (pr, _) = leave.expect("bounded");
        let pv = t[pr][enter];
        for k in 0..=cols {
            t[pr][k] /= pv;
        }
        for r in 0..=m {
            if r != pr {
                let f = t[r][enter];
                if f != 0.0 {
                    for k in 0..=cols {
                        t[r][k] -= f * t[pr][k];
                    }
                }
            }
        }
        basis[pr] = enter;
    }
    -t[m][cols]
}

#[test]
fn matches_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..20 {
        let lp = random_lp(&mut rng, 6, 16);
        let s = solve_lp(&lp, case).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        let want = vertex_enumeration(&lp);
        assert!((s.value - want).abs() <= 1e-6 * (1.0 + want.abs()), "case {case}: {} vs {want}", s.value);
        assert!(feasible(&lp, &s.point));
    }
}

#[test]
fn hundred_constraints_match_simplex() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..50 {
        let lp = random_lp(&mut rng, 6, 100);
        let s = solve_lp(&lp, case).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        let want = bland_simplex(&lp);
        assert!((s.value - want).abs() <= 1e-6 * (1.0 + want.abs()), "case {case}: {} vs {want}", s.value);
        assert!(feasible(&lp, &s.point));
    }
}

#[test]
fn reproducible_per_seed_and_order_independent_in_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let lp = random_lp(&mut rng, 4, 60);
    let a = solve_lp(&lp, 5).unwrap();
    assert_eq!(a, solve_lp(&lp, 5).unwrap());
    for seed in 0..30 {
        let b = solve_lp(&lp, seed).unwrap();
        assert!((a.value - b.value).abs() < 1e-9);
    }
}

#[test]
fn detects_infeasible_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for seed in 0..20 {
        let mut lp = random_lp(&mut rng, 3, 20);
        // x_0 >= 11 contradicts x_0 <= 10
        lp.add(vec![-1.0, 0.0, 0.0], -11.0);
        assert_eq!(solve_lp(&lp, seed).unwrap().status, LpStatus::Infeasible);
    }
}
