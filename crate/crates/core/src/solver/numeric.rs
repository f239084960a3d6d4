use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::mpoly::MPoly;
use super::real::{RealSolution, SolveReport};
use super::system::PolySystem;

/// Outcome of a floating-point multi-start search. Never used as a certificate;
/// it only cross-checks the exact solution set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericSanity {
    pub starts: usize,
    pub converged: usize,
    /// Converged points on which the non-vanishing group also vanishes.
    pub excluded_by_nonvanishing: usize,
    /// Converged points not close to any reported solution.
    pub unexplained: Vec<Vec<f64>>,
}

fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|x, y| a[*x][c].abs().total_cmp(&a[*y][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for c in (0..n).rev() {
        let s: f64 = (c + 1..n).map(|k| a[c][k] * x[k]).sum();
        x[c] = (b[c] - s) / a[c][c];
    }
    Some(x)
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>()
}

/// Levenberg–Marquardt from one start; returns the end point and residual norm.
fn descend(eqs: &[MPoly], jac: &[Vec<MPoly>], mut x: Vec<f64>) -> (Vec<f64>, f64) {
    let n = x.len();
    let f = |x: &[f64]| -> Vec<f64> { eqs.iter().map(|e| e.eval_f64(x)).collect() };
    let mut fx = f(&x);
    let mut mu = 1e-3;
    for _ in 0..400 {
        let r = norm2(&fx).sqrt();
        if r < 1e-13 {
            break;
        }
        let j: Vec<Vec<f64>> = jac.iter().map(|row| row.iter().map(|d| d.eval_f64(&x)).collect()).collect();
        let mut jtj = vec![vec![0.0; n]; n];
        let mut jtf = vec![0.0; n];
        for (row, fi) in j.iter().zip(&fx) {
            for a in 0..n {
                jtf[a] -= row[a] * fi;
                for b in 0..n {
                    jtj[a][b] += row[a] * row[b];
                }
            }
        }
        for (a, row) in jtj.iter_mut().enumerate() {
            row[a] += mu;
        }
        let Some(step) = solve_dense(jtj, jtf) else { break };
        let cand: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();
        let fc = f(&cand);
        if norm2(&fc) < norm2(&fx) {
            x = cand;
            fx = fc;
            mu = (mu * 0.3).max(1e-15);
        } else {
            mu *= 10.0;
            if mu > 1e12 {
                break;
            }
        }
    }
    let r = norm2(&fx).sqrt();
    (x, r)
}

fn explained(x: &[f64], sols: &[RealSolution], unknowns: &[String], tol: f64) -> bool {
    sols.iter().any(|s| {
        let params: BTreeMap<String, f64> = s
            .free_parameters
            .iter()
            .map(|p| (p.clone(), x[unknowns.iter().position(|u| u == p).expect("unknown")]))
            .collect();
        let y = s.approx(unknowns, &params);
        x.iter().zip(&y).all(|(a, b)| (a - b).abs() < tol * (1.0 + b.abs()))
    })
}

/// Runs `starts` seeded Levenberg–Marquardt searches and classifies the converged points.
pub fn numeric_sanity(s: &PolySystem, report: &SolveReport, starts: usize, seed: u64) -> NumericSanity {
    let names = &s.unknowns;
    let n = names.len();
    let eqs: Vec<MPoly> = s.equations.iter().map(|e| MPoly::from_poly(&e.poly, names).expect("checked")).collect();
    let nv: Vec<MPoly> = s.nonvanishing.iter().map(|e| MPoly::from_poly(&e.poly, names).expect("checked")).collect();
    let jac: Vec<Vec<MPoly>> = eqs.iter().map(|e| (0..n).map(|i| e.partial_deriv(i)).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = NumericSanity { starts, converged: 0, excluded_by_nonvanishing: 0, unexplained: Vec::new() };
    for _ in 0..starts {
        let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let (x, r) = descend(&eqs, &jac, x0);
        if r > 1e-9 {
            continue;
        }
        out.converged += 1;
        if explained(&x, &report.solutions, names, 1e-4) {
            continue;
        }
        if !nv.is_empty() && nv.iter().all(|p| p.eval_f64(&x).abs() < 1e-6) {
            out.excluded_by_nonvanishing += 1;
            continue;
        }
        out.unexplained.push(x);
    }
    out
}
