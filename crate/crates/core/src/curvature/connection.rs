use serde::Serialize;

use super::CurvatureError;
use crate::exactmath::{linear_solve, FracMatrix, RatFunc};
use crate::frames::OrthoFrameAlgebra;

/// Levi-Civita connection of a left-invariant metric in an orthonormal frame:
/// `get(m, k, l) = ⟨∇_{e_m} e_k, e_l⟩`, antisymmetric in `(k, l)`.
///
/// Equivalently `de^k = Σ_{m,l} get(m, k, l) e^m∧e^l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connection {
    dim: usize,
    g: Vec<RatFunc>,
}

impl Connection {
    fn zero(dim: usize) -> Connection {
        Connection { dim, g: vec![RatFunc::zero(); dim * dim * dim] }
    }

    fn idx(&self, m: usize, k: usize, l: usize) -> usize {
        (m * self.dim + k) * self.dim + l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, m: usize, k: usize, l: usize) -> &RatFunc {
        &self.g[self.idx(m, k, l)]
    }

    fn set_antisym(&mut self, m: usize, k: usize, l: usize, v: RatFunc) {
        let a = self.idx(m, l, k);
        self.g[a] = -&v;
        let b = self.idx(m, k, l);
        self.g[b] = v;
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Connection {
        Connection { dim: self.dim, g: self.g.iter().map(f).collect() }
    }

    /// Entries that differ between two connections, as `(m, k, l)`.
    pub fn differences(&self, o: &Connection) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for m in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if self.get(m, k, l) != o.get(m, k, l) {
                        out.push((m, k, l));
                    }
                }
            }
        }
        out
    }
}

fn pair_index(n: usize, k: usize, l: usize) -> usize {
    // position of (k, l), k < l, in the list (0,1), (0,2), …, (n-2, n-1)
    k * (2 * n - k - 1) / 2 + (l - k - 1)
}

/// Solves the first structure equation `de^k = Σ g[m][k,l] e^m∧e^l` for the
/// antisymmetric unknowns `g[m][k,l]`, `k < l`.
pub fn connection_cartan(o: &OrthoFrameAlgebra) -> Result<Connection, CurvatureError> {
    let n = o.dim();
    let pairs = n * (n - 1) / 2;
    let unknowns = n * pairs;
    let mut a = FracMatrix::zeros(unknowns, unknowns);
    let mut b = FracMatrix::zeros(unknowns, 1);
    // coefficient of e^{ij} (i<j) in Σ_{m,l} g[m][k,l] e^{ml} is g[i][k,j] - g[j][k,i]
    let unknown = |m: usize, k: usize, l: usize| -> Option<(usize, i64)> {
        use std::cmp::Ordering::*;
        match k.cmp(&l) {
            Less => Some((m * pairs + pair_index(n, k, l), 1)),
            Greater => Some((m * pairs + pair_index(n, l, k), -1)),
            Equal => None,
        }
    };
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                let row = k * pairs + pair_index(n, i, j);
                for (m, l, sign) in [(i, j, 1i64), (j, i, -1i64)] {
                    if let Some((col, s)) = unknown(m, k, l) {
                        let v = a.get(row, col) + &RatFunc::int(sign * s);
                        a.set(row, col, v);
                    }
                }
                b.set(row, 0, o.c(k, i, j));
            }
        }
    }
    let x = linear_solve(&a, &b).map_err(CurvatureError::Cartan)?;
    let mut conn = Connection::zero(n);
    for m in 0..n {
        for k in 0..n {
            for l in k + 1..n {
                let v = o.reduce(x.get(m * pairs + pair_index(n, k, l), 0));
                conn.set_antisym(m, k, l, v);
            }
        }
    }
    Ok(conn)
}

/// Koszul formula for orthonormal left-invariant fields:
/// `2⟨∇_{e_m} e_k, e_l⟩ = c^l_mk - c^m_kl + c^k_lm`.
pub fn connection_koszul(o: &OrthoFrameAlgebra) -> Connection {
    let n = o.dim();
    let l = &o.algebra;
    let half = RatFunc::frac(1, 2);
    let mut conn = Connection::zero(n);
    for m in 0..n {
        for k in 0..n {
            for t in k + 1..n {
                let s = &(l.get(m, k, t) - l.get(k, t, m)) + l.get(t, m, k);
                conn.set_antisym(m, k, t, o.reduce(&(&s * &half)));
            }
        }
    }
    conn
}
