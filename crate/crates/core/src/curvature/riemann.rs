use serde::Serialize;

use super::{Connection, CurvatureError};
use crate::exactmath::{FracMatrix, RatFunc};
use crate::frames::OrthoFrameAlgebra;

/// Curvature 2-forms in an orthonormal frame.
///
/// `get(i, j, x, y)` is the coefficient of `e^x∧e^y` in
/// `Ω_ij = dω_ij - Σ_r ω_ir∧ω_rj` with `ω_ij = Σ_m ⟨∇_{e_m} e_i, e_j⟩ e^m`.
/// This equals `-⟨R(e_x, e_y) e_j, e_i⟩` for the usual `R(X,Y) = [∇_X,∇_Y] - ∇_[X,Y]`,
/// so the Ricci contraction below is the negative of the usual Ricci tensor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Riemann {
    dim: usize,
    r: Vec<RatFunc>,
}

impl Riemann {
    fn idx(&self, i: usize, j: usize, x: usize, y: usize) -> usize {
        ((i * self.dim + j) * self.dim + x) * self.dim + y
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, x: usize, y: usize) -> &RatFunc {
        &self.r[self.idx(i, j, x, y)]
    }

    /// 1-based accessor matching the usual `R_{ijxy}` notation.
    pub fn r1(&self, i: usize, j: usize, x: usize, y: usize) -> &RatFunc {
        self.get(i - 1, j - 1, x - 1, y - 1)
    }

    pub fn scaled(&self, c: &RatFunc) -> Riemann {
        Riemann { dim: self.dim, r: self.r.iter().map(|x| x * c).collect() }
    }

    /// Violations of antisymmetry, pair symmetry and the first Bianchi identity.
    pub fn symmetry_violations(&self) -> Vec<String> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        let v = self.get(i, j, x, y);
                        if v != &-self.get(j, i, x, y) {
                            out.push(format!("antisymmetry in first pair at {i}{j}{x}{y}"));
                        }
                        if v != &-self.get(i, j, y, x) {
                            out.push(format!("antisymmetry in second pair at {i}{j}{x}{y}"));
                        }
                        if v != self.get(x, y, i, j) {
                            out.push(format!("pair symmetry at {i}{j}{x}{y}"));
                        }
                        let b = &(v + self.get(i, x, y, j)) + self.get(i, y, j, x);
                        if !b.is_zero() {
                            out.push(format!("first Bianchi identity at {i}{j}{x}{y}"));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Second structure equation evaluated on a left-invariant connection.
pub fn riemann(conn: &Connection, o: &OrthoFrameAlgebra) -> Result<Riemann, CurvatureError> {
    let n = o.dim();
    if conn.dim() != n {
        return Err(CurvatureError::Dimension("connection and frame differ in dimension".into()));
    }
    let mut a = vec![RatFunc::zero(); n * n * n];
    for p in 0..n {
        for x in 0..n {
            for y in x + 1..n {
                a[(p * n + x) * n + y] = o.c(p, x, y);
            }
        }
    }
    let mut out = Riemann { dim: n, r: vec![RatFunc::zero(); n * n * n * n] };
    for i in 0..n {
        for j in 0..n {
            for x in 0..n {
                for y in x + 1..n {
                    let mut s = RatFunc::zero();
                    for p in 0..n {
                        let g = conn.get(p, i, j);
                        let c = &a[(p * n + x) * n + y];
                        if !g.is_zero() && !c.is_zero() {
                            s = &s + &(g * c);
                        }
                    }
                    for r in 0..n {
                        let t1 = conn.get(x, i, r);
                        let t2 = conn.get(y, r, j);
                        if !t1.is_zero() && !t2.is_zero() {
                            s = &s - &(t1 * t2);
                        }
                        let t3 = conn.get(y, i, r);
                        let t4 = conn.get(x, r, j);
                        if !t3.is_zero() && !t4.is_zero() {
                            s = &s + &(t3 * t4);
                        }
                    }
                    let s = o.reduce(&s);
                    let k1 = out.idx(i, j, y, x);
                    out.r[k1] = -&s;
                    let k2 = out.idx(i, j, x, y);
                    out.r[k2] = s;
                }
            }
        }
    }
    Ok(out)
}

/// Ricci contraction `ric[i][j] = Σ_p R[i,p][j,p]` and its trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RicciScalar {
    pub ricci: FracMatrix,
    pub scalar: RatFunc,
}

pub fn ricci_scalar(r: &Riemann) -> RicciScalar {
    let n = r.dim();
    let mut ric = FracMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let s: RatFunc = (0..n).map(|p| r.get(i, p, j, p).clone()).sum();
            ric.set(i, j, s);
        }
    }
    let scalar = ric.trace();
    RicciScalar { ricci: ric, scalar }
}
