//! Inner products, Gram–Schmidt on the coframe, and the frame normalizations
//! (rotation in the `(e², e³)` plane, overall scaling, orientation flip).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactmath::{FracMatrix, Poly, RatFunc};
use crate::liealg::{LieAlgebra, LieError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("inner product is not symmetric")]
    NotSymmetric,
    #[error("inner product is not positive definite (leading minor {0} is {1})")]
    NotPositiveDefinite(usize, String),
    #[error("Gram–Schmidt needs the square root of {0}, which is not exact")]
    SquareRootRequired(String),
    #[error("symbolic inner products must be diagonal")]
    SymbolicNotDiagonal,
    #[error("dimension mismatch: algebra has dim {algebra}, inner product has dim {metric}")]
    Dimension { algebra: usize, metric: usize },
    #[error("frame is not of the reduced triangular shape: {0}")]
    NotTriangular(String),
    #[error("c4_23 vanishes, so the frame cannot be normalized")]
    DegenerateC423,
    #[error("Jacobi relation c4_14 = c2_12 + c3_13 fails: residual {0}")]
    JacobiRelation(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Symmetric bilinear form on the Lie algebra, in the original basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    gram: FracMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InnerProductJson {
    Diag { diag: Vec<RatFunc> },
    Matrix { matrix: Vec<Vec<RatFunc>> },
}

impl InnerProduct {
    pub fn identity(n: usize) -> InnerProduct {
        InnerProduct { gram: FracMatrix::identity(n) }
    }

    pub fn diag(entries: Vec<RatFunc>) -> Result<InnerProduct, FrameError> {
        let n = entries.len();
        let mut g = FracMatrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            g.set(i, i, e);
        }
        InnerProduct::from_matrix(g)
    }

    /// `diag(k², 1, …, 1)`.
    pub fn g_k(n: usize, k: RatFunc) -> InnerProduct {
        let mut d = vec![RatFunc::one(); n];
        d[0] = k.pow(2);
        InnerProduct::diag(d).expect("diagonal with positive square")
    }

    pub fn from_matrix(gram: FracMatrix) -> Result<InnerProduct, FrameError> {
        if !gram.is_symmetric() {
            return Err(FrameError::NotSymmetric);
        }
        let ip = InnerProduct { gram };
        if ip.is_numeric() {
            let n = ip.gram.nrows();
            for m in 1..=n {
                let rows: Vec<Vec<RatFunc>> =
                    (0..m).map(|i| ip.gram.row(i)[..m].to_vec()).collect();
                let d = FracMatrix::from_rows(rows).det();
                let v = d.constant_value().expect("numeric");
                if !v.is_positive() {
                    return Err(FrameError::NotPositiveDefinite(m, v.to_string()));
                }
            }
        }
        Ok(ip)
    }

    pub fn from_json(j: &InnerProductJson) -> Result<InnerProduct, FrameError> {
        match j {
            InnerProductJson::Diag { diag } => InnerProduct::diag(diag.clone()),
            InnerProductJson::Matrix { matrix } => {
                let n = matrix.len();
                if matrix.iter().any(|r| r.len() != n) {
                    return Err(FrameError::NotSymmetric);
                }
                InnerProduct::from_matrix(FracMatrix::from_rows(matrix.clone()))
            }
        }
    }

    pub fn to_json(&self) -> InnerProductJson {
        InnerProductJson::Matrix { matrix: self.gram.to_rows() }
    }

    pub fn gram(&self) -> &FracMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn is_numeric(&self) -> bool {
        self.gram.entries().iter().all(|x| x.is_constant())
    }

    fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.gram.get(i, j).is_zero()))
    }
}

/// Lower-triangular coframe change `e^j = Σ_{i≤j} a^j_i φ^i` (row `j` of the matrix).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameChange {
    matrix: FracMatrix,
}

impl FrameChange {
    pub fn new(matrix: FracMatrix) -> Result<FrameChange, FrameError> {
        let n = matrix.nrows();
        for j in 0..n {
            if matrix.get(j, j).is_zero() {
                return Err(FrameError::Internal(format!("a^{j}_{j} vanishes")));
            }
            for i in j + 1..n {
                if !matrix.get(j, i).is_zero() {
                    return Err(FrameError::Internal("coframe change is not lower triangular".into()));
                }
            }
        }
        Ok(FrameChange { matrix })
    }

    pub fn matrix(&self) -> &FracMatrix {
        &self.matrix
    }

    pub fn compose(&self, later: &FrameChange) -> FrameChange {
        FrameChange { matrix: later.matrix.mul(&self.matrix) }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == FracMatrix::identity(self.matrix.nrows())
    }
}

/// A symbol standing for the positive square root of `square`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Radical {
    pub name: String,
    pub square: RatFunc,
}

/// One normalization applied after Gram–Schmidt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum FrameStep {
    /// Old `e² = cos·e'² + sin·e'³`, old `e³ = -sin·e'² + cos·e'³`.
    Rotation { cos: RatFunc, sin: RatFunc },
    /// New coframe is `factor` times the old one; the metric is scaled by `factor²`.
    Scaling { factor: RatFunc },
    Flip,
}

/// A Lie algebra in an orthonormal basis of some left-invariant metric.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoFrameAlgebra {
    pub algebra: LieAlgebra,
    pub change: FrameChange,
    pub orientation: i8,
    pub steps: Vec<FrameStep>,
    pub radicals: Vec<Radical>,
}

impl OrthoFrameAlgebra {
    /// Treats the basis of `algebra` as orthonormal.
    pub fn orthonormal(algebra: LieAlgebra) -> OrthoFrameAlgebra {
        let n = algebra.dim();
        OrthoFrameAlgebra {
            algebra,
            change: FrameChange { matrix: FracMatrix::identity(n) },
            orientation: 1,
            steps: Vec::new(),
            radicals: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Coefficient of `e^i∧e^j` in `de^k` (0-based, `i < j`).
    pub fn c(&self, k: usize, i: usize, j: usize) -> RatFunc {
        self.algebra.coframe_coeff(k, i, j)
    }

    /// Product of all scaling factors: curvature components of the current frame
    /// times `overall_scale²` give those of the metric before scaling.
    pub fn overall_scale(&self) -> RatFunc {
        self.steps
            .iter()
            .filter_map(|s| match s {
                FrameStep::Scaling { factor } => Some(factor.clone()),
                _ => None,
            })
            .fold(RatFunc::one(), |a, b| &a * &b)
    }

    /// Rewrites `x` using the recorded radical relations.
    pub fn reduce(&self, x: &RatFunc) -> RatFunc {
        self.radicals.iter().fold(x.clone(), |acc, r| reduce_radical(&acc, &r.name, &r.square))
    }

    fn reduce_algebra(&self, l: &LieAlgebra) -> Result<LieAlgebra, LieError> {
        if self.radicals.is_empty() {
            return Ok(l.clone());
        }
        l.map_entries(|x| Ok(self.reduce(x)))
    }

    /// Applies `old e = M·new e` on the coframe.
    fn apply(&self, m: &FracMatrix, step: FrameStep) -> Result<OrthoFrameAlgebra, FrameError> {
        let l = self.algebra.change_basis(m)?;
        let l = self.reduce_algebra(&l)?;
        let mut out = self.clone();
        out.algebra = l;
        out.steps.push(step);
        Ok(out)
    }
}

fn poly_split_radical(p: &Poly, name: &str, q: &RatFunc) -> (RatFunc, RatFunc) {
    // p = Σ a_i ρ^i  →  (even part, odd part / ρ) using ρ² = q
    let cs = p.coeffs_in(name);
    let mut even = RatFunc::zero();
    let mut odd = RatFunc::zero();
    for (i, c) in cs.into_iter().enumerate() {
        let t = &RatFunc::from_poly(c) * &q.pow((i / 2) as u32);
        if i % 2 == 0 {
            even = &even + &t;
        } else {
            odd = &odd + &t;
        }
    }
    (even, odd)
}

/// Reduces a rational function in `name` modulo `name² = square`, returning
/// `a + b·name` with `a, b` free of `name`.
pub fn reduce_radical(x: &RatFunc, name: &str, square: &RatFunc) -> RatFunc {
    if !x.vars().iter().any(|v| v == name) {
        return x.clone();
    }
    let (n0, n1) = poly_split_radical(x.numer(), name, square);
    let (d0, d1) = poly_split_radical(x.denom(), name, square);
    let rho = RatFunc::var(name);
    if d1.is_zero() {
        return &(&n0 + &(&n1 * &rho)) / &d0;
    }
    // multiply by the conjugate of the denominator
    let den = &(&d0 * &d0) - &(&(&d1 * &d1) * square);
    let a = &(&n0 * &d0) - &(&(&n1 * &d1) * square);
    let b = &(&n1 * &d0) - &(&n0 * &d1);
    &(&a + &(&b * &rho)) / &den
}

fn sqrt_or_err(x: &RatFunc) -> Result<RatFunc, FrameError> {
    x.sqrt_exact().ok_or_else(|| FrameError::SquareRootRequired(x.to_string()))
}

/// Whether `dφ¹ = 0`, `dφ², dφ³ ∈ ⟨φ¹², φ¹³⟩`, `dφ⁴ ∈ ⟨φ²³, φ¹⁴⟩`.
pub fn has_input_triangular_shape(l: &LieAlgebra) -> bool {
    allowed_shape(l, &[&[], &[(0, 1), (0, 2)], &[(0, 1), (0, 2)], &[(1, 2), (0, 3)]])
}

/// Whether `de¹ = 0`, `de², de³ ∈ ⟨e¹², e¹³⟩`, `de⁴ ∈ ⟨e¹², e¹³, e¹⁴, e²³⟩`.
pub fn has_reduced_shape(l: &LieAlgebra) -> bool {
    allowed_shape(
        l,
        &[&[], &[(0, 1), (0, 2)], &[(0, 1), (0, 2)], &[(0, 1), (0, 2), (0, 3), (1, 2)]],
    )
}

fn allowed_shape(l: &LieAlgebra, allowed: &[&[(usize, usize)]]) -> bool {
    if l.dim() != 4 {
        return false;
    }
    for (k, ok) in allowed.iter().enumerate() {
        for i in 0..4 {
            for j in i + 1..4 {
                if !ok.contains(&(i, j)) && !l.coframe_coeff(k, i, j).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Orthonormalizes the coframe `φ¹, φ², …` in this order with respect to the
/// dual inner product and rewrites the structure constants in the new frame.
pub fn gram_schmidt(l: &LieAlgebra, g: &InnerProduct) -> Result<OrthoFrameAlgebra, FrameError> {
    let n = l.dim();
    if g.dim() != n {
        return Err(FrameError::Dimension { algebra: n, metric: g.dim() });
    }
    if !g.is_numeric() && !g.is_diagonal() {
        return Err(FrameError::SymbolicNotDiagonal);
    }
    let dual = g.gram.inverse().map_err(|_| FrameError::NotPositiveDefinite(n, "0".into()))?;
    let ip = |u: &[RatFunc], v: &[RatFunc]| -> RatFunc {
        let dv = dual.mul_vec(v);
        u.iter().zip(&dv).map(|(a, b)| a * b).sum()
    };
    let mut rows: Vec<Vec<RatFunc>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = crate::liealg::unit(n, j);
        for e in &rows {
            let c = ip(&v, e);
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(e) {
                *x = &*x - &(&c * y);
            }
        }
        let norm = sqrt_or_err(&ip(&v, &v))?;
        let inv = norm.inv().map_err(|_| FrameError::NotPositiveDefinite(j + 1, "0".into()))?;
        rows.push(v.iter().map(|x| x * &inv).collect());
    }
    let a = FracMatrix::from_rows(rows);
    // sanity: the dual metric is the identity in the new coframe
    if a.mul(&dual).mul(&a.transpose()) != FracMatrix::identity(n) {
        return Err(FrameError::Internal("Gram–Schmidt output is not orthonormal".into()));
    }
    let b = a.inverse().map_err(|_| FrameError::Internal("singular coframe change".into()))?;
    let algebra = l.change_basis(&b)?;
    if has_input_triangular_shape(l) && !has_reduced_shape(&algebra) {
        return Err(FrameError::Internal("triangular shape was not preserved".into()));
    }
    Ok(OrthoFrameAlgebra {
        algebra,
        change: FrameChange::new(a)?,
        orientation: 1,
        steps: Vec::new(),
        radicals: Vec::new(),
    })
}

fn fresh_name(o: &OrthoFrameAlgebra, base: &str) -> String {
    let taken = |s: &str| o.algebra.params().iter().any(|p| p == s) || o.radicals.iter().any(|r| r.name == s);
    if !taken(base) {
        return base.to_string();
    }
    (1..).map(|i| format!("{base}{i}")).find(|s| !taken(s)).unwrap()
}

/// Rotates in the `(e², e³)` plane so that `c4_12 = 0`, then scales so that
/// `c4_23 = 1`, and checks `c4_14 = c2_12 + c3_13`.
pub fn normalize_frame(o: &OrthoFrameAlgebra) -> Result<OrthoFrameAlgebra, FrameError> {
    if !has_reduced_shape(&o.algebra) {
        return Err(FrameError::NotTriangular("expected de¹ = 0, de², de³ ∈ ⟨e¹², e¹³⟩, de⁴ ∈ ⟨e¹², e¹³, e¹⁴, e²³⟩".into()));
    }
    let c423 = o.c(3, 1, 2);
    if c423.is_zero() {
        return Err(FrameError::DegenerateC423);
    }
    let mut cur = o.clone();
    let c12 = o.c(3, 0, 1);
    let c13 = o.c(3, 0, 2);
    if !c12.is_zero() {
        let r2 = &(&c12 * &c12) + &(&c13 * &c13);
        let r = match r2.sqrt_exact() {
            Some(r) => r,
            None => {
                let name = fresh_name(&cur, "rho");
                cur.radicals.push(Radical { name: name.clone(), square: r2 });
                RatFunc::var(&name)
            }
        };
        let cos = cur.reduce(&(&c13 / &r));
        let sin = cur.reduce(&(&c12 / &r));
        let z = RatFunc::zero();
        let one = RatFunc::one();
        let m = FracMatrix::from_rows(vec![
            vec![one.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), cos.clone(), sin.clone(), z.clone()],
            vec![z.clone(), -&sin, cos.clone(), z.clone()],
            vec![z.clone(), z.clone(), z, one],
        ]);
        cur = cur.apply(&m, FrameStep::Rotation { cos, sin })?;
        if !cur.c(3, 0, 1).is_zero() {
            return Err(FrameError::Internal(format!("rotation left c4_12 = {}", cur.c(3, 0, 1))));
        }
    }
    let lambda = cur.c(3, 1, 2);
    if !lambda.is_one() {
        let m = FracMatrix::identity(4).scale(&lambda.inv().expect("nonzero"));
        cur = cur.apply(&m, FrameStep::Scaling { factor: lambda })?;
    }
    let resid = cur.reduce(&(&(&cur.c(3, 0, 3) - &cur.c(1, 0, 1)) - &cur.c(2, 0, 2)));
    if !resid.is_zero() {
        return Err(FrameError::JacobiRelation(resid.to_string()));
    }
    if !has_reduced_shape(&cur.algebra) || !cur.c(3, 1, 2).is_one() {
        return Err(FrameError::Internal("normalization lost the reduced shape".into()));
    }
    Ok(cur)
}

/// Reverses orientation by `e¹ ↦ -e¹`.
pub fn flip_orientation(o: &OrthoFrameAlgebra) -> Result<OrthoFrameAlgebra, FrameError> {
    let n = o.dim();
    let mut m = FracMatrix::identity(n);
    m.set(0, 0, RatFunc::int(-1));
    let mut out = o.apply(&m, FrameStep::Flip)?;
    out.orientation = -o.orientation;
    Ok(out)
}

/// Structure constants of a frame algebra after substituting for symbols.
pub fn substitute_frame(
    o: &OrthoFrameAlgebra,
    subs: &BTreeMap<String, RatFunc>,
) -> Result<OrthoFrameAlgebra, FrameError> {
    let mut out = o.clone();
    out.algebra = o.algebra.substitute(subs)?;
    Ok(out)
}
