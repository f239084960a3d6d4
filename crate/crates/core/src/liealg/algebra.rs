use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::LieError;
use crate::exactmath::{FracMatrix, Rat, RatFunc};

/// Real Lie algebra given by structure constants in a fixed basis.
///
/// `[f_i, f_j] = Σ_k c^k_ij f_k`. The dual coframe then satisfies
/// `dφ^k = -Σ_{i<j} c^k_ij φ^i∧φ^j`. Entries may depend rationally on named
/// parameters. Indices are 0-based here and 1-based in JSON.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    dim: usize,
    params: Vec<String>,
    c: Vec<RatFunc>,
}

impl LieAlgebra {
    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra { dim, params: Vec::new(), c: vec![RatFunc::zero(); dim * dim * dim] }
    }

    /// Builds from brackets `(i, j, [(k, c^k_ij)])`; antisymmetry is filled in.
    pub fn from_brackets(
        dim: usize,
        brackets: &[(usize, usize, Vec<(usize, RatFunc)>)],
    ) -> Result<LieAlgebra, LieError> {
        let mut l = LieAlgebra::abelian(dim);
        for (i, j, out) in brackets {
            for (k, v) in out {
                l.set_bracket(*i, *j, *k, v.clone())?;
            }
        }
        l.refresh_params();
        Ok(l)
    }

    /// Builds from exterior derivatives `dφ^k = Σ a^k_ij φ^i∧φ^j` listed as `(k, i, j, a)`.
    pub fn from_coframe(
        dim: usize,
        terms: &[(usize, usize, usize, RatFunc)],
    ) -> Result<LieAlgebra, LieError> {
        let mut l = LieAlgebra::abelian(dim);
        for (k, i, j, a) in terms {
            let (i, j, a) = if i < j { (*i, *j, a.clone()) } else { (*j, *i, -a) };
            let cur = l.get(i, j, *k).clone();
            l.set_bracket(i, j, *k, &cur - &a)?;
        }
        l.refresh_params();
        Ok(l)
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    fn check_index(&self, i: usize) -> Result<(), LieError> {
        if i >= self.dim {
            return Err(LieError::Index { index: i, dim: self.dim });
        }
        Ok(())
    }

    /// Sets `c^k_ij` (and `c^k_ji = -c^k_ij`).
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, v: RatFunc) -> Result<(), LieError> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_index(k)?;
        if i == j {
            if !v.is_zero() {
                return Err(LieError::NotAntisymmetric { i, j });
            }
            return Ok(());
        }
        let a = self.idx(i, j, k);
        let b = self.idx(j, i, k);
        self.c[b] = -&v;
        self.c[a] = v;
        Ok(())
    }

    pub(crate) fn refresh_params(&mut self) {
        let mut p: Vec<String> = self.c.iter().flat_map(|x| x.vars()).collect();
        p.sort();
        p.dedup();
        self.params = p;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Names of the symbolic parameters that occur in the structure constants.
    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn is_numeric(&self) -> bool {
        self.params.is_empty()
    }

    /// Structure constant `c^k_ij`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &RatFunc {
        &self.c[self.idx(i, j, k)]
    }

    /// Coefficient of `φ^i∧φ^j` in `dφ^k`, for `i < j`.
    pub fn coframe_coeff(&self, k: usize, i: usize, j: usize) -> RatFunc {
        -self.get(i, j, k)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<RatFunc> {
        (0..self.dim).map(|k| self.get(i, j, k).clone()).collect()
    }

    /// Bracket of two vectors given by coordinates.
    pub fn bracket(&self, u: &[RatFunc], v: &[RatFunc]) -> Vec<RatFunc> {
        let n = self.dim;
        let mut out = vec![RatFunc::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || v[j].is_zero() {
                    continue;
                }
                let w = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&w * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(v)`; column `j` holds `[v, f_j]`.
    pub fn ad_matrix(&self, v: &[RatFunc]) -> FracMatrix {
        let n = self.dim;
        let mut m = FracMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(v, &unit(n, j));
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Nonzero components of the Jacobiator `[[f_i,f_j],f_k] + cyclic` for `i<j<k`.
    pub fn jacobi_residual(&self) -> Vec<JacobiEntry> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for m in 0..n {
                        let mut s = RatFunc::zero();
                        for l in 0..n {
                            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                                let x = self.get(a, b, l);
                                if x.is_zero() {
                                    continue;
                                }
                                let y = self.get(l, c, m);
                                if !y.is_zero() {
                                    s = &s + &(x * y);
                                }
                            }
                        }
                        if !s.is_zero() {
                            out.push(JacobiEntry { i, j, k, component: m, value: s });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_lie(&self) -> bool {
        self.jacobi_residual().is_empty()
    }

    /// Applies `f` to every structure constant.
    pub fn map_entries(
        &self,
        mut f: impl FnMut(&RatFunc) -> Result<RatFunc, LieError>,
    ) -> Result<LieAlgebra, LieError> {
        let c = self.c.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        let mut l = LieAlgebra { dim: self.dim, params: Vec::new(), c };
        l.refresh_params();
        Ok(l)
    }

    /// Substitutes rational values for parameters.
    pub fn specialize(&self, at: &BTreeMap<String, Rat>) -> Result<LieAlgebra, LieError> {
        self.map_entries(|x| Ok(x.partial_eval(at)?))
    }

    /// Substitutes rational functions for parameters.
    pub fn substitute(&self, subs: &BTreeMap<String, RatFunc>) -> Result<LieAlgebra, LieError> {
        self.map_entries(|x| Ok(x.substitute(subs)?))
    }

    /// Structure constants in the basis `e_j = Σ_i p[i][j] f_i`.
    pub fn change_basis(&self, p: &FracMatrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        if p.nrows() != n || p.ncols() != n {
            return Err(LieError::Dimension(format!("basis change must be {n}x{n}")));
        }
        let q = p.inverse().map_err(|_| LieError::Singular)?;
        let cols: Vec<Vec<RatFunc>> = (0..n)
            .map(|j| (0..n).map(|i| p.get(i, j).clone()).collect())
            .collect();
        let mut l = LieAlgebra::abelian(n);
        for i in 0..n {
            for j in i + 1..n {
                let br = self.bracket(&cols[i], &cols[j]);
                let coords = q.mul_vec(&br);
                for (k, v) in coords.into_iter().enumerate() {
                    l.set_bracket(i, j, k, v)?;
                }
            }
        }
        l.refresh_params();
        Ok(l)
    }

    /// Whether the linear map sending `f_j` to column `j` of `m` preserves brackets.
    pub fn is_homomorphism_to(&self, target: &LieAlgebra, m: &FracMatrix) -> bool {
        let n = self.dim;
        if m.ncols() != n || m.nrows() != target.dim {
            return false;
        }
        let img: Vec<Vec<RatFunc>> = (0..n)
            .map(|j| (0..target.dim).map(|i| m.get(i, j).clone()).collect())
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = target.bracket(&img[i], &img[j]);
                let rhs = m.mul_vec(&self.bracket_basis(i, j));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> AlgebraJson {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let out: BTreeMap<usize, RatFunc> = (0..self.dim)
                    .filter(|&k| !self.get(i, j, k).is_zero())
                    .map(|k| (k + 1, self.get(i, j, k).clone()))
                    .collect();
                if !out.is_empty() {
                    brackets.push(BracketJson { i: i + 1, j: j + 1, out });
                }
            }
        }
        AlgebraJson { dim: self.dim, params: self.params.clone(), brackets }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<LieAlgebra, LieError> {
        let mut l = LieAlgebra::abelian(j.dim);
        for b in &j.brackets {
            if b.i == 0 || b.j == 0 {
                return Err(LieError::Dimension("indices in JSON are 1-based".into()));
            }
            for (k, v) in &b.out {
                if *k == 0 {
                    return Err(LieError::Dimension("indices in JSON are 1-based".into()));
                }
                let cur = l.get_checked(b.i - 1, b.j - 1, *k - 1)?;
                if !cur.is_zero() && cur != *v {
                    return Err(LieError::Dimension(format!(
                        "conflicting entries for [f{}, f{}]",
                        b.i, b.j
                    )));
                }
                l.set_bracket(b.i - 1, b.j - 1, k - 1, v.clone())?;
            }
        }
        l.refresh_params();
        for p in &j.params {
            if !l.params.contains(p) {
                l.params.push(p.clone());
            }
        }
        l.params.sort();
        Ok(l)
    }

    fn get_checked(&self, i: usize, j: usize, k: usize) -> Result<RatFunc, LieError> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_index(k)?;
        Ok(self.get(i, j, k).clone())
    }
}

/// One nonzero component of the Jacobi identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub component: usize,
    pub value: RatFunc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default)]
    pub params: Vec<String>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub out: BTreeMap<usize, RatFunc>,
}

/// Coordinates of the `i`-th basis vector.
pub fn unit(n: usize, i: usize) -> Vec<RatFunc> {
    let mut v = vec![RatFunc::zero(); n];
    v[i] = RatFunc::one();
    v
}
