use super::{LieAlgebra, LieError};
use crate::exactmath::{FracMatrix, RatFunc};

/// Semidirect product `ℝ^b ⊕_ρ h` with `ℝ^b` abelian acting by commuting
/// derivations. The new basis is `(x_1, …, x_b, h_1, …, h_m)`.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub base: LieAlgebra,
    /// `derivations[a]` is the matrix of `ρ(x_a)` on `h` (column `j` = image of `h_j`).
    pub derivations: Vec<FracMatrix>,
}

fn is_derivation(h: &LieAlgebra, d: &FracMatrix) -> bool {
    let m = h.dim();
    let col = |j: usize| -> Vec<RatFunc> { (0..m).map(|i| d.get(i, j).clone()).collect() };
    for i in 0..m {
        for j in i + 1..m {
            let lhs = d.mul_vec(&h.bracket_basis(i, j));
            let a = h.bracket(&col(i), &super::algebra::unit(m, j));
            let b = h.bracket(&super::algebra::unit(m, i), &col(j));
            let rhs: Vec<RatFunc> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

impl ExtensionSpec {
    pub fn build(&self) -> Result<LieAlgebra, LieError> {
        let m = self.base.dim();
        let b = self.derivations.len();
        for (a, d) in self.derivations.iter().enumerate() {
            if d.nrows() != m || d.ncols() != m {
                return Err(LieError::Dimension(format!("derivation {a} is not {m}x{m}")));
            }
            if !is_derivation(&self.base, d) {
                return Err(LieError::NotDerivation(a));
            }
        }
        for a in 0..b {
            for c in a + 1..b {
                let da = &self.derivations[a];
                let dc = &self.derivations[c];
                if !da.mul(dc).sub(&dc.mul(da)).is_zero() {
                    return Err(LieError::NonCommutingDerivations(a, c));
                }
            }
        }
        let mut l = LieAlgebra::abelian(b + m);
        for i in 0..m {
            for j in i + 1..m {
                for k in 0..m {
                    l.set_bracket(b + i, b + j, b + k, self.base.get(i, j, k).clone())?;
                }
            }
        }
        for (a, d) in self.derivations.iter().enumerate() {
            for j in 0..m {
                for i in 0..m {
                    l.set_bracket(a, b + j, b + i, d.get(i, j).clone())?;
                }
            }
        }
        l.refresh_params();
        if !l.is_lie() {
            return Err(LieError::NotLie);
        }
        Ok(l)
    }
}
