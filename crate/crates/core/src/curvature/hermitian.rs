use serde::Serialize;

use super::{CurvatureError, Form, Orientation};
use crate::exactmath::{linear_solve, FracMatrix, RatFunc};
use crate::frames::OrthoFrameAlgebra;

/// The basis `ω1 = e12 ± e34`, `ω2 = e13 ± e42`, `ω3 = e14 ± e23`.
pub fn two_form_basis(z: Orientation) -> [Form; 3] {
    let s = RatFunc::int(z.sign());
    let one = RatFunc::one();
    [
        Form::mono(&[0, 1], one.clone()).add(&Form::mono(&[2, 3], s.clone())),
        Form::mono(&[0, 2], one.clone()).add(&Form::mono(&[3, 1], s.clone())),
        Form::mono(&[0, 3], one).add(&Form::mono(&[1, 2], s)),
    ]
}

/// Lee form of a non-degenerate 2-form together with closedness data.
#[derive(Clone, Debug, Serialize)]
pub struct LeeForm {
    /// Coefficients of `θ` on `e¹, …, eⁿ`.
    pub theta: Vec<RatFunc>,
    pub d_theta_zero: bool,
}

/// Solves `dω = ω∧θ` for the 1-form `θ`.
pub fn lee_form(o: &OrthoFrameAlgebra, omega: &Form) -> Result<LeeForm, CurvatureError> {
    let n = o.dim();
    if omega.wedge(omega).is_zero() {
        return Err(CurvatureError::Degenerate("ω∧ω = 0".into()));
    }
    let domega = omega.d(o);
    let triples: Vec<Vec<usize>> = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| vec![a, b, c])))
        .collect();
    let mut a = FracMatrix::zeros(triples.len(), n);
    let mut b = FracMatrix::zeros(triples.len(), 1);
    for k in 0..n {
        let col = omega.wedge(&Form::mono(&[k], RatFunc::one()));
        for (r, t) in triples.iter().enumerate() {
            a.set(r, k, col.coeff(t));
        }
    }
    for (r, t) in triples.iter().enumerate() {
        b.set(r, 0, domega.coeff(t));
    }
    let x = linear_solve(&a, &b).map_err(CurvatureError::LeeForm)?;
    let theta: Vec<RatFunc> = (0..n).map(|i| o.reduce(x.get(i, 0))).collect();
    let dtheta = Form::one_form(&theta).d(o).map(|c| o.reduce(c));
    Ok(LeeForm { theta, d_theta_zero: dtheta.is_zero() })
}

/// Endomorphism `J` with `J e_b = Σ_a ω(e_b, e_a) e_a`; must satisfy `J² = -1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostComplexStructure {
    pub matrix: FracMatrix,
}

impl AlmostComplexStructure {
    pub fn from_two_form(n: usize, omega: &Form) -> Result<AlmostComplexStructure, CurvatureError> {
        let mut m = FracMatrix::zeros(n, n);
        for b in 0..n {
            for a in 0..n {
                m.set(a, b, omega.coeff(&[b, a]));
            }
        }
        let sq = m.mul(&m);
        if sq != FracMatrix::identity(n).scale(&RatFunc::int(-1)) {
            return Err(CurvatureError::NotComplex);
        }
        Ok(AlmostComplexStructure { matrix: m })
    }
}

/// `N(e_i, e_j)` for `i < j`, as coordinate vectors.
#[derive(Clone, Debug, Serialize)]
pub struct Nijenhuis {
    pub entries: Vec<((usize, usize), Vec<RatFunc>)>,
}

impl Nijenhuis {
    pub fn is_integrable(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.iter().all(|x| x.is_zero()))
    }
}

/// `N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]` on basis pairs.
pub fn nijenhuis(o: &OrthoFrameAlgebra, j: &AlmostComplexStructure) -> Nijenhuis {
    let n = o.dim();
    let l = &o.algebra;
    let col = |b: usize| -> Vec<RatFunc> { (0..n).map(|a| j.matrix.get(a, b).clone()).collect() };
    let unit = |i: usize| crate::liealg::unit(n, i);
    let mut entries = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (ja, jb) = (col(a), col(b));
            let t1 = l.bracket(&ja, &jb);
            let t2 = j.matrix.mul_vec(&l.bracket(&ja, &unit(b)));
            let t3 = j.matrix.mul_vec(&l.bracket(&unit(a), &jb));
            let t4 = l.bracket(&unit(a), &unit(b));
            let v: Vec<RatFunc> = (0..n)
                .map(|k| o.reduce(&(&(&(&t1[k] - &t2[k]) - &t3[k]) - &t4[k])))
                .collect();
            entries.push(((a, b), v));
        }
    }
    Nijenhuis { entries }
}
