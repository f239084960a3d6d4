use serde::Serialize;

use super::structure::{bracket_span, center, span};
use super::{LieAlgebra, LieError};
use crate::exactmath::{FracMatrix, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AutomorphismKind {
    /// Reflection in the hyperplane orthogonal to a central vector.
    CentralReflection,
    /// `-1` on a codimension-one abelian ideal, `+1` on its orthogonal line.
    AbelianIdealNegation,
}

/// An isometric automorphism of determinant `-1`, already verified.
#[derive(Clone, Debug, Serialize)]
pub struct OrientationReversal {
    pub kind: AutomorphismKind,
    /// Column `j` is the image of `f_j`.
    pub matrix: FracMatrix,
}

fn dot(g: &FracMatrix, u: &[RatFunc], v: &[RatFunc]) -> RatFunc {
    let gv = g.mul_vec(v);
    u.iter().zip(&gv).map(|(a, b)| a * b).sum()
}

/// `x ↦ s·x + t·⟨w,x⟩/⟨w,w⟩·w`.
fn rank_one_update(g: &FracMatrix, w: &[RatFunc], s: i64, t: i64) -> FracMatrix {
    let n = w.len();
    let ww = dot(g, w, w);
    let gw = g.mul_vec(w);
    let mut m = FracMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut v = &(&w[i] * &gw[j]) * &RatFunc::int(t);
            v = &v / &ww;
            if i == j {
                v = &v + &RatFunc::int(s);
            }
            m.set(i, j, v);
        }
    }
    m
}

fn is_zero_vec(v: &[RatFunc]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn combine(coeffs: &[RatFunc], vs: &[Vec<RatFunc>]) -> Vec<RatFunc> {
    let n = vs[0].len();
    let mut out = vec![RatFunc::zero(); n];
    for (c, v) in coeffs.iter().zip(vs) {
        for (o, x) in out.iter_mut().zip(v) {
            *o = &*o + &(c * x);
        }
    }
    out
}

/// Kernel of `x ↦ Σ x_a vs[a]` in coefficient space.
fn relations(vs: &[Vec<RatFunc>]) -> Vec<Vec<RatFunc>> {
    if vs.is_empty() {
        return Vec::new();
    }
    FracMatrix::from_rows(vs.to_vec()).transpose().kernel()
}

fn complement(n: usize, sub: &[Vec<RatFunc>]) -> Vec<Vec<RatFunc>> {
    let mut cur = sub.to_vec();
    let mut out = Vec::new();
    for i in 0..n {
        let e = super::algebra::unit(n, i);
        let mut trial = cur.clone();
        trial.push(e.clone());
        if span(n, &trial).0.len() > cur.len() {
            cur.push(e.clone());
            out.push(e);
        }
    }
    out
}

/// A codimension-one abelian ideal, if one exists. Complete in dimension 4.
pub fn abelian_hyperideal(l: &LieAlgebra) -> Option<Vec<Vec<RatFunc>>> {
    let n = l.dim();
    let std: Vec<_> = (0..n).map(|i| super::algebra::unit(n, i)).collect();
    let (d, _) = bracket_span(l, &std, &std);
    if !bracket_span(l, &d, &d).0.is_empty() {
        return None;
    }
    let w = complement(n, &d);
    let candidate: Vec<Vec<RatFunc>> = match n - d.len() {
        0 => return None,
        1 => d.clone(),
        2 => {
            // A = g′ + ⟨w⟩ with [g′, w] = 0
            let cols: Vec<Vec<RatFunc>> = w
                .iter()
                .map(|wi| d.iter().flat_map(|b| l.bracket(b, wi)).collect())
                .collect();
            let rel = if d.is_empty() {
                vec![vec![RatFunc::one(), RatFunc::zero()]]
            } else {
                relations(&cols)
            };
            let c = rel.first()?;
            let mut a = d.clone();
            a.push(combine(c, &w));
            a
        }
        3 if n == 4 => {
            // V0 = {w : [g′, w] = 0}, then a 2-plane U ⊆ V0 with [U, U] = 0
            let cols: Vec<Vec<RatFunc>> = w
                .iter()
                .map(|wi| d.iter().flat_map(|b| l.bracket(b, wi)).collect())
                .collect();
            let v0: Vec<Vec<RatFunc>> = relations(&cols).iter().map(|c| combine(c, &w)).collect();
            let u = match v0.len() {
                2 => v0,
                3 => {
                    let br = [
                        l.bracket(&v0[1], &v0[2]),
                        l.bracket(&v0[2], &v0[0]),
                        l.bracket(&v0[0], &v0[1]),
                    ];
                    let gamma = relations(&br).into_iter().next()?;
                    let plane = FracMatrix::from_rows(vec![gamma]).kernel();
                    plane.iter().map(|c| combine(c, &v0)).collect()
                }
                _ => return None,
            };
            let mut a = d.clone();
            a.extend(u);
            a
        }
        _ if d.is_empty() => std[1..].to_vec(),
        _ => return None,
    };
    let ok = candidate.len() + 1 == n
        && span(n, &candidate).0.len() == candidate.len()
        && bracket_span(l, &candidate, &candidate).0.is_empty();
    ok.then_some(candidate)
}

fn verify(l: &LieAlgebra, g: &FracMatrix, m: &FracMatrix) -> bool {
    l.is_homomorphism_to(l, m) && m.transpose().mul(g).mul(m) == *g && m.det() == RatFunc::int(-1)
}

/// An orientation-reversing isometric automorphism of `(l, g)`, returned only
/// after it has been checked to be an automorphism, orthogonal and of
/// determinant `-1`. Both `l` and `g` must be numeric.
pub fn orientation_reversing_automorphism(
    l: &LieAlgebra,
    g: &FracMatrix,
) -> Result<Option<OrientationReversal>, LieError> {
    let n = l.dim();
    if g.nrows() != n || g.ncols() != n {
        return Err(LieError::Dimension("inner product has wrong size".into()));
    }
    if g.entries().iter().any(|x| !x.is_constant()) {
        return Err(LieError::NeedsSpecialization {
            operation: "orientation_reversing_automorphism".into(),
            params: Vec::new(),
        });
    }
    let z = center(l)?;
    if !z.is_empty() {
        // the reflection is an automorphism iff the central vector is orthogonal to g′
        let std: Vec<_> = (0..n).map(|i| super::algebra::unit(n, i)).collect();
        let (d, _) = bracket_span(l, &std, &std);
        let cols: Vec<Vec<RatFunc>> = z
            .iter()
            .map(|za| d.iter().map(|b| dot(g, za, b)).collect())
            .collect();
        let rel = if d.is_empty() {
            vec![super::algebra::unit(z.len(), 0)]
        } else {
            relations(&cols)
        };
        if let Some(c) = rel.first() {
            let v = combine(c, &z);
            if !is_zero_vec(&v) {
                let m = rank_one_update(g, &v, 1, -2);
                if verify(l, g, &m) {
                    return Ok(Some(OrientationReversal {
                        kind: AutomorphismKind::CentralReflection,
                        matrix: m,
                    }));
                }
            }
        }
    }
    if let Some(a) = abelian_hyperideal(l) {
        // normal direction: G^{-1} applied to a functional vanishing on A
        let alpha = FracMatrix::from_rows(a).kernel().into_iter().next();
        if let Some(alpha) = alpha {
            let gi = g.inverse().map_err(|_| LieError::Singular)?;
            let normal = gi.mul_vec(&alpha);
            let m = rank_one_update(g, &normal, -1, 2);
            if verify(l, g, &m) {
                return Ok(Some(OrientationReversal {
                    kind: AutomorphismKind::AbelianIdealNegation,
                    matrix: m,
                }));
            }
        }
    }
    Ok(None)
}
