use serde::Serialize;

use super::{LieAlgebra, LieError};
use crate::exactmath::{linear_solve, FracMatrix, RatFunc};

/// Row-reduced basis of the span of `vectors`, with the pivots that were used.
pub fn span(n: usize, vectors: &[Vec<RatFunc>]) -> (Vec<Vec<RatFunc>>, Vec<RatFunc>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut m = FracMatrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.ncols(), n);
    let piv = m.rref_tracked();
    let basis = (0..piv.len()).map(|r| m.row(r).to_vec()).collect();
    (basis, piv.into_iter().map(|(_, v)| v).collect())
}

/// Span of all brackets `[a, b]` with `a` in `left` and `b` in `right`.
pub fn bracket_span(
    l: &LieAlgebra,
    left: &[Vec<RatFunc>],
    right: &[Vec<RatFunc>],
) -> (Vec<Vec<RatFunc>>, Vec<RatFunc>) {
    let mut vs = Vec::new();
    for a in left {
        for b in right {
            let v = l.bracket(a, b);
            if v.iter().any(|x| !x.is_zero()) {
                vs.push(v);
            }
        }
    }
    span(l.dim(), &vs)
}

fn standard_basis(n: usize) -> Vec<Vec<RatFunc>> {
    (0..n).map(|i| super::algebra::unit(n, i)).collect()
}

fn require_numeric(l: &LieAlgebra, what: &str) -> Result<(), LieError> {
    if l.is_numeric() {
        Ok(())
    } else {
        Err(LieError::NeedsSpecialization {
            operation: what.to_string(),
            params: l.params().to_vec(),
        })
    }
}

/// The first three derived algebras `g′ ⊇ g″ ⊇ g‴`.
#[derive(Clone, Debug, Serialize)]
pub struct DerivedSeries {
    pub dims: [usize; 3],
    pub bases: [Vec<Vec<RatFunc>>; 3],
}

/// Derived series of a numeric algebra. Symbolic ranks are not case-split: a
/// parametrized algebra must be specialized first.
pub fn derived_series(l: &LieAlgebra) -> Result<DerivedSeries, LieError> {
    require_numeric(l, "derived_series")?;
    let g = standard_basis(l.dim());
    let (d1, _) = bracket_span(l, &g, &g);
    let (d2, _) = bracket_span(l, &d1, &d1);
    let (d3, _) = bracket_span(l, &d2, &d2);
    Ok(DerivedSeries { dims: [d1.len(), d2.len(), d3.len()], bases: [d1, d2, d3] })
}

/// Basis of the center of a numeric algebra.
pub fn center(l: &LieAlgebra) -> Result<Vec<Vec<RatFunc>>, LieError> {
    require_numeric(l, "center")?;
    let n = l.dim();
    // v is central iff Σ_i v_i c^k_ij = 0 for all j, k
    let mut m = FracMatrix::zeros(n * n, n);
    for j in 0..n {
        for k in 0..n {
            for i in 0..n {
                m.set(j * n + k, i, l.get(i, j, k).clone());
            }
        }
    }
    Ok(m.kernel())
}

/// Isomorphism invariant of an algebra whose derived algebra has codimension one.
#[derive(Clone, Debug, Serialize)]
pub struct IsoInvariant {
    /// `det/tr` of `ad f` on `g′` after rescaling `f` so the trace is 4,
    /// i.e. `16·det/tr³`. Independent of the choice of `f ∉ g′`.
    pub normalized_ratio: RatFunc,
    /// `det/tr` for the given `f`; changes by `λ²` when `f` is scaled by `λ`.
    pub raw_ratio: RatFunc,
    pub det: RatFunc,
    pub trace: RatFunc,
    /// Symbolic pivots assumed nonzero while computing `g′`.
    pub assumptions: Vec<RatFunc>,
}

/// Restriction of `ad f` to `g′`, in the row-reduced basis of `g′`.
pub fn ad_on_derived(
    l: &LieAlgebra,
    f: &[RatFunc],
) -> Result<(FracMatrix, Vec<RatFunc>), LieError> {
    let n = l.dim();
    if f.len() != n {
        return Err(LieError::Dimension(format!("vector has {} entries, algebra has dim {n}", f.len())));
    }
    let g = standard_basis(n);
    let (d1, piv) = bracket_span(l, &g, &g);
    if d1.len() + 1 != n {
        return Err(LieError::Invariant(format!(
            "derived algebra has dimension {}, expected {}",
            d1.len(),
            n - 1
        )));
    }
    let mut with_f = d1.clone();
    with_f.push(f.to_vec());
    if span(n, &with_f).0.len() != n {
        return Err(LieError::Invariant("f lies in the derived algebra".into()));
    }
    let basis_cols = FracMatrix::from_rows(d1.clone()).transpose();
    let m = d1.len();
    let mut rhs = FracMatrix::zeros(n, m);
    for (j, b) in d1.iter().enumerate() {
        for (i, x) in l.bracket(f, b).into_iter().enumerate() {
            rhs.set(i, j, x);
        }
    }
    let ad = linear_solve(&basis_cols, &rhs)
        .map_err(|e| LieError::Invariant(format!("derived algebra not ad-invariant: {e}")))?;
    let assumptions = piv.into_iter().filter(|p| !p.is_constant()).collect();
    Ok((ad, assumptions))
}

/// Determinant/trace invariant of `ad f|g′` for an algebra with `dim g′ = dim g - 1`.
pub fn iso_invariant(l: &LieAlgebra, f: &[RatFunc]) -> Result<IsoInvariant, LieError> {
    let (ad, assumptions) = ad_on_derived(l, f)?;
    let det = ad.det();
    let trace = ad.trace();
    if trace.is_zero() {
        return Err(LieError::Invariant("ad f has zero trace on g′".into()));
    }
    let raw_ratio = &det / &trace;
    let normalized_ratio = &(&det * &RatFunc::int(16)) / &trace.pow(3);
    Ok(IsoInvariant { normalized_ratio, raw_ratio, det, trace, assumptions })
}
