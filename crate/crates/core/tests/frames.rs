use std::collections::BTreeMap;

use curvlie::curvature::curvature_pipeline;
use curvlie::exactmath::{FracMatrix, Rat, RatFunc};
use curvlie::frames::{
    flip_orientation, gram_schmidt, has_reduced_shape, normalize_frame, FrameError, FrameStep,
    InnerProduct, OrthoFrameAlgebra,
};
use curvlie::liealg::{catalog, g_tau, LieAlgebra};
use proptest::prelude::*;

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

fn coframe(terms: &[(usize, usize, usize, &str)]) -> LieAlgebra {
    let t: Vec<_> = terms.iter().map(|(k, i, j, a)| (k - 1, i - 1, j - 1, rf(a))).collect();
    LieAlgebra::from_coframe(4, &t).unwrap()
}

/// Structure equations of g_k at (τ, k) = (0, 1) in the orthonormal frame.
fn reduced_base(extra: &[(usize, usize, usize, &str)]) -> OrthoFrameAlgebra {
    let mut terms = vec![(2, 1, 2, "-1"), (3, 1, 3, "-1"), (4, 1, 4, "-2"), (4, 2, 3, "1")];
    terms.extend_from_slice(extra);
    OrthoFrameAlgebra::orthonormal(coframe(&terms))
}

/// `A G⁻¹ Aᵀ` for the coframe change `A`.
fn induced(o: &OrthoFrameAlgebra, g: &FracMatrix) -> FracMatrix {
    let a = o.change.matrix();
    a.mul(&g.inverse().unwrap()).mul(&a.transpose())
}

#[test]
fn identity_metric_gives_identity_change() {
    let l = g_tau(rf("tau"));
    let o = gram_schmidt(&l, &InnerProduct::identity(4)).unwrap();
    assert!(o.change.is_identity());
    assert_eq!(o.algebra, l);
}

#[test]
fn g_k_frame_is_orthonormal_symbolically() {
    let g = InnerProduct::g_k(4, rf("k"));
    let o = gram_schmidt(&g_tau(rf("tau")), &g).unwrap();
    assert_eq!(induced(&o, g.gram()), FracMatrix::identity(4));
    assert_eq!(o.change.matrix().get(0, 0), &rf("k"));
    assert!(has_reduced_shape(&o.algebra));
}

/// `|f4|² = 4` makes `e4 = f4/2`, so `e⁴ = 2φ⁴` and `de⁴ = 2φ²³ + … = 2e²³ + …`;
/// `|f4|² = 1/4` gives `e⁴ = φ⁴/2` and halves the coefficient instead.
#[test]
fn g4_1_with_rescaled_fourth_vector() {
    let l = catalog("g4_1", &BTreeMap::new()).unwrap();
    for (g44, want) in [("4", "2"), ("1/4", "1/2")] {
        let g = InnerProduct::diag(vec![rf("1"), rf("1"), rf("1"), rf(g44)]).unwrap();
        let o = gram_schmidt(&l, &g).unwrap();
        assert_eq!(o.c(3, 1, 2), rf(want), "g44 = {g44}");
        assert_eq!(o.c(3, 0, 3), l.coframe_coeff(3, 0, 3));
    }
}

#[test]
fn non_positive_metrics_are_rejected() {
    assert!(matches!(
        InnerProduct::diag(vec![rf("1"), rf("-1"), rf("1"), rf("1")]),
        Err(FrameError::NotPositiveDefinite(2, _))
    ));
    let m = FracMatrix::from_rows(vec![vec![rf("1"), rf("2")], vec![rf("3"), rf("1")]]);
    assert!(matches!(InnerProduct::from_matrix(m), Err(FrameError::NotSymmetric)));
}

#[test]
fn normalized_input_is_left_alone() {
    let o = reduced_base(&[]);
    let n = normalize_frame(&o).unwrap();
    assert!(n.steps.is_empty());
    assert_eq!(n.algebra, o.algebra);
}

#[test]
fn rotation_kills_c4_12() {
    // c4_12 = 3, c4_13 = 4: cos = 4/5, sin = 3/5
    let o = reduced_base(&[(4, 1, 2, "3"), (4, 1, 3, "4")]);
    let n = normalize_frame(&o).unwrap();
    assert!(n.c(3, 0, 1).is_zero());
    assert_eq!(n.c(3, 0, 2), rf("5"));
    assert_eq!(n.steps, vec![FrameStep::Rotation { cos: rf("4/5"), sin: rf("3/5") }]);
    assert!(n.algebra.is_lie());
}

#[test]
fn rotation_with_irrational_angle_uses_a_radical() {
    let o = reduced_base(&[(4, 1, 2, "1"), (4, 1, 3, "1")]);
    let n = normalize_frame(&o).unwrap();
    assert!(n.c(3, 0, 1).is_zero());
    assert_eq!(n.radicals.len(), 1);
    assert_eq!(n.radicals[0].square, rf("2"));
}

#[test]
fn scaling_sets_c4_23_to_one() {
    let o = OrthoFrameAlgebra::orthonormal(coframe(&[(2, 1, 2, "-1"), (3, 1, 3, "-1"), (4, 1, 4, "-2"), (4, 2, 3, "3")]));
    let n = normalize_frame(&o).unwrap();
    assert!(n.c(3, 1, 2).is_one());
    assert_eq!(n.c(1, 0, 1), rf("-1/3"));
    assert_eq!(n.c(3, 0, 3), rf("-2/3"));
    assert_eq!(n.overall_scale(), rf("3"));
}

#[test]
fn scaling_rescales_curvature_by_the_recorded_factor() {
    let o = OrthoFrameAlgebra::orthonormal(coframe(&[(2, 1, 2, "-1"), (2, 1, 3, "2"), (3, 1, 2, "-2"), (3, 1, 3, "-1"), (4, 1, 4, "-2"), (4, 2, 3, "3")]));
    let n = normalize_frame(&o).unwrap();
    let before = curvature_pipeline(&o).unwrap();
    let after = curvature_pipeline(&n).unwrap();
    let s2 = n.overall_scale().pow(2);
    assert_eq!(after.riemann.scaled(&s2), before.riemann);
    assert_eq!(after.w_plus.is_zero(), before.w_plus.is_zero());
}

#[test]
fn zero_c4_23_is_outside_the_normalization() {
    let o = OrthoFrameAlgebra::orthonormal(coframe(&[(2, 1, 2, "-1"), (3, 1, 3, "-1"), (4, 1, 4, "-2")]));
    assert!(matches!(normalize_frame(&o), Err(FrameError::DegenerateC423)));
}

#[test]
fn flip_examples() {
    let o = reduced_base(&[]);
    let f = flip_orientation(&o).unwrap();
    assert_eq!(f.c(1, 0, 1), rf("1"));
    assert_eq!(f.c(2, 0, 2), rf("1"));
    assert_eq!(f.c(3, 0, 3), rf("2"));
    assert_eq!(f.c(3, 1, 2), rf("1"));
    assert_eq!(f.orientation, -o.orientation);
    assert!(has_reduced_shape(&f.algebra));
    let ff = flip_orientation(&f).unwrap();
    assert_eq!(ff.algebra, o.algebra);
    assert_eq!(ff.orientation, o.orientation);
}

fn lower_triangular() -> impl Strategy<Value = Vec<Vec<Rat>>> {
    prop::collection::vec((1i64..5, -4i64..5, 1i64..4), 10).prop_map(|v| {
        let mut it = v.into_iter();
        let mut rows = vec![vec![Rat::zero(); 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate().take(i + 1) {
                let (d, n, q) = it.next().unwrap();
                *slot = if i == j { Rat::new(d, q) } else { Rat::new(n, q) };
            }
        }
        rows
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// With `G = AᵀA` for lower-triangular `A`, orthonormalizing the coframe
    /// recovers `A` and makes the induced product the identity.
    #[test]
    fn gram_schmidt_recovers_cholesky_factor(a in lower_triangular(), tau in -3i64..4) {
        let a = FracMatrix::from_rows(a.into_iter().map(|r| r.into_iter().map(RatFunc::rat).collect()).collect());
        let g = a.transpose().mul(&a);
        let ip = InnerProduct::from_matrix(g.clone()).unwrap();
        let l = g_tau(RatFunc::int(tau));
        let o = gram_schmidt(&l, &ip).unwrap();
        prop_assert_eq!(induced(&o, &g), FracMatrix::identity(4));
        prop_assert_eq!(o.change.matrix(), &a);
        prop_assert!(o.algebra.is_lie());
    }
}
