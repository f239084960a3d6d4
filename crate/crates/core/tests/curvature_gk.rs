use curvlie::curvature::{
    curvature_pipeline, lee_form, nijenhuis, two_form_basis, weyl_square_identity,
    AlmostComplexStructure, Orientation,
};
use curvlie::exactmath::{FracMatrix, RatFunc};
use curvlie::frames::{gram_schmidt, InnerProduct};
use curvlie::liealg::g_tau;

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

fn frame() -> curvlie::frames::OrthoFrameAlgebra {
    let l = g_tau(rf("tau"));
    gram_schmidt(&l, &InnerProduct::g_k(4, rf("k"))).unwrap()
}

fn diag(v: &[&str]) -> FracMatrix {
    let n = v.len();
    let mut m = FracMatrix::zeros(n, n);
    for (i, s) in v.iter().enumerate() {
        m.set(i, i, rf(s));
    }
    m
}

#[test]
fn coframe_matches_reduced_form() {
    let o = frame();
    assert_eq!(o.c(1, 0, 1), rf("-1/k"));
    assert_eq!(o.c(1, 0, 2), rf("-tau/k"));
    assert_eq!(o.c(2, 0, 1), rf("tau/k"));
    assert_eq!(o.c(2, 0, 2), rf("-1/k"));
    assert_eq!(o.c(3, 0, 3), rf("-2/k"));
    assert_eq!(o.c(3, 1, 2), rf("1"));
}

#[test]
fn ricci_and_weyl_of_g_k() {
    let o = frame();
    let data = curvature_pipeline(&o).unwrap();
    assert!(data.riemann.symmetry_violations().is_empty());
    let ric = diag(&["6/k^2", "4/k^2 + 1/2", "4/k^2 + 1/2", "8/k^2 - 1/2"]);
    assert_eq!(data.ricci.ricci, ric);
    let wp = diag(&["-1", "-1", "2"]).scale(&rf("(k^2 - 3*k + 2)/(3*k^2)"));
    let wm = diag(&["-1", "-1", "2"]).scale(&rf("(k^2 + 3*k + 2)/(3*k^2)"));
    assert_eq!(data.w_plus.matrix, wp);
    assert_eq!(data.w_minus.matrix, wm);
    for w in [&data.w_plus.matrix, &data.w_minus.matrix] {
        let sq = weyl_square_identity(w);
        assert!(sq.holds());
    }
}

#[test]
fn weyl_plus_vanishes_only_at_k_1_and_2() {
    for k in 1..=6 {
        let l = g_tau(rf("1/3"));
        let o = gram_schmidt(&l, &InnerProduct::g_k(4, RatFunc::int(k))).unwrap();
        let d = curvature_pipeline(&o).unwrap();
        assert_eq!(d.w_plus.is_zero(), k == 1 || k == 2, "k = {k}");
        assert!(!d.w_minus.is_zero());
    }
}

#[test]
fn lee_forms_and_integrability() {
    let o = frame();
    let basis = two_form_basis(Orientation::Plus);
    let thetas: Vec<Vec<RatFunc>> =
        basis.iter().map(|w| lee_form(&o, w).unwrap().theta).collect();
    let t12 = vec![rf("-3/k"), rf("0"), rf("0"), rf("tau/k")];
    assert_eq!(thetas[0], t12);
    assert_eq!(thetas[1], t12);
    assert_eq!(thetas[2], vec![rf("-1 - 2/k"), rf("0"), rf("0"), rf("0")]);
    let ints: Vec<bool> = basis
        .iter()
        .map(|w| nijenhuis(&o, &AlmostComplexStructure::from_two_form(4, w).unwrap()).is_integrable())
        .collect();
    assert_eq!(ints, vec![false, false, true]);
}
