use std::collections::BTreeMap;

use curvlie::curvature::{
    connection_cartan, connection_koszul, curvature_pipeline, lee_form, nijenhuis, two_form_basis,
    weyl_square_identity, AlmostComplexStructure, CurvatureError, Form, Orientation,
};
use curvlie::exactmath::{FracMatrix, RatFunc};
use curvlie::frames::{flip_orientation, gram_schmidt, InnerProduct, OrthoFrameAlgebra};
use curvlie::liealg::random::random_valid_algebra;
use curvlie::liealg::{catalog, g_tau, LieAlgebra};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

fn named(name: &str) -> LieAlgebra {
    catalog(name, &BTreeMap::new()).unwrap()
}

fn diag(v: &[i64]) -> FracMatrix {
    let mut m = FracMatrix::zeros(v.len(), v.len());
    for (i, x) in v.iter().enumerate() {
        m.set(i, i, RatFunc::int(*x));
    }
    m
}

/// Numeric structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k` of an orthonormal basis.
fn brackets_f64(l: &LieAlgebra) -> Vec<Vec<Vec<f64>>> {
    let n = l.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| l.bracket_basis(i, j).iter().map(|c| c.constant_value().unwrap().to_f64()).collect())
                .collect()
        })
        .collect()
}

/// Sectional curvature of the plane `e_u ∧ e_v` from the bracket formula for
/// left-invariant metrics, evaluated in floating point.
fn sectional(c: &[Vec<Vec<f64>>], u: usize, v: usize) -> f64 {
    let n = c.len();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let br = |a: &[f64], b: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                let s = a[i] * b[j];
                if s != 0.0 {
                    for k in 0..n {
                        out[k] += s * c[i][j][k];
                    }
                }
            }
        }
        out
    };
    let e = |i: usize| -> Vec<f64> { (0..n).map(|k| if k == i { 1.0 } else { 0.0 }).collect() };
    // ⟨U(x,y), z⟩ = ½(⟨[z,x],y⟩ + ⟨x,[z,y]⟩)
    let uu = |x: &[f64], y: &[f64]| -> Vec<f64> {
        (0..n).map(|z| 0.5 * (dot(&br(&e(z), x), y) + dot(x, &br(&e(z), y)))).collect()
    };
    let (eu, ev) = (e(u), e(v));
    let uv = br(&eu, &ev);
    let vu = br(&ev, &eu);
    let u_uv = uu(&eu, &ev);
    -0.75 * dot(&uv, &uv) - 0.5 * dot(&br(&eu, &uv), &ev) - 0.5 * dot(&br(&ev, &vu), &eu)
        + dot(&u_uv, &u_uv)
        - dot(&uu(&eu, &eu), &uu(&ev, &ev))
}

/// `R[i,j][i,j]` is minus the sectional curvature of `e_i ∧ e_j` in this sign convention.
fn check_against_sectional(o: &OrthoFrameAlgebra) {
    let data = curvature_pipeline(o).unwrap();
    let c = brackets_f64(&o.algebra);
    let n = o.dim();
    for i in 0..n {
        let mut ric = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let k = sectional(&c, i, j);
            let r = data.riemann.get(i, j, i, j).constant_value().unwrap().to_f64();
            assert!((r + k).abs() < 1e-9, "R[{i}{j}{i}{j}] = {r}, K = {k}");
            ric += k;
        }
        let got = data.ricci.ricci.get(i, i).constant_value().unwrap().to_f64();
        assert!((got + ric).abs() < 1e-9, "Ric[{i}{i}] = {got}, sum of K = {ric}");
    }
}

fn charpoly_of(m: &FracMatrix) -> Vec<RatFunc> {
    m.charpoly()
}

#[test]
fn abelian_algebra_is_flat() {
    let o = OrthoFrameAlgebra::orthonormal(LieAlgebra::abelian(4));
    let data = curvature_pipeline(&o).unwrap();
    for m in 0..4 {
        for k in 0..4 {
            for l in 0..4 {
                assert!(data.connection.get(m, k, l).is_zero());
            }
        }
    }
    assert!(data.ricci.ricci.is_zero());
    assert!(data.ricci.scalar.is_zero());
    assert!(data.w_plus.is_zero() && data.w_minus.is_zero());
}

#[test]
fn heisenberg_sectional_curvatures() {
    // [f1, f2] = f3: K(12) = -3/4, K(13) = K(23) = 1/4
    let o = OrthoFrameAlgebra::orthonormal(named("h3+a1"));
    let data = curvature_pipeline(&o).unwrap();
    assert_eq!(data.riemann.get(0, 1, 0, 1), &rf("3/4"));
    assert_eq!(data.riemann.get(0, 2, 0, 2), &rf("-1/4"));
    assert_eq!(data.riemann.get(1, 2, 1, 2), &rf("-1/4"));
    assert!(data.riemann.get(0, 3, 0, 3).is_zero());
    check_against_sectional(&o);
}

#[test]
fn both_connection_routes_agree_on_catalog() {
    for name in ["h3+a1", "g4_1", "g4_10", "g2+g2"] {
        let o = OrthoFrameAlgebra::orthonormal(named(name));
        let a = connection_cartan(&o).unwrap();
        let b = connection_koszul(&o);
        assert!(a.differences(&b).is_empty(), "{name}");
        check_against_sectional(&o);
    }
}

#[test]
fn g_k_curvature_is_symmetric_and_weyl_is_traceless() {
    let g = InnerProduct::g_k(4, rf("k"));
    let o = gram_schmidt(&g_tau(rf("tau")), &g).unwrap();
    let data = curvature_pipeline(&o).unwrap();
    assert!(data.riemann.symmetry_violations().is_empty());
    assert!(data.w_plus.matrix.trace().is_zero());
    assert!(data.w_minus.matrix.trace().is_zero());
    assert_eq!(data.w_plus.matrix, data.w_plus.matrix.transpose());
}

#[test]
fn flipping_orientation_swaps_the_weyl_halves() {
    for o in [
        gram_schmidt(&g_tau(rf("tau")), &InnerProduct::g_k(4, rf("k"))).unwrap(),
        OrthoFrameAlgebra::orthonormal(named("g4_10")),
    ] {
        let before = curvature_pipeline(&o).unwrap();
        let after = curvature_pipeline(&flip_orientation(&o).unwrap()).unwrap();
        assert_eq!(charpoly_of(&after.w_plus.matrix), charpoly_of(&before.w_minus.matrix));
        assert_eq!(charpoly_of(&after.w_minus.matrix), charpoly_of(&before.w_plus.matrix));
        assert_eq!(after.ricci.scalar, before.ricci.scalar);
    }
}

#[test]
fn degenerate_two_form_has_no_lee_form() {
    let o = OrthoFrameAlgebra::orthonormal(g_tau(rf("1")));
    let e12 = Form::mono(&[0, 1], RatFunc::one());
    assert!(matches!(lee_form(&o, &e12), Err(CurvatureError::Degenerate(_))));
}

#[test]
fn constant_structure_on_abelian_algebra_is_integrable() {
    let o = OrthoFrameAlgebra::orthonormal(LieAlgebra::abelian(4));
    for w in two_form_basis(Orientation::Plus) {
        let j = AlmostComplexStructure::from_two_form(4, &w).unwrap();
        assert!(nijenhuis(&o, &j).is_integrable());
    }
    let not_complex = Form::mono(&[0, 1], rf("2")).add(&Form::mono(&[2, 3], RatFunc::one()));
    assert!(matches!(AlmostComplexStructure::from_two_form(4, &not_complex), Err(CurvatureError::NotComplex)));
}

#[test]
fn square_identity_detects_repeated_eigenvalues() {
    // W = μ·diag(-1,-1,2): W² - (tr W²/3)·1 = μ²·diag(-1,-1,2) = μW
    let mu = rf("mu");
    let w = diag(&[-1, -1, 2]).scale(&mu);
    let s = weyl_square_identity(&w);
    assert!(s.holds());
    assert_eq!(s.lambda, mu);

    let s = weyl_square_identity(&diag(&[1, -2, 1]));
    assert!(s.holds());
    assert_eq!(s.lambda, rf("-1"));

    let s = weyl_square_identity(&diag(&[1, 2, -3]));
    assert!(!s.holds());
}

fn random_frame(seed: u64) -> OrthoFrameAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    OrthoFrameAlgebra::orthonormal(random_valid_algebra(&mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_curvature_has_all_symmetries(seed in any::<u64>()) {
        let o = random_frame(seed);
        let data = curvature_pipeline(&o).unwrap();
        prop_assert!(data.riemann.symmetry_violations().is_empty());
        prop_assert!(data.w_plus.matrix.trace().is_zero());
        prop_assert!(data.w_minus.matrix.trace().is_zero());
        prop_assert_eq!(&data.w_plus.matrix, &data.w_plus.matrix.transpose());
        prop_assert_eq!(data.ricci.ricci.clone(), data.ricci.ricci.transpose());
    }

    #[test]
    fn random_curvature_matches_sectional_formula(seed in any::<u64>()) {
        check_against_sectional(&random_frame(seed));
    }

    #[test]
    fn lee_form_solves_its_defining_equation(seed in any::<u64>(), plus in any::<bool>()) {
        let o = random_frame(seed);
        let z = if plus { Orientation::Plus } else { Orientation::Minus };
        for w in two_form_basis(z) {
            let lf = lee_form(&o, &w).unwrap();
            let theta = Form::one_form(&lf.theta);
            prop_assert!(w.d(&o).sub(&w.wedge(&theta)).is_zero());
            prop_assert_eq!(lf.d_theta_zero, theta.d(&o).is_zero());
        }
    }
}
