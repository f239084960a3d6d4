use std::collections::BTreeMap;

use curvlie::exactmath::{FracMatrix, Rat, RatFunc};
use curvlie::liealg::random::random_valid_algebra;
use curvlie::liealg::{
    catalog, center, derived_series, g_tau, iso_invariant, orientation_reversing_automorphism,
    unit, AlgebraJson, AutomorphismKind, ExtensionSpec, LieAlgebra, LieError, CATALOG_NAMES,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

fn named(name: &str, params: &[(&str, &str)]) -> LieAlgebra {
    let p: BTreeMap<String, RatFunc> = params.iter().map(|(k, v)| (k.to_string(), rf(v))).collect();
    catalog(name, &p).unwrap()
}

fn diag(v: &[i64]) -> FracMatrix {
    let mut m = FracMatrix::zeros(v.len(), v.len());
    for (i, x) in v.iter().enumerate() {
        m.set(i, i, RatFunc::int(*x));
    }
    m
}

#[test]
fn g_tau_brackets() {
    let l = g_tau(rf("tau"));
    assert_eq!(l.bracket_basis(0, 1), vec![rf("0"), rf("1"), rf("-tau"), rf("0")]);
    assert_eq!(l.bracket_basis(0, 2), vec![rf("0"), rf("tau"), rf("1"), rf("0")]);
    assert_eq!(l.bracket_basis(0, 3), vec![rf("0"), rf("0"), rf("0"), rf("2")]);
    assert_eq!(l.bracket_basis(1, 2), vec![rf("0"), rf("0"), rf("0"), rf("-1")]);
    assert_eq!(l.bracket_basis(2, 1), vec![rf("0"), rf("0"), rf("0"), rf("1")]);
    // coframe coefficients carry the opposite sign
    assert_eq!(l.coframe_coeff(3, 1, 2), rf("1"));
}

#[test]
fn every_catalog_algebra_satisfies_jacobi_symbolically() {
    for name in CATALOG_NAMES {
        let params: &[(&str, &str)] = if *name == "a_n" { &[("n", "4")] } else { &[] };
        let l = named(name, params);
        assert!(l.jacobi_residual().is_empty(), "{name}");
    }
}

#[test]
fn broken_g_tau_fails_jacobi_on_123() {
    // [f2, f3] = -f3 instead of -f4; the Jacobi sum on (f1, f2, f3) is τ f2 - f3
    let mut l = g_tau(rf("tau"));
    l.set_bracket(1, 2, 3, RatFunc::zero()).unwrap();
    l.set_bracket(1, 2, 2, rf("-1")).unwrap();
    let res = l.jacobi_residual();
    let on_123: BTreeMap<usize, RatFunc> =
        res.iter().filter(|e| (e.i, e.j, e.k) == (0, 1, 2)).map(|e| (e.component, e.value.clone())).collect();
    let want: BTreeMap<usize, RatFunc> = [(1, rf("tau")), (2, rf("-1"))].into_iter().collect();
    assert_eq!(on_123, want);
}

#[test]
fn derived_series_examples() {
    assert_eq!(derived_series(&g_tau(rf("1"))).unwrap().dims, [3, 1, 0]);
    assert_eq!(derived_series(&LieAlgebra::abelian(4)).unwrap().dims, [0, 0, 0]);
    assert_eq!(derived_series(&named("h3+a1", &[])).unwrap().dims, [1, 0, 0]);
    assert!(matches!(derived_series(&g_tau(rf("tau"))), Err(LieError::NeedsSpecialization { .. })));
}

#[test]
fn center_examples() {
    assert_eq!(center(&named("h3+a1", &[])).unwrap().len(), 2);
    assert!(center(&g_tau(rf("0"))).unwrap().is_empty());
    assert_eq!(center(&LieAlgebra::abelian(4)).unwrap().len(), 4);
}

#[test]
fn catalog_a_n_is_abelian() {
    let l = named("a_n", &[("n", "4")]);
    assert_eq!(l, LieAlgebra::abelian(4));
    assert!(catalog("a_n", &BTreeMap::new()).is_err());
    assert!(matches!(catalog("g5_1", &BTreeMap::new()), Err(LieError::UnknownAlgebra(_))));
}

#[test]
fn g4_9_at_two_shares_invariants_with_g_0() {
    let a = named("g4_9", &[("alpha", "2")]);
    let b = g_tau(rf("0"));
    assert_eq!(derived_series(&a).unwrap().dims, derived_series(&b).unwrap().dims);
    let fa = unit(4, 0);
    let ia = iso_invariant(&a, &fa).unwrap();
    let ib = iso_invariant(&b, &fa).unwrap();
    assert_eq!(ia.normalized_ratio, ib.normalized_ratio);
    assert_eq!(ia.normalized_ratio, rf("1/2"));
}

#[test]
fn iso_invariant_examples() {
    let f1 = unit(4, 0);
    assert_eq!(iso_invariant(&g_tau(rf("0")), &f1).unwrap().normalized_ratio, rf("1/2"));
    assert_eq!(iso_invariant(&g_tau(rf("1")), &f1).unwrap().normalized_ratio, rf("1"));
    assert_eq!(iso_invariant(&g_tau(rf("tau")), &f1).unwrap().normalized_ratio, rf("(1 + tau^2)/2"));
    let f = vec![rf("1"), rf("1"), rf("0"), rf("0")];
    assert_eq!(iso_invariant(&g_tau(rf("0")), &f).unwrap().normalized_ratio, rf("1/2"));
}

#[test]
fn json_round_trip() {
    let l = g_tau(rf("tau"));
    let text = serde_json::to_string(&l.to_json()).unwrap();
    let back: AlgebraJson = serde_json::from_str(&text).unwrap();
    assert_eq!(LieAlgebra::from_json(&back).unwrap(), l);
    let literal = r#"{"dim": 4, "params": ["tau"], "brackets": [
        {"i":1,"j":2,"out":{"2":"1","3":"-tau"}}, {"i":1,"j":3,"out":{"2":"tau","3":"1"}},
        {"i":1,"j":4,"out":{"4":"2"}}, {"i":2,"j":3,"out":{"4":"-1"}}]}"#;
    let j: AlgebraJson = serde_json::from_str(literal).unwrap();
    assert_eq!(LieAlgebra::from_json(&j).unwrap(), l);
}

#[test]
fn central_reflection_on_h3_plus_a1() {
    let l = named("h3+a1", &[]);
    let r = orientation_reversing_automorphism(&l, &FracMatrix::identity(4)).unwrap().unwrap();
    assert_eq!(r.kind, AutomorphismKind::CentralReflection);
    assert!(l.is_homomorphism_to(&l, &r.matrix));
    assert_eq!(r.matrix.det(), rf("-1"));
    assert_eq!(r.matrix.transpose().mul(&r.matrix), FracMatrix::identity(4));
}

#[test]
fn abelian_ideal_negation_on_r_plus_a3() {
    let spec = ExtensionSpec { base: LieAlgebra::abelian(3), derivations: vec![diag(&[1, -2, 5])] };
    let l = spec.build().unwrap();
    let g = diag(&[1, 2, 3, 4]);
    let r = orientation_reversing_automorphism(&l, &g).unwrap().unwrap();
    assert_eq!(r.kind, AutomorphismKind::AbelianIdealNegation);
    assert!(l.is_homomorphism_to(&l, &r.matrix));
    assert_eq!(r.matrix.det(), rf("-1"));
    assert_eq!(r.matrix.transpose().mul(&g).mul(&r.matrix), g);
}

#[test]
fn no_reversal_for_g_1() {
    assert!(orientation_reversing_automorphism(&g_tau(rf("1")), &FracMatrix::identity(4)).unwrap().is_none());
}

#[test]
fn non_derivation_is_rejected() {
    let h3 = named("h3", &[]);
    // x ↦ x on f1 only: [f1, f2] = f3 but D f3 = 0 ≠ [Df1, f2] = f3
    let spec = ExtensionSpec { base: h3, derivations: vec![diag(&[1, 0, 0])] };
    assert!(matches!(spec.build(), Err(LieError::NotDerivation(0))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_algebras_are_lie_and_invariants_are_basis_free(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_valid_algebra(&mut rng);
        prop_assert!(l.is_lie());
        let p = curvlie::liealg::random::random_invertible(&mut rng, 4);
        let m = l.change_basis(&p).unwrap();
        prop_assert!(m.is_lie());
        prop_assert_eq!(derived_series(&l).unwrap().dims, derived_series(&m).unwrap().dims);
        prop_assert_eq!(center(&l).unwrap().len(), center(&m).unwrap().len());
    }

    #[test]
    fn iso_invariant_is_independent_of_f(a in -5i64..6, b in -5i64..6, c in -5i64..6, s in 1i64..5, t in -4i64..5) {
        let tau = Rat::new(t, 2);
        let l = g_tau(RatFunc::rat(tau.clone()));
        let f = vec![RatFunc::int(s), RatFunc::int(a), RatFunc::int(b), RatFunc::int(c)];
        let want = (&Rat::one() + &(&tau * &tau)) / Rat::from_int(2);
        prop_assert_eq!(iso_invariant(&l, &f).unwrap().normalized_ratio, RatFunc::rat(want));
    }
}
