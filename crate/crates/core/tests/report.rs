use std::collections::BTreeMap;

use curvlie::curvature::{connection_koszul, Form, Orientation};
use curvlie::exactmath::{FracMatrix, Rat, RatFunc};
use curvlie::frames::InnerProduct;
use curvlie::liealg::{g_tau, LieAlgebra};
use curvlie::report::{
    classify, curvature_report, eigenvalues, lee_forms_report, oriented_frame, ClassifyOptions,
    Eigenvalues, ReportError,
};
use curvlie::solver::Family;

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

fn int_matrix(rows: &[Vec<i64>]) -> FracMatrix {
    FracMatrix::from_rows(rows.iter().map(|r| r.iter().map(|x| RatFunc::int(*x)).collect()).collect())
}

fn gk_report(tau: &str, k: &str) -> curvlie::report::CurvatureReport {
    let g = InnerProduct::g_k(4, rf(k));
    curvature_report(&g_tau(rf(tau)), &g, Orientation::Plus, BTreeMap::new(), connection_koszul).unwrap()
}

#[test]
fn abelian_report_is_flat_and_all_zero_in_csv() {
    let r = curvature_report(&LieAlgebra::abelian(4), &InnerProduct::identity(4), Orientation::Plus, BTreeMap::new(), connection_koszul)
        .unwrap();
    assert!(r.flat);
    assert!(r.riemann.is_empty() && r.connection.is_empty());
    let rows = r.csv_records().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|row| row[5] == "0"));
}

#[test]
fn ricci_degenerates_exactly_at_k_four_tau_one() {
    let r = gk_report("1", "4");
    assert!(r.ricci_determinant.is_zero());
    assert!(r.ricci_degenerate);
    let r = gk_report("0", "1");
    assert!(!r.ricci_degenerate);
    let r = gk_report("tau", "k");
    assert!(!r.ricci_determinant.is_zero());
    assert!(r.csv_records().is_none());
    assert!(!r.is_numeric());
}

#[test]
fn mutated_koszul_route_is_rejected() {
    let flip = |o: &curvlie::frames::OrthoFrameAlgebra| connection_koszul(o).map(|x| -x);
    let g = InnerProduct::g_k(4, rf("2"));
    let res = curvature_report(&g_tau(rf("1")), &g, Orientation::Plus, BTreeMap::new(), flip);
    assert!(matches!(res, Err(ReportError::Curvature(_))));
}

#[test]
fn non_lie_input_is_rejected() {
    let mut l = g_tau(rf("1"));
    l.set_bracket(1, 2, 3, RatFunc::zero()).unwrap();
    l.set_bracket(1, 2, 2, rf("-1")).unwrap();
    assert!(matches!(oriented_frame(&l, &InnerProduct::identity(4), Orientation::Plus), Err(ReportError::NotLie(_))));
}

#[test]
fn eigenvalues_of_diagonal_matrix() {
    match eigenvalues(&int_matrix(&[vec![2, 0, 0], vec![0, -1, 0], vec![0, 0, -1]])) {
        Eigenvalues::Diagonal { values } => assert_eq!(values, vec![rf("2"), rf("-1"), rf("-1")]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn eigenvalues_with_repeated_rational_root() {
    // [[1,1],[1,1]] ⊕ [2] has eigenvalues 0, 2, 2
    match eigenvalues(&int_matrix(&[vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 2]])) {
        Eigenvalues::Numeric { rational, isolated, .. } => {
            let got: Vec<(Rat, usize)> = rational.into_iter().map(|e| (e.value, e.multiplicity)).collect();
            assert_eq!(got, vec![(Rat::zero(), 1), (Rat::from_int(2), 2)]);
            assert!(isolated.is_empty());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn irrational_eigenvalues_are_isolated() {
    // tridiagonal (1, 2, 1): eigenvalues 2 and 2 ± √2
    match eigenvalues(&int_matrix(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]])) {
        Eigenvalues::Numeric { rational, isolated, .. } => {
            assert_eq!(rational.len(), 1);
            assert_eq!(rational[0].value, Rat::from_int(2));
            assert_eq!(isolated.len(), 2);
            for (iv, want) in isolated.iter().zip([2.0 - 2f64.sqrt(), 2.0 + 2f64.sqrt()]) {
                let (lo, hi) = iv.interval.to_f64();
                assert!(lo <= want && want <= hi, "{want} not in [{lo}, {hi}]");
                assert!((iv.approx - want).abs() < 1e-9);
            }
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn symbolic_off_diagonal_gives_charpoly() {
    let m = FracMatrix::from_rows(vec![vec![rf("0"), rf("k")], vec![rf("k"), rf("0")]]);
    assert!(matches!(eigenvalues(&m), Eigenvalues::Symbolic { .. }));
}

#[test]
fn lee_forms_of_g_k() {
    let g = InnerProduct::g_k(4, rf("k"));
    let l = g_tau(rf("tau"));
    let r = lee_forms_report(&l, &g, Orientation::Plus, BTreeMap::new()).unwrap();
    assert_eq!(r.forms.len(), 3);
    assert_eq!(r.forms[0].theta, r.forms[1].theta);
    assert_eq!(r.forms[2].theta, vec![rf("-1 - 2/k"), rf("0"), rf("0"), rf("0")]);
    assert!(r.forms[2].integrable);
    // the first Lee form carries +τ/k on e⁴; check it against dω = ω∧θ directly
    let theta1 = vec![rf("-3/k"), rf("0"), rf("0"), rf("tau/k")];
    assert_eq!(r.forms[0].theta, theta1);
    let o = oriented_frame(&l, &g, Orientation::Plus).unwrap();
    let w1 = Form::mono(&[0, 1], RatFunc::one()).add(&Form::mono(&[2, 3], RatFunc::one()));
    assert!(w1.d(&o).sub(&w1.wedge(&Form::one_form(&theta1))).is_zero());
    assert!(lee_forms_report(&LieAlgebra::abelian(3), &InnerProduct::identity(3), Orientation::Plus, BTreeMap::new()).is_err());
}

#[test]
fn classification_of_h3_extensions() {
    let r = classify(&[Family::H3Ext], &ClassifyOptions::default()).unwrap();
    assert!(!r.incomplete());
    assert!(r.as_expected());
    let f = &r.families[0];
    assert_eq!(f.solutions.len(), 2);
    assert!(f.verification.iter().all(|v| v.passed));
    let mut ks: Vec<Rat> = f.gk_mapping.iter().flatten().filter(|m| m.matches).map(|m| m.k.clone()).collect();
    ks.sort();
    assert_eq!(ks, vec![Rat::from_int(1), Rat::from_int(2)]);
}

#[test]
fn classification_of_split_families_is_empty() {
    let r = classify(&[Family::G2PlusG2, Family::G42], &ClassifyOptions::default()).unwrap();
    assert!(!r.incomplete());
    for f in &r.families {
        assert!(f.solutions.is_empty(), "{}", f.family);
        assert!(!f.certificates.is_empty());
        assert!(f.as_expected);
        assert!(f.numeric_sanity.as_ref().is_some_and(|s| s.unexplained.is_empty()));
    }
}

#[test]
fn tiny_budget_marks_classification_incomplete() {
    let mut opts = ClassifyOptions::default();
    opts.solve.budget = 1;
    let r = classify(&[Family::H3Ext], &opts).unwrap();
    assert!(r.incomplete());
    assert!(!r.as_expected());
}
