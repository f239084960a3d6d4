use std::collections::BTreeMap;

use curvlie::exactmath::{
    assignment, gcd, linear_solve, parse_poly, poly_eval, FracMatrix, LinearSolveError, MathError,
    Poly, Rat, RatFunc,
};
use proptest::prelude::*;

fn p(s: &str) -> Poly {
    parse_poly(s).unwrap()
}

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

fn col(v: &[i64]) -> FracMatrix {
    FracMatrix::from_rows(v.iter().map(|x| vec![RatFunc::int(*x)]).collect())
}

fn int_matrix(rows: &[Vec<i64>]) -> FracMatrix {
    FracMatrix::from_rows(rows.iter().map(|r| r.iter().map(|x| RatFunc::int(*x)).collect()).collect())
}

#[test]
fn eval_examples() {
    let q = p("k^2 - 3*k + 2");
    assert!(poly_eval(&q, &assignment([("k", Rat::from_int(1))])).unwrap().is_zero());
    assert!(poly_eval(&q, &assignment([("k", Rat::from_int(2))])).unwrap().is_zero());
    assert_eq!(poly_eval(&q, &assignment([("k", Rat::from_int(4))])).unwrap(), Rat::from_int(6));
    assert!(poly_eval(&Poly::zero(), &BTreeMap::new()).unwrap().is_zero());
    match poly_eval(&p("k*tau"), &assignment([("k", Rat::one())])) {
        Err(MathError::Unassigned(v)) => assert_eq!(v, "tau"),
        other => panic!("expected an unassigned-variable error, got {other:?}"),
    }
}

#[test]
fn rationals_are_canonical() {
    let a: Rat = "6/-4".parse().unwrap();
    assert_eq!(a.to_string(), "-3/2");
    assert_eq!(Rat::new(0, 7).to_string(), "0");
    assert_eq!(Rat::new(10, 5).to_string(), "2");
    assert!(Rat::zero().recip().is_err());
}

#[test]
fn polynomial_strings_are_canonical() {
    assert_eq!(p("tau*k + k*tau"), p("2*k*tau"));
    assert_eq!(p("(x + 1)^2").to_string(), p("1 + 2*x + x^2").to_string());
    assert!(p("x - x").is_zero());
    assert_eq!(rf("(k^2 - 1)/(k - 1)"), rf("k + 1"));
}

#[test]
fn linear_solve_examples() {
    let b = col(&[3, -1, 7]);
    assert_eq!(linear_solve(&FracMatrix::identity(3), &b).unwrap(), b);
    let a = int_matrix(&[vec![1, 1], vec![1, -1]]);
    assert_eq!(linear_solve(&a, &col(&[3, 1])).unwrap(), col(&[2, 1]));
    let sing = int_matrix(&[vec![1, 1], vec![2, 2]]);
    assert!(matches!(linear_solve(&sing, &col(&[1, 3])), Err(LinearSolveError::Inconsistent { .. } | LinearSolveError::Dependent { .. })));
    let over = int_matrix(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
    match linear_solve(&over, &col(&[1, 1, 3])) {
        Err(LinearSolveError::Inconsistent { row, .. }) => assert_eq!(row, 2),
        other => panic!("expected an inconsistency, got {other:?}"),
    }
}

#[test]
fn symbolic_linear_solve() {
    // [[k, 1], [1, k]] x = [1, 0]  has  x = (k, -1)/(k^2 - 1)
    let a = FracMatrix::from_rows(vec![vec![rf("k"), rf("1")], vec![rf("1"), rf("k")]]);
    let b = FracMatrix::from_rows(vec![vec![rf("1")], vec![rf("0")]]);
    let x = linear_solve(&a, &b).unwrap();
    assert_eq!(x.get(0, 0), &rf("k/(k^2 - 1)"));
    assert_eq!(x.get(1, 0), &rf("-1/(k^2 - 1)"));
}

#[test]
fn charpoly_of_known_matrix() {
    // [[2, 1], [1, 2]] has eigenvalues 1 and 3
    let m = int_matrix(&[vec![2, 1], vec![1, 2]]);
    assert_eq!(m.charpoly(), vec![RatFunc::int(3), RatFunc::int(-4), RatFunc::int(1)]);
}

#[test]
fn multivariate_gcd() {
    let g = gcd(&p("(x + y)*(x - 2*y)^2"), &p("(x - 2*y)*(x^2 + y)"));
    assert_eq!(g.monic(), p("x - 2*y").monic());
    assert!(gcd(&p("x^2 + 1"), &p("x + y")).is_constant());
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3), -5i64..6, 1i64..4), 0..5).prop_map(|terms| {
        let vars = vec!["x".to_string(), "y".to_string()];
        Poly::from_terms(vars, terms.into_iter().map(|((a, b), n, d)| (vec![a, b], Rat::new(n, d))))
    })
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..10, 1i64..6).prop_map(|(n, d)| Rat::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly_strategy(), b in poly_strategy(), x in small_rat(), y in small_rat()) {
        let at = assignment([("x", x), ("y", y)]);
        let ea = a.eval(&at).unwrap();
        let eb = b.eval(&at).unwrap();
        prop_assert_eq!((&a * &b).eval(&at).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval(&at).unwrap(), &ea + &eb);
    }

    #[test]
    fn gcd_divides_both(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc);
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c).is_some());
    }

    #[test]
    fn rational_functions_form_a_field(a in poly_strategy(), b in poly_strategy()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let f = RatFunc::new(a.clone(), b.clone()).unwrap();
        let g = RatFunc::new(b, a).unwrap();
        prop_assert!((&f * &g).is_one());
        prop_assert_eq!(f.to_string().parse::<RatFunc>().unwrap(), f);
    }

    #[test]
    fn linear_solve_is_exact(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 4), 4), rhs in prop::collection::vec(-6i64..7, 4)) {
        let a = int_matrix(&rows);
        prop_assume!(!a.det().is_zero());
        let b = col(&rhs);
        let x = linear_solve(&a, &b).unwrap();
        prop_assert_eq!(a.mul(&x), b.clone());
        // Cramer's rule as an independent oracle
        let d = a.det();
        for j in 0..4 {
            let mut aj = a.clone();
            for i in 0..4 {
                aj.set(i, j, b.get(i, 0).clone());
            }
            prop_assert_eq!(x.get(j, 0), &aj.det().checked_div(&d).unwrap());
        }
    }

    #[test]
    fn charpoly_constant_and_trace(rows in prop::collection::vec(prop::collection::vec(-4i64..5, 3), 3)) {
        let a = int_matrix(&rows);
        let cp = a.charpoly();
        prop_assert_eq!(&cp[0], &-&a.det());
        prop_assert_eq!(&cp[2], &-&a.trace());
        prop_assert!(cp[3].is_one());
    }
}
