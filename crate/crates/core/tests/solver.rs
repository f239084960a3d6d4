use std::collections::BTreeMap;

use curvlie::curvature::Orientation;
use curvlie::exactmath::{parse_poly, Poly, Rat};
use curvlie::solver::{
    build_asd_system, groebner, is_unit_ideal, isolate_real_roots, normal_form, solve_real,
    sturm_count, verify_solution, Budget, Family, MPoly, PolySystem, RealSolution, SolutionValue,
    SolveOptions, SturmError, UPoly,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> Poly {
    parse_poly(s).unwrap()
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn mp(s: &str, names: &[&str]) -> MPoly {
    let names: Vec<String> = names.iter().map(|n| n.to_string()).collect();
    MPoly::from_poly(&p(s), &names).unwrap()
}

fn solve(unknowns: &[&str], eqs: &[&str]) -> Vec<BTreeMap<String, Rat>> {
    let s = PolySystem::new(unknowns.iter().map(|u| u.to_string()).collect(), eqs.iter().map(|e| p(e)).collect()).unwrap();
    let r = solve_real(&s, &SolveOptions::default());
    assert!(r.is_complete());
    let mut pts: Vec<BTreeMap<String, Rat>> = r
        .solutions
        .iter()
        .map(|sol| {
            sol.assignment
                .iter()
                .map(|(k, v)| match v {
                    SolutionValue::Rational(x) => (k.clone(), x.clone()),
                    other => panic!("{k} is not rational: {other:?}"),
                })
                .collect()
        })
        .collect();
    pts.sort();
    pts
}

fn point(v: &[(&str, i64)]) -> BTreeMap<String, Rat> {
    v.iter().map(|(k, x)| (k.to_string(), Rat::from_int(*x))).collect()
}

#[test]
fn sturm_examples() {
    let x2m2 = UPoly::from_ints(&[-2, 0, 1]);
    assert_eq!(sturm_count(&x2m2, &q(0, 1), &q(2, 1)).unwrap(), 1);
    assert_eq!(sturm_count(&x2m2, &q(-2, 1), &q(2, 1)).unwrap(), 2);
    assert_eq!(sturm_count(&UPoly::from_ints(&[1, 0, 1]), &q(-100, 1), &q(100, 1)).unwrap(), 0);
    // (2x + 1)(x + 1) = 2x² + 3x + 1, roots -1 and -1/2
    assert_eq!(sturm_count(&UPoly::from_ints(&[1, 3, 2]), &q(-2, 1), &q(0, 1)).unwrap(), 2);
    assert!(matches!(sturm_count(&x2m2, &q(1, 1), &q(1, 1)), Err(SturmError::EmptyInterval(..))));
    assert!(matches!(sturm_count(&x2m2, &q(2, 1), &q(1, 1)), Err(SturmError::EmptyInterval(..))));
}

#[test]
fn groebner_basics() {
    let names = ["x", "y"];
    let mut b = Budget::new(10_000);
    let gb = groebner(&[mp("x^2 - 1", &names), mp("y - x", &names)], &mut b).unwrap();
    assert!(!is_unit_ideal(&gb));
    assert!(normal_form(&mp("y^2 - 1", &names), &gb).is_zero());
    assert!(!normal_form(&mp("y - 1", &names), &gb).is_zero());
    let gb = groebner(&[mp("x", &names), mp("x - 1", &names)], &mut Budget::new(10_000)).unwrap();
    assert!(is_unit_ideal(&gb));
}

#[test]
fn toy_system() {
    let pts = solve(&["x", "y"], &["x^2 - 1", "y - x"]);
    assert_eq!(pts, vec![point(&[("x", -1), ("y", -1)]), point(&[("x", 1), ("y", 1)])]);
}

#[test]
fn solutions_do_not_depend_on_equation_order() {
    let eqs = ["x^2 + y^2 - 5", "x*y - 2", "x - y - 1"];
    let a = solve(&["x", "y"], &eqs);
    let b = solve(&["x", "y"], &[eqs[2], eqs[0], eqs[1]]);
    assert_eq!(a, b);
    assert_eq!(a, vec![point(&[("x", -1), ("y", -2)]), point(&[("x", 2), ("y", 1)])]);
}

#[test]
fn irrational_points_are_isolated() {
    let s = PolySystem::new(vec!["x".into(), "y".into()], vec![p("x^2 - 2"), p("y - x")]).unwrap();
    let r = solve_real(&s, &SolveOptions::default());
    assert!(r.is_complete());
    assert_eq!(r.solutions.len(), 2);
    for sol in &r.solutions {
        assert!(!sol.is_rational());
        let v = sol.approx(&s.unknowns, &BTreeMap::new());
        assert!((v[0] * v[0] - 2.0).abs() < 1e-9 && (v[0] - v[1]).abs() < 1e-9, "{v:?} {sol:?}");
        assert!(verify_solution(&s, sol).passed);
    }
}

#[test]
fn empty_real_locus_gets_a_certificate() {
    let s = PolySystem::new(vec!["x".into()], vec![p("x^2 + 1")]).unwrap();
    let r = solve_real(&s, &SolveOptions::default());
    assert!(r.is_complete());
    assert!(r.solutions.is_empty());
    assert!(!r.certificates.is_empty());
}

#[test]
fn tiny_budget_is_reported_as_incomplete() {
    let s = build_asd_system(Family::H3Ext, Orientation::Plus).unwrap();
    let r = solve_real(&s, &SolveOptions { budget: 1, ..SolveOptions::default() });
    assert!(!r.is_complete());
}

#[test]
fn unknown_counts_per_family() {
    for (family, n) in [(Family::H3Ext, 5), (Family::G2PlusG2, 5), (Family::G42, 6)] {
        let s = build_asd_system(family, Orientation::Plus).unwrap();
        assert_eq!(s.unknowns.len(), n, "{family}");
        assert!(!s.equations.is_empty());
        assert!(!s.nonvanishing.is_empty());
    }
    assert!("g5_1".parse::<Family>().is_err());
}

fn h3_solution_with_c2_12(s: &PolySystem, c2_12: Rat) -> RealSolution {
    let r = solve_real(s, &SolveOptions::default());
    r.solutions
        .into_iter()
        .find(|sol| matches!(&sol.assignment["c2_12"], SolutionValue::Rational(x) if *x == c2_12))
        .expect("family present")
}

fn specialize(sol: &RealSolution, name: &str, value: Rat) -> RealSolution {
    let at: BTreeMap<String, Poly> = [(name.to_string(), Poly::constant(value))].into_iter().collect();
    let mut out = sol.clone();
    for v in out.assignment.values_mut() {
        if let SolutionValue::Expression(e) = v {
            let e = e.substitute(&at);
            *v = match e.constant_value() {
                Some(c) => SolutionValue::Rational(c),
                None => SolutionValue::Expression(e),
            };
        }
    }
    out.free_parameters.retain(|f| f != name);
    out
}

#[test]
fn h3_solution_verifies_and_perturbation_is_caught() {
    let s = build_asd_system(Family::H3Ext, Orientation::Plus).unwrap();
    let sol = h3_solution_with_c2_12(&s, q(-1, 1));
    assert!(verify_solution(&s, &sol).passed);

    let at_one = specialize(&sol, "c2_13", q(1, 1));
    let rep = verify_solution(&s, &at_one);
    assert!(rep.passed);
    let cc = rep.curvature.unwrap();
    assert!(cc.weyl_zero && cc.opposite_weyl_nonzero);

    let mut bad = sol.clone();
    bad.assignment.insert("c2_12".into(), SolutionValue::Rational(q(-99, 100)));
    let rep = verify_solution(&s, &bad);
    assert!(!rep.exact_zero);
    assert!(!rep.passed);
}

/// Sign of `p(n / 2^depth)` for integer coefficients, exact in `i128`.
fn dyadic_sign(c: &[i64], n: i128, depth: u32) -> i32 {
    let d = 1i128 << depth;
    let deg = c.len() - 1;
    let v: i128 = c.iter().enumerate().map(|(i, ci)| *ci as i128 * n.pow(i as u32) * d.pow((deg - i) as u32)).sum();
    v.signum() as i32
}

/// Distinct roots in `(a, b]` from full bisection to cells of width `2^-depth`,
/// counting a cell when its right end is a root or its ends differ in sign.
fn bisection_count(c: &[i64], a: i64, b: i64, depth: u32) -> usize {
    let d = 1i128 << depth;
    let mut prev = dyadic_sign(c, a as i128 * d, depth);
    let mut count = 0;
    for n in a as i128 * d + 1..=b as i128 * d {
        let s = dyadic_sign(c, n, depth);
        if s == 0 || (prev != 0 && prev != s) {
            count += 1;
        }
        prev = s;
    }
    count
}

#[test]
fn sturm_agrees_with_bisection_on_random_cubics_and_quartics() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        let deg = rng.gen_range(3..=4);
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-9..=9)).collect();
        c.push(*[-3i64, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).unwrap());
        let p = UPoly::from_ints(&c);
        if p.gcd(&p.deriv()).degree() > 0 {
            continue;
        }
        let lo = rng.gen_range(-8i64..=6);
        let hi = rng.gen_range(lo + 1..=8);
        let want = bisection_count(&c, lo, hi, 14);
        assert_eq!(sturm_count(&p, &Rat::from_int(lo), &Rat::from_int(hi)).unwrap(), want, "{p:?} on ({lo}, {hi}]");
        checked += 1;
    }
}

/// `Π (x - r_i) · (x² + c)` with `c > 0`, so the real roots are exactly the `r_i`.
fn with_known_roots() -> impl Strategy<Value = (UPoly, Vec<Rat>)> {
    (prop::collection::vec((-6i64..7, 1i64..4), 1..3), 1i64..5, any::<bool>()).prop_map(|(roots, c, quad)| {
        let roots: Vec<Rat> = roots.into_iter().map(|(n, d)| Rat::new(n, d)).collect();
        let mut poly = if quad { UPoly::from_ints(&[c, 0, 1]) } else { UPoly::from_ints(&[1]) };
        for r in &roots {
            poly = poly.mul(&UPoly::linear_root(r));
        }
        if !quad {
            // a third linear factor keeps the degree at three or more
            poly = poly.mul(&UPoly::linear_root(&Rat::new(c, 2)));
        }
        let mut all = roots;
        if !quad {
            all.push(Rat::new(c, 2));
        }
        all.sort();
        all.dedup();
        (poly, all)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_counts_known_roots((poly, roots) in with_known_roots(), a in (-8i64..8, 1i64..4), w in (1i64..12, 1i64..4)) {
        prop_assume!(poly.degree() >= 3);
        let lo = Rat::new(a.0, a.1);
        let hi = &lo + &Rat::new(w.0, w.1);
        let want = roots.iter().filter(|r| **r > lo && **r <= hi).count();
        prop_assert_eq!(sturm_count(&poly, &lo, &hi).unwrap(), want);
    }

    #[test]
    fn isolating_intervals_separate_known_roots((poly, roots) in with_known_roots()) {
        let ivs = isolate_real_roots(&poly);
        prop_assert_eq!(ivs.len(), roots.len());
        for r in &roots {
            // isolating intervals are half-open (lo, hi] unless they are points
            let holds = |iv: &&curvlie::solver::Interval| iv.exact().map_or(*r > iv.lo && *r <= iv.hi, |x| x == *r);
            prop_assert_eq!(ivs.iter().filter(holds).count(), 1);
        }
    }
}
