use serde::Serialize;

use super::mpoly::MPoly;
use super::real::{shape_residual, RealSolution, SolutionValue};
use super::system::PolySystem;
use super::univariate::Interval;
use crate::curvature::{curvature_pipeline, Orientation};
use crate::exactmath::Rat;
use crate::frames::OrthoFrameAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub source: String,
    /// Exact residual (a polynomial in the free parameters, or the remainder
    /// modulo the minimal polynomial of the separating coordinate).
    pub residual: String,
    pub zero: bool,
    /// Interval enclosure for algebraic points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<Interval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvatureCheck {
    pub routes_agree: bool,
    pub weyl_zero: bool,
    pub opposite_weyl_nonzero: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub residuals: Vec<Residual>,
    pub exact_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureCheck>,
    pub passed: bool,
}

fn box_eval(p: &MPoly, boxes: &[Interval]) -> Interval {
    let mut acc = Interval::point(Rat::zero());
    for (m, c) in p.terms() {
        let mut t = Interval::point(c.clone());
        for (i, e) in m.iter().enumerate() {
            for _ in 0..*e {
                t = t.mul(&boxes[i]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Checks a solution against `S` without reusing any solver state: exact
/// substitution, then the full curvature pipeline on the substituted algebra.
pub fn verify_solution(s: &PolySystem, sol: &RealSolution) -> VerificationReport {
    let mut residuals = Vec::new();
    let mut curvature = None;
    if let Some(map) = sol.polynomial_map() {
        for e in &s.equations {
            let r = e.poly.substitute(&map);
            residuals.push(Residual { source: e.source.clone(), residual: r.to_string(), zero: r.is_zero(), enclosure: None });
        }
        if !s.coframe.is_empty() {
            curvature = Some(curvature_check(s, &map));
        }
    } else if let Some(shape) = &sol.shape {
        let boxes: Vec<Interval> = s
            .unknowns
            .iter()
            .map(|u| match &sol.assignment[u] {
                SolutionValue::Rational(r) => Interval::point(r.clone()),
                SolutionValue::Algebraic(a) => a.interval.clone(),
                SolutionValue::Expression(_) => Interval::point(Rat::zero()),
            })
            .collect();
        for e in &s.equations {
            let p = MPoly::from_poly(&e.poly, &s.unknowns).expect("checked variables");
            let r = shape_residual(&p, shape);
            let enc = box_eval(&p, &boxes);
            residuals.push(Residual {
                source: e.source.clone(),
                residual: r.display_in("u"),
                zero: r.is_zero() && enc.contains_zero(),
                enclosure: Some(enc),
            });
        }
    }
    let exact_zero = !residuals.is_empty() && residuals.iter().all(|r| r.zero);
    let passed = exact_zero
        && curvature
            .as_ref()
            .is_none_or(|c| c.routes_agree && c.weyl_zero && c.opposite_weyl_nonzero);
    VerificationReport { residuals, exact_zero, curvature, passed }
}

fn curvature_check(s: &PolySystem, map: &std::collections::BTreeMap<String, crate::exactmath::Poly>) -> CurvatureCheck {
    let fail = |d: String| CurvatureCheck { routes_agree: false, weyl_zero: false, opposite_weyl_nonzero: false, detail: Some(d) };
    let algebra = match s.algebra_at(map) {
        Ok(a) => a,
        Err(e) => return fail(e.to_string()),
    };
    if !algebra.is_lie() {
        return fail("substituted structure constants violate the Jacobi identity".into());
    }
    match curvature_pipeline(&OrthoFrameAlgebra::orthonormal(algebra)) {
        Ok(d) => {
            let (w, wbar) = match s.orientation {
                Orientation::Plus => (&d.w_plus, &d.w_minus),
                Orientation::Minus => (&d.w_minus, &d.w_plus),
            };
            CurvatureCheck { routes_agree: true, weyl_zero: w.is_zero(), opposite_weyl_nonzero: !wbar.is_zero(), detail: None }
        }
        Err(e) => fail(e.to_string()),
    }
}
