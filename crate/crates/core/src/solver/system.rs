use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::SolverError;
use crate::curvature::{curvature_pipeline, Form, Orientation};
use crate::exactmath::{Poly, RatFunc};
use crate::frames::OrthoFrameAlgebra;
use crate::liealg::LieAlgebra;

/// The three reduced-frame shapes whose `W⁺ = 0` systems are solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "h3_ext")]
    H3Ext,
    #[serde(rename = "g2+g2")]
    G2PlusG2,
    #[serde(rename = "g4_2")]
    G42,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::H3Ext, Family::G2PlusG2, Family::G42];

    pub fn name(self) -> &'static str {
        match self {
            Family::H3Ext => "h3_ext",
            Family::G2PlusG2 => "g2+g2",
            Family::G42 => "g4_2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Family, SolverError> {
        match s {
            "h3_ext" => Ok(Family::H3Ext),
            "g2+g2" | "g2_g2" => Ok(Family::G2PlusG2),
            "g4_2" => Ok(Family::G42),
            _ => Err(SolverError::UnknownFamily(s.to_string())),
        }
    }
}

/// Coframe entry `de^k ∋ value·e^{ij}` (0-based, `i < j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoframeEntry {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub value: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub poly: Poly,
    pub source: String,
}

/// Polynomial equations in named unknowns, listed in elimination order
/// (first unknown eliminated first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolySystem {
    pub family: Option<Family>,
    pub orientation: Orientation,
    pub unknowns: Vec<String>,
    pub equations: Vec<Equation>,
    /// Polynomials that must not all vanish on an accepted solution.
    pub nonvanishing: Vec<Equation>,
    /// Unknowns removed through linear integrability constraints.
    pub eliminated: Vec<(String, Poly)>,
    /// Coframe of the frame algebra in terms of the unknowns.
    pub coframe: Vec<CoframeEntry>,
}

impl PolySystem {
    /// A bare system without curvature provenance.
    pub fn new(unknowns: Vec<String>, equations: Vec<Poly>) -> Result<PolySystem, SolverError> {
        let eqs: Vec<Equation> = equations
            .into_iter()
            .enumerate()
            .map(|(i, poly)| Equation { poly, source: format!("eq{}", i + 1) })
            .collect();
        let s = PolySystem {
            family: None,
            orientation: Orientation::Plus,
            unknowns,
            equations: eqs,
            nonvanishing: Vec::new(),
            eliminated: Vec::new(),
            coframe: Vec::new(),
        };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<(), SolverError> {
        for e in self.equations.iter().chain(&self.nonvanishing) {
            if let Some(v) = e.poly.vars().iter().find(|v| !self.unknowns.contains(v)) {
                return Err(SolverError::UnknownVariable(v.clone(), e.source.clone()));
            }
        }
        Ok(())
    }

    /// Frame algebra after substituting the unknowns.
    pub fn algebra_at(&self, subs: &BTreeMap<String, Poly>) -> Result<LieAlgebra, SolverError> {
        let terms: Vec<(usize, usize, usize, RatFunc)> = self
            .coframe
            .iter()
            .map(|e| (e.k, e.i, e.j, RatFunc::from_poly(e.value.substitute(subs))))
            .collect();
        Ok(LieAlgebra::from_coframe(4, &terms)?)
    }

    /// Values of eliminated unknowns after substitution.
    pub fn eliminated_at(&self, subs: &BTreeMap<String, Poly>) -> Vec<(String, Poly)> {
        self.eliminated.iter().map(|(n, p)| (n.clone(), p.substitute(subs))).collect()
    }
}

struct Template {
    unknowns: &'static [&'static str],
    /// `(k, i, j, name or "1")`, 1-based.
    entries: &'static [(usize, usize, usize, &'static str)],
    order: &'static [&'static str],
}

fn template(f: Family) -> Template {
    match f {
        Family::H3Ext => Template {
            unknowns: &["c2_12", "c2_13", "c3_12", "c3_13", "c4_13", "c4_14"],
            entries: &[
                (2, 1, 2, "c2_12"),
                (2, 1, 3, "c2_13"),
                (3, 1, 2, "c3_12"),
                (3, 1, 3, "c3_13"),
                (4, 1, 3, "c4_13"),
                (4, 1, 4, "c4_14"),
                (4, 2, 3, "1"),
            ],
            order: &["c3_12", "c4_13", "c2_12", "c3_13", "c2_13"],
        },
        Family::G2PlusG2 => Template {
            unknowns: &["c3_12", "c3_13", "c4_12", "c4_13", "c4_14", "c4_23"],
            entries: &[
                (3, 1, 2, "c3_12"),
                (3, 1, 3, "c3_13"),
                (4, 1, 2, "c4_12"),
                (4, 1, 3, "c4_13"),
                (4, 1, 4, "c4_14"),
                (4, 2, 3, "c4_23"),
                (4, 2, 4, "1"),
            ],
            order: &["c3_12", "c3_13", "c4_12", "c4_14", "c4_23"],
        },
        Family::G42 => Template {
            unknowns: &["c3_12", "c3_13", "c3_23", "c4_12", "c4_13", "c4_14", "c4_23", "c4_24"],
            entries: &[
                (3, 1, 2, "c3_12"),
                (3, 1, 3, "c3_13"),
                (3, 2, 3, "c3_23"),
                (3, 2, 4, "1"),
                (4, 1, 2, "c4_12"),
                (4, 1, 3, "c4_13"),
                (4, 1, 4, "c4_14"),
                (4, 2, 3, "c4_23"),
                (4, 2, 4, "c4_24"),
            ],
            order: &["c3_12", "c3_13", "c3_23", "c4_12", "c4_23", "c4_24"],
        },
    }
}

fn entry_poly(s: &str) -> Poly {
    if s == "1" {
        Poly::one()
    } else {
        Poly::var(s)
    }
}

/// Coefficients of `d(de^k)` in terms of the unknowns.
fn integrability(coframe: &[CoframeEntry]) -> Result<Vec<Poly>, SolverError> {
    let terms: Vec<(usize, usize, usize, RatFunc)> = coframe
        .iter()
        .map(|e| (e.k, e.i, e.j, RatFunc::from_poly(e.value.clone())))
        .collect();
    let o = OrthoFrameAlgebra::orthonormal(LieAlgebra::from_coframe(4, &terms)?);
    let mut out = Vec::new();
    for k in 0..4 {
        let dd = Form::mono(&[k], RatFunc::one()).d(&o).d(&o);
        for (_, c) in dd.terms() {
            let p = c.as_poly().cloned().ok_or_else(|| SolverError::Shape("non-polynomial d(de)".into()))?;
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Solves each constraint that is linear with constant coefficient in some
/// unknown for the last such unknown, substituting throughout.
fn eliminate_linear(
    unknowns: &[String],
    coframe: &mut [CoframeEntry],
    mut constraints: Vec<Poly>,
) -> (Vec<(String, Poly)>, Vec<Poly>) {
    let mut eliminated: Vec<(String, Poly)> = Vec::new();
    loop {
        let pick = constraints.iter().enumerate().find_map(|(ci, c)| {
            unknowns
                .iter()
                .rev()
                .filter(|x| !eliminated.iter().any(|(n, _)| n == *x))
                .find(|x| {
                    c.degree_in(x) == 1 && c.coeffs_in(x).get(1).is_some_and(|a| a.is_constant())
                })
                .map(|x| (ci, x.clone()))
        });
        let Some((ci, x)) = pick else { break };
        let c = constraints.remove(ci);
        let cs = c.coeffs_in(&x);
        let a = cs[1].constant_value().expect("constant coefficient");
        let value = cs[0].scale(&(-a.recip().expect("nonzero")));
        let subs: BTreeMap<String, Poly> = [(x.clone(), value.clone())].into_iter().collect();
        for e in coframe.iter_mut() {
            e.value = e.value.substitute(&subs);
        }
        for (_, p) in eliminated.iter_mut() {
            *p = p.substitute(&subs);
        }
        constraints = constraints
            .into_iter()
            .map(|p| p.substitute(&subs))
            .filter(|p| !p.is_zero())
            .collect();
        eliminated.push((x, value));
    }
    (eliminated, constraints)
}

/// Builds the system `W^z = 0` for a reduced-frame family.
pub fn build_asd_system(family: Family, orientation: Orientation) -> Result<PolySystem, SolverError> {
    let t = template(family);
    let unknowns: Vec<String> = t.unknowns.iter().map(|s| s.to_string()).collect();
    let mut coframe: Vec<CoframeEntry> = t
        .entries
        .iter()
        .map(|(k, i, j, s)| CoframeEntry { k: k - 1, i: i - 1, j: j - 1, value: entry_poly(s) })
        .collect();
    let constraints = integrability(&coframe)?;
    let (eliminated, residual) = eliminate_linear(&unknowns, &mut coframe, constraints);
    let order: Vec<String> = t.order.iter().map(|s| s.to_string()).collect();
    let remaining: Vec<&String> =
        unknowns.iter().filter(|u| !eliminated.iter().any(|(n, _)| &n == u)).collect();
    if remaining.len() != order.len() || remaining.iter().any(|u| !order.contains(u)) {
        return Err(SolverError::Shape(format!(
            "integrability constraints left unknowns {remaining:?}, expected {order:?}"
        )));
    }
    let terms: Vec<(usize, usize, usize, RatFunc)> = coframe
        .iter()
        .map(|e| (e.k, e.i, e.j, RatFunc::from_poly(e.value.clone())))
        .collect();
    let o = OrthoFrameAlgebra::orthonormal(LieAlgebra::from_coframe(4, &terms)?);
    let data = curvature_pipeline(&o)?;
    let (w, wbar) = match orientation {
        Orientation::Plus => (&data.w_plus, &data.w_minus),
        Orientation::Minus => (&data.w_minus, &data.w_plus),
    };
    let labels = ["11", "12", "13", "22", "23"];
    let half = |o: Orientation| if o == Orientation::Plus { "+" } else { "-" };
    let as_eqs = |entries: [RatFunc; 5], o: Orientation| -> Result<Vec<Equation>, SolverError> {
        entries
            .iter()
            .zip(labels)
            .map(|(x, l)| {
                let poly = x.as_poly().cloned().ok_or_else(|| SolverError::Shape(format!("W{l} is not polynomial")))?;
                Ok(Equation { poly, source: format!("W{}_{l}", half(o)) })
            })
            .collect()
    };
    let mut equations = as_eqs(w.independent_entries(), w.orientation)?;
    for (i, r) in residual.into_iter().enumerate() {
        equations.push(Equation { poly: r, source: format!("integrability_{}", i + 1) });
    }
    let nonvanishing = as_eqs(wbar.independent_entries(), wbar.orientation)?;
    let s = PolySystem {
        family: Some(family),
        orientation,
        unknowns: order,
        equations,
        nonvanishing,
        eliminated,
        coframe,
    };
    s.check()?;
    Ok(s)
}
