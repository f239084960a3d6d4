//! Serializable reports shared by the command-line tool and the tests:
//! curvature of one metric Lie algebra, the `W⁺ = 0` classification, and
//! Lee forms of the standard triple of 2-forms.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::curvature::{
    connection_cartan, lee_form, nijenhuis, ricci_scalar, riemann, two_form_basis, weyl_half,
    AlmostComplexStructure, Connection, CurvatureError, Form, Orientation, WeylHalf,
};
use crate::exactmath::{FracMatrix, Poly, Rat, RatFunc};
use crate::frames::{flip_orientation, gram_schmidt, FrameError, FrameStep, InnerProduct, OrthoFrameAlgebra, Radical};
use crate::liealg::{g_tau, AlgebraJson, LieAlgebra, LieError};
use crate::solver::{
    build_asd_system, isolate_real_roots, numeric_sanity, refine, solve_real, verify_solution,
    Certificate, Family, Interval, NumericSanity, RealSolution, SolutionValue, SolveOptions,
    SolveStatus, SolverError, UPoly, VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("structure constants violate the Jacobi identity ({0} nonzero components)")]
    NotLie(usize),
    #[error("metric has dimension {metric}, algebra has dimension {algebra}")]
    DimensionMismatch { metric: usize, algebra: usize },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("{0}")]
    Unsupported(String),
}

/// Sign and index conventions, embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub indices: &'static str,
    pub coframe: &'static str,
    pub connection: &'static str,
    pub curvature: &'static str,
    pub ricci: &'static str,
    pub two_forms: &'static str,
    pub weyl: &'static str,
    pub orientation: &'static str,
    pub lee_form: &'static str,
}

pub const CONVENTIONS: Conventions = Conventions {
    indices: "1-based in all reports",
    coframe: "de^k = sum_{i<j} c^k_ij e^i^e^j with c^k_ij = -[e_i, e_j]^k",
    connection: "conn(m,k,l) = <nabla_{e_m} e_k, e_l>, antisymmetric in (k,l); Cartan and Koszul routes are computed independently and must agree",
    curvature: "Omega_ij = d omega_ij - sum_r omega_ir ^ omega_rj; R(i,j,x,y) is the e^x^e^y coefficient of Omega_ij",
    ricci: "Ric(i,j) = sum_p R(i,p,j,p); scalar = trace(Ric)",
    two_forms: "z=+1: w1 = e12 + e34, w2 = e13 + e42, w3 = e14 + e23; z=-1 negates the second term",
    weyl: "W+ and W- are symmetric 3x3 matrices in the w basis of z=+1 and z=-1, overall factor 1",
    orientation: "orientation -1 applies e^1 -> -e^1 to the orthonormal frame before any curvature is computed",
    lee_form: "theta solves d(w) = w ^ theta",
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoframeTerm {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub value: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionTerm {
    pub m: usize,
    pub k: usize,
    pub l: usize,
    pub value: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RiemannTerm {
    pub i: usize,
    pub j: usize,
    pub x: usize,
    pub y: usize,
    pub value: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalEigenvalue {
    pub value: Rat,
    pub multiplicity: usize,
}

/// Eigenvalue data of a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Eigenvalues {
    /// The matrix is diagonal; entries may be symbolic.
    Diagonal { values: Vec<RatFunc> },
    /// Numeric matrix: rational roots exactly, the rest as isolating intervals.
    Numeric { charpoly: String, rational: Vec<RationalEigenvalue>, isolated: Vec<IsolatedEigenvalue> },
    /// Symbolic non-diagonal matrix: characteristic polynomial only.
    Symbolic { charpoly: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsolatedEigenvalue {
    pub interval: Interval,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylReport {
    pub matrix: Vec<Vec<RatFunc>>,
    pub trace: RatFunc,
    pub zero: bool,
    pub eigenvalues: Eigenvalues,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    pub conventions: Conventions,
    pub algebra: AlgebraJson,
    pub metric: Vec<Vec<RatFunc>>,
    pub parameters: BTreeMap<String, RatFunc>,
    pub orientation: i8,
    pub frame_steps: Vec<FrameStep>,
    pub radicals: Vec<Radical>,
    /// Nonzero `c^k_ij` of the orthonormal frame.
    pub frame: Vec<CoframeTerm>,
    pub connection: Vec<ConnectionTerm>,
    /// Nonzero components with `i<j`, `x<y` and `(i,j) <= (x,y)`.
    pub riemann: Vec<RiemannTerm>,
    pub flat: bool,
    pub ricci: Vec<Vec<RatFunc>>,
    pub scalar: RatFunc,
    pub ricci_determinant: RatFunc,
    pub ricci_degenerate: bool,
    pub w_plus: Option<WeylReport>,
    pub w_minus: Option<WeylReport>,
}

fn charpoly_string(m: &FracMatrix) -> String {
    let t = RatFunc::var("t");
    let mut acc = RatFunc::zero();
    for (i, c) in m.charpoly().iter().enumerate() {
        acc = &acc + &(c * &t.pow(i as u32));
    }
    acc.to_string()
}

/// Eigenvalue data: diagonal entries when diagonal, exact rational roots and
/// isolating intervals for numeric matrices, characteristic polynomial otherwise.
pub fn eigenvalues(m: &FracMatrix) -> Eigenvalues {
    let n = m.nrows();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || m.get(i, j).is_zero()));
    if diagonal {
        return Eigenvalues::Diagonal { values: (0..n).map(|i| m.get(i, i).clone()).collect() };
    }
    let coeffs: Option<Vec<Rat>> = m.charpoly().iter().map(|c| c.constant_value()).collect();
    let Some(coeffs) = coeffs else {
        return Eigenvalues::Symbolic { charpoly: charpoly_string(m) };
    };
    let p = UPoly::new(coeffs);
    let mut rest = p.clone();
    let mut rational = Vec::new();
    for r in p.rational_roots() {
        let lin = UPoly::linear_root(&r);
        let mut multiplicity = 0;
        while rest.eval(&r).is_zero() {
            rest = rest.div_rem(&lin).0;
            multiplicity += 1;
        }
        rational.push(RationalEigenvalue { value: r, multiplicity });
    }
    let sf = rest.squarefree();
    let eps = Rat::new(1, 1u64 << 40);
    let isolated = isolate_real_roots(&sf)
        .iter()
        .map(|iv| {
            let iv = refine(&sf, iv, &eps);
            IsolatedEigenvalue { approx: iv.midpoint().to_f64(), interval: iv }
        })
        .collect();
    Eigenvalues::Numeric { charpoly: p.display_in("t"), rational, isolated }
}

fn weyl_report(w: &WeylHalf) -> WeylReport {
    WeylReport {
        matrix: w.matrix.to_rows(),
        trace: w.matrix.trace(),
        zero: w.is_zero(),
        eigenvalues: eigenvalues(&w.matrix),
    }
}

/// Orthonormal frame of `(l, g)` in the requested orientation.
pub fn oriented_frame(l: &LieAlgebra, g: &InnerProduct, z: Orientation) -> Result<OrthoFrameAlgebra, ReportError> {
    if g.dim() != l.dim() {
        return Err(ReportError::DimensionMismatch { metric: g.dim(), algebra: l.dim() });
    }
    let bad = l.jacobi_residual();
    if !bad.is_empty() {
        return Err(ReportError::NotLie(bad.len()));
    }
    let o = gram_schmidt(l, g)?;
    Ok(match z {
        Orientation::Plus => o,
        Orientation::Minus => flip_orientation(&o)?,
    })
}

/// Full curvature report. The Weyl halves are only present in dimension 4.
pub fn curvature_report(
    l: &LieAlgebra,
    g: &InnerProduct,
    z: Orientation,
    parameters: BTreeMap<String, RatFunc>,
    koszul: impl Fn(&OrthoFrameAlgebra) -> Connection,
) -> Result<CurvatureReport, ReportError> {
    let o = oriented_frame(l, g, z)?;
    let n = o.dim();
    let conn = connection_cartan(&o)?;
    let diff = conn.differences(&koszul(&o));
    if let Some(first) = diff.first() {
        return Err(CurvatureError::RouteMismatch(diff.len(), *first).into());
    }
    let r = riemann(&conn, &o)?;
    let rs = ricci_scalar(&r);
    let (w_plus, w_minus) = if n == 4 {
        (
            Some(weyl_report(&weyl_half(&r, &rs.scalar, Orientation::Plus)?)),
            Some(weyl_report(&weyl_half(&r, &rs.scalar, Orientation::Minus)?)),
        )
    } else {
        (None, None)
    };
    let mut frame = Vec::new();
    let mut connection = Vec::new();
    let mut curv = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                let v = o.c(k, i, j);
                if !v.is_zero() {
                    frame.push(CoframeTerm { k: k + 1, i: i + 1, j: j + 1, value: v });
                }
            }
        }
    }
    for m in 0..n {
        for k in 0..n {
            for l in k + 1..n {
                let v = conn.get(m, k, l);
                if !v.is_zero() {
                    connection.push(ConnectionTerm { m: m + 1, k: k + 1, l: l + 1, value: v.clone() });
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(x, y) in &pairs[a..] {
            let v = r.get(i, j, x, y);
            if !v.is_zero() {
                curv.push(RiemannTerm { i: i + 1, j: j + 1, x: x + 1, y: y + 1, value: v.clone() });
            }
        }
    }
    let det = rs.ricci.det();
    Ok(CurvatureReport {
        conventions: CONVENTIONS,
        algebra: l.to_json(),
        metric: g.gram().to_rows(),
        parameters,
        orientation: o.orientation,
        frame_steps: o.steps.clone(),
        radicals: o.radicals.clone(),
        frame,
        connection,
        flat: curv.is_empty(),
        riemann: curv,
        ricci: rs.ricci.to_rows(),
        scalar: rs.scalar,
        ricci_degenerate: det.is_zero(),
        ricci_determinant: det,
        w_plus,
        w_minus,
    })
}

impl CurvatureReport {
    /// Whether every reported quantity is a rational number.
    pub fn is_numeric(&self) -> bool {
        self.csv_records().is_some()
    }

    /// Flat `quantity,i,j,x,y,value` records; `None` if anything is symbolic.
    pub fn csv_records(&self) -> Option<Vec<[String; 6]>> {
        let mut out: Vec<[String; 6]> = Vec::new();
        let mut push = |q: &str, idx: &[usize], v: &RatFunc| -> Option<()> {
            let v = v.constant_value()?;
            let mut rec: [String; 6] = Default::default();
            rec[0] = q.to_string();
            for (slot, i) in rec[1..5].iter_mut().zip(idx) {
                *slot = i.to_string();
            }
            rec[5] = v.to_string();
            out.push(rec);
            Some(())
        };
        for t in &self.frame {
            push("frame", &[t.k, t.i, t.j], &t.value)?;
        }
        for t in &self.connection {
            push("connection", &[t.m, t.k, t.l], &t.value)?;
        }
        for t in &self.riemann {
            push("riemann", &[t.i, t.j, t.x, t.y], &t.value)?;
        }
        for (i, row) in self.ricci.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                push("ricci", &[i + 1, j + 1], v)?;
            }
        }
        push("scalar", &[], &self.scalar)?;
        push("ricci_determinant", &[], &self.ricci_determinant)?;
        for (name, w) in [("w_plus", &self.w_plus), ("w_minus", &self.w_minus)] {
            let Some(w) = w else { continue };
            for (i, row) in w.matrix.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    push(name, &[i + 1, j + 1], v)?;
                }
            }
            match &w.eigenvalues {
                Eigenvalues::Diagonal { values } => {
                    for (i, v) in values.iter().enumerate() {
                        push(&format!("{name}_eigenvalue"), &[i + 1], v)?;
                    }
                }
                Eigenvalues::Numeric { rational, isolated, .. } => {
                    let mut i = 0;
                    for e in rational {
                        for _ in 0..e.multiplicity {
                            i += 1;
                            push(&format!("{name}_eigenvalue"), &[i], &RatFunc::rat(e.value.clone()))?;
                        }
                    }
                    for e in isolated {
                        i += 1;
                        push(&format!("{name}_eigenvalue_lo"), &[i], &RatFunc::rat(e.interval.lo.clone()))?;
                        push(&format!("{name}_eigenvalue_hi"), &[i], &RatFunc::rat(e.interval.hi.clone()))?;
                    }
                }
                Eigenvalues::Symbolic { .. } => return None,
            }
        }
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeeFormEntry {
    pub two_form: String,
    pub theta: Vec<RatFunc>,
    pub d_theta_zero: bool,
    pub integrable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeeFormsReport {
    pub conventions: Conventions,
    pub algebra: AlgebraJson,
    pub metric: Vec<Vec<RatFunc>>,
    pub parameters: BTreeMap<String, RatFunc>,
    pub orientation: i8,
    pub forms: Vec<LeeFormEntry>,
}

const TWO_FORM_NAMES: [[&str; 3]; 2] = [
    ["e12 + e34", "e13 + e42", "e14 + e23"],
    ["e12 - e34", "e13 - e42", "e14 - e23"],
];

/// Lee forms and Nijenhuis integrability of the three 2-forms of the chosen orientation.
pub fn lee_forms_report(
    l: &LieAlgebra,
    g: &InnerProduct,
    z: Orientation,
    parameters: BTreeMap<String, RatFunc>,
) -> Result<LeeFormsReport, ReportError> {
    if l.dim() != 4 {
        return Err(ReportError::Unsupported(format!("Lee forms need dimension 4, got {}", l.dim())));
    }
    let o = oriented_frame(l, g, Orientation::Plus)?;
    let names = TWO_FORM_NAMES[if z == Orientation::Plus { 0 } else { 1 }];
    let mut forms = Vec::new();
    for (w, name) in two_form_basis(z).iter().zip(names) {
        let t = lee_form(&o, w)?;
        let j = AlmostComplexStructure::from_two_form(4, w)?;
        let residual = w.d(&o).sub(&w.wedge(&Form::one_form(&t.theta)));
        if !residual.is_zero() {
            return Err(ReportError::Unsupported(format!("Lee form of {name} leaves a residual")));
        }
        forms.push(LeeFormEntry {
            two_form: name.to_string(),
            d_theta_zero: t.d_theta_zero,
            theta: t.theta,
            integrable: nijenhuis(&o, &j).is_integrable(),
        });
    }
    Ok(LeeFormsReport {
        conventions: CONVENTIONS,
        algebra: l.to_json(),
        metric: g.gram().to_rows(),
        parameters,
        orientation: z.sign() as i8,
        forms,
    })
}

/// Identification of a solution family with the `g_k` frame of `g_τ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GkMapping {
    pub k: Rat,
    pub substitution: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    pub unknowns: Vec<String>,
    pub equations: Vec<String>,
    pub nonvanishing: Vec<String>,
    pub status: SolveStatus,
    pub solutions: Vec<RealSolution>,
    pub certificates: Vec<Certificate>,
    pub verification: Vec<VerificationReport>,
    pub gk_mapping: Vec<Option<GkMapping>>,
    pub numeric_sanity: Option<NumericSanity>,
    pub expected_solutions: usize,
    /// Complete, solution count as expected, all solutions verified, and no
    /// unexplained numeric points.
    pub as_expected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub conventions: Conventions,
    pub families: Vec<FamilyReport>,
}

impl ClassifyReport {
    pub fn incomplete(&self) -> bool {
        self.families.iter().any(|f| matches!(f.status, SolveStatus::Incomplete { .. }))
    }

    pub fn as_expected(&self) -> bool {
        self.families.iter().all(|f| f.as_expected)
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub solve: SolveOptions,
    pub numeric_starts: usize,
    pub seed: u64,
    pub timing: bool,
}

impl Default for ClassifyOptions {
    fn default() -> ClassifyOptions {
        ClassifyOptions { solve: SolveOptions::default(), numeric_starts: 200, seed: 20240611, timing: false }
    }
}

fn poly_value(sol: &RealSolution, name: &str) -> Option<Poly> {
    match sol.assignment.get(name)? {
        SolutionValue::Rational(r) => Some(Poly::constant(r.clone())),
        SolutionValue::Expression(p) => Some(p.clone()),
        SolutionValue::Algebraic(_) => None,
    }
}

/// For an `h3` extension family with `c2_12 = -1/k`, substitutes `c2_13 = -τ/k`
/// and compares with the Gram–Schmidt frame of `(g_τ, g_k)`.
fn gk_mapping(s: &crate::solver::PolySystem, sol: &RealSolution) -> Option<GkMapping> {
    let c = poly_value(sol, "c2_12")?.constant_value()?;
    let k = (-&c).recip().ok()?;
    let coeff = -&k.recip().ok()?;
    let mut map = sol.polynomial_map()?;
    let sub: BTreeMap<String, Poly> = [("c2_13".to_string(), Poly::var("tau").scale(&coeff))].into_iter().collect();
    for p in map.values_mut() {
        *p = p.substitute(&sub);
    }
    let frame = gram_schmidt(&g_tau(RatFunc::var("tau")), &InnerProduct::g_k(4, RatFunc::rat(k.clone())));
    let matches = match (s.algebra_at(&map), frame) {
        (Ok(a), Ok(o)) => a == o.algebra,
        _ => false,
    };
    Some(GkMapping { substitution: format!("c2_13 = {}", Poly::var("tau").scale(&coeff)), k, matches })
}

pub fn expected_solution_count(f: Family) -> usize {
    match f {
        Family::H3Ext => 2,
        _ => 0,
    }
}

/// Builds, solves and re-verifies one family.
pub fn classify_family(family: Family, opts: &ClassifyOptions) -> Result<FamilyReport, ReportError> {
    let start = Instant::now();
    let s = build_asd_system(family, Orientation::Plus)?;
    let report = solve_real(&s, &opts.solve);
    let complete = report.is_complete();
    let verification: Vec<VerificationReport> = report.solutions.iter().map(|x| verify_solution(&s, x)).collect();
    let gk: Vec<Option<GkMapping>> = if family == Family::H3Ext {
        report.solutions.iter().map(|x| gk_mapping(&s, x)).collect()
    } else {
        vec![None; report.solutions.len()]
    };
    let sanity = complete.then(|| numeric_sanity(&s, &report, opts.numeric_starts, opts.seed));
    let expected = expected_solution_count(family);
    let as_expected = complete
        && report.solutions.len() == expected
        && verification.iter().all(|v| v.passed)
        && gk.iter().all(|m| m.as_ref().map_or(family != Family::H3Ext, |m| m.matches))
        && sanity.as_ref().is_some_and(|n| n.unexplained.is_empty());
    let elapsed: Duration = start.elapsed();
    Ok(FamilyReport {
        family,
        unknowns: s.unknowns.clone(),
        equations: s.equations.iter().map(|e| e.poly.to_string()).collect(),
        nonvanishing: s.nonvanishing.iter().map(|e| e.poly.to_string()).collect(),
        status: report.status,
        solutions: report.solutions,
        certificates: report.certificates,
        verification,
        gk_mapping: gk,
        numeric_sanity: sanity,
        expected_solutions: expected,
        as_expected,
        elapsed_ms: opts.timing.then(|| elapsed.as_millis()),
    })
}

pub fn classify(families: &[Family], opts: &ClassifyOptions) -> Result<ClassifyReport, ReportError> {
    let families = families.iter().map(|f| classify_family(*f, opts)).collect::<Result<_, _>>()?;
    Ok(ClassifyReport { conventions: CONVENTIONS, families })
}
