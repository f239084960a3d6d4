//! The twelve acceptance checks, runnable from the library so that the CLI and
//! the test harness share one implementation.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvature::{
    connection_cartan, connection_koszul, curvature_pipeline_with, lee_form, nijenhuis,
    two_form_basis, weyl_square_identity, AlmostComplexStructure, Connection, CurvatureData,
    CurvatureError, Orientation,
};
use crate::exactmath::{FracMatrix, Poly, Rat, RatFunc};
use crate::frames::{flip_orientation, gram_schmidt, InnerProduct, OrthoFrameAlgebra};
use crate::liealg::random::{random_invertible, random_rat, random_valid_algebra};
use crate::liealg::{
    catalog, g_tau, iso_invariant, orientation_reversing_automorphism, unit, ExtensionSpec,
    LieAlgebra, CATALOG_NAMES,
};
use crate::solver::{
    build_asd_system, numeric_sanity, solve_real, verify_solution, Certificate, Family,
    PolySystem, SolutionValue, SolveOptions, SolveReport,
};

/// Koszul route used by the suite; replaceable for mutation testing.
pub type KoszulRoute = fn(&OrthoFrameAlgebra) -> Connection;

/// The Koszul connection with every sign flipped. Only useful to show that the
/// route comparison catches a broken route.
pub fn koszul_sign_flipped(o: &OrthoFrameAlgebra) -> Connection {
    connection_koszul(o).map(|x| -x)
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub koszul: KoszulRoute,
    /// Total solver budget; `None` uses the solver default.
    pub budget: Option<u64>,
    pub seed: u64,
    /// Restrict to these criterion ids.
    pub only: Option<Vec<u8>>,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { koszul: connection_koszul, budget: None, seed: 20240611, only: None }
    }
}

impl SuiteConfig {
    fn solve_options(&self) -> SolveOptions {
        let mut o = SolveOptions::default();
        if let Some(b) = self.budget {
            o.budget = b;
            o.basis_budget = o.basis_budget.min(b);
        }
        o
    }

    fn pipeline(&self, o: &OrthoFrameAlgebra) -> Result<CurvatureData, CurvatureError> {
        curvature_pipeline_with(o, self.koszul)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionStatus {
    Pass,
    Fail,
    Incomplete,
}

impl fmt::Display for CriterionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            CriterionStatus::Pass => "PASS",
            CriterionStatus::Fail => "FAIL",
            CriterionStatus::Incomplete => "INCOMPLETE",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub status: CriterionStatus,
    pub details: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    /// One-line summary, e.g. `[ 3] PASS  h3_ext solution families (0.8 s)`.
    pub fn line(&self) -> String {
        format!("{} ({:.2} s)", self.summary(), self.elapsed.as_secs_f64())
    }

    /// As [`line`](Self::line) without the timing.
    pub fn summary(&self) -> String {
        format!("[{:>2}] {:<10} {}", self.id, self.status, self.title)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub items: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn status_of(&self, id: u8) -> Option<CriterionStatus> {
        self.items.iter().find(|c| c.id == id).map(|c| c.status)
    }

    pub fn failed(&self) -> Vec<u8> {
        self.ids_with(CriterionStatus::Fail)
    }

    pub fn incomplete(&self) -> Vec<u8> {
        self.ids_with(CriterionStatus::Incomplete)
    }

    fn ids_with(&self, s: CriterionStatus) -> Vec<u8> {
        self.items.iter().filter(|c| c.status == s).map(|c| c.id).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|c| c.status == CriterionStatus::Pass)
    }
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "Ricci of g_k"),
    (2, "Weyl halves of g_k"),
    (3, "h3_ext solution families"),
    (4, "g2+g2 and g4_2 have no solutions"),
    (5, "curvature of g_tau is tau-free"),
    (6, "Cartan and Koszul routes agree"),
    (7, "Lee forms"),
    (8, "Nijenhuis tensors of I1, I2, I3"),
    (9, "det/tr isomorphism invariant"),
    (10, "orientation flip swaps Weyl halves"),
    (11, "Weyl square identity"),
    (12, "orientation-reversing automorphisms"),
];

/// Accumulates individual checks for one criterion.
#[derive(Default)]
struct Checks {
    details: Vec<String>,
    failed: bool,
    incomplete: bool,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.details.push(format!("{} {what}", if ok { "ok:  " } else { "FAIL:" }));
        self.failed |= !ok;
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("note: {}", what.into()));
    }

    fn incomplete(&mut self, what: impl Into<String>) {
        self.details.push(format!("incomplete: {}", what.into()));
        self.incomplete = true;
    }

    fn error(&mut self, what: impl fmt::Display) {
        self.check(false, format!("error: {what}"));
    }

    fn within(&mut self, start: Instant, limit_s: u64) {
        let e = start.elapsed();
        self.check(e.as_secs_f64() < limit_s as f64, format!("runtime {:.2} s < {limit_s} s", e.as_secs_f64()));
    }

    fn status(&self) -> CriterionStatus {
        if self.failed {
            CriterionStatus::Fail
        } else if self.incomplete {
            CriterionStatus::Incomplete
        } else {
            CriterionStatus::Pass
        }
    }
}

fn rf(s: &str) -> RatFunc {
    s.parse().expect("well-formed constant expression")
}

fn diag(v: &[RatFunc]) -> FracMatrix {
    let mut m = FracMatrix::zeros(v.len(), v.len());
    for (i, x) in v.iter().enumerate() {
        m.set(i, i, x.clone());
    }
    m
}

fn gk_frame(tau: RatFunc, k: RatFunc) -> Result<OrthoFrameAlgebra, String> {
    gram_schmidt(&g_tau(tau), &InnerProduct::g_k(4, k)).map_err(|e| e.to_string())
}

fn show_vec(v: &[RatFunc]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut items = Vec::new();
    for (id, title) in CRITERIA {
        if cfg.only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let mut c = Checks::default();
        match id {
            1 => ricci_gk(cfg, &mut c),
            2 => weyl_gk(cfg, &mut c),
            3 => h3_families(cfg, &mut c),
            4 => negative_families(cfg, &mut c),
            5 => tau_free(cfg, &mut c),
            6 => route_equivalence(cfg, &mut c),
            7 => lee_forms(&mut c),
            8 => nijenhuis_checks(&mut c),
            9 => iso_invariant_check(cfg, &mut c),
            10 => orientation_flip(cfg, &mut c),
            11 => square_identity(cfg, &mut c),
            _ => automorphisms(cfg, &mut c),
        }
        items.push(CriterionResult { id, title, status: c.status(), details: c.details, elapsed: start.elapsed() });
    }
    SuiteReport { items }
}

fn ricci_gk(cfg: &SuiteConfig, c: &mut Checks) {
    let start = Instant::now();
    let o = match gk_frame(rf("tau"), rf("k")) {
        Ok(o) => o,
        Err(e) => return c.error(e),
    };
    let data = match cfg.pipeline(&o) {
        Ok(d) => d,
        Err(e) => return c.error(e),
    };
    let expected = diag(&[rf("6/k^2"), rf("4/k^2 + 1/2"), rf("4/k^2 + 1/2"), rf("8/k^2 - 1/2")]);
    c.check(data.ricci.ricci == expected, format!("Ricci = {}", show_vec(&(0..4).map(|i| data.ricci.ricci.get(i, i).clone()).collect::<Vec<_>>())));
    c.check(data.ricci.ricci.is_symmetric(), "Ricci symmetric");
    c.within(start, 10);
}

fn weyl_gk(cfg: &SuiteConfig, c: &mut Checks) {
    let o = match gk_frame(rf("tau"), rf("k")) {
        Ok(o) => o,
        Err(e) => return c.error(e),
    };
    let data = match cfg.pipeline(&o) {
        Ok(d) => d,
        Err(e) => return c.error(e),
    };
    let pattern = diag(&[rf("-1"), rf("-1"), rf("2")]);
    for (w, factor, name) in [
        (&data.w_plus, rf("(k^2 - 3*k + 2)/(3*k^2)"), "W+"),
        (&data.w_minus, rf("(k^2 + 3*k + 2)/(3*k^2)"), "W-"),
    ] {
        let target = pattern.scale(&factor);
        c.check(w.matrix == target, format!("{name} = {factor} * diag(-1, -1, 2)"));
        c.check(w.matrix.charpoly() == target.charpoly(), format!("{name} eigenvalues ({}, {}, {})", -&factor, -&factor, &factor * &RatFunc::int(2)));
    }
    for k in [1, 2] {
        let at: BTreeMap<String, Rat> = [("k".to_string(), Rat::from_int(k))].into_iter().collect();
        let sub = |m: &FracMatrix| -> Option<bool> {
            m.entries().iter().map(|x| x.partial_eval(&at).ok().map(|v| v.is_zero())).collect::<Option<Vec<bool>>>().map(|v| v.iter().all(|z| *z))
        };
        c.check(sub(&data.w_plus.matrix) == Some(true), format!("W+ vanishes identically at k = {k}"));
        c.check(sub(&data.w_minus.matrix) == Some(false), format!("W- does not vanish at k = {k}"));
        match gk_frame(rf("tau"), RatFunc::int(k)).and_then(|o| cfg.pipeline(&o).map_err(|e| e.to_string())) {
            Ok(d) => c.check(d.w_plus.is_zero() && !d.w_minus.is_zero(), format!("direct computation at k = {k}: W+ = 0, W- != 0")),
            Err(e) => c.error(e),
        }
    }
}

fn run_family(cfg: &SuiteConfig, c: &mut Checks, family: Family) -> Option<(PolySystem, SolveReport)> {
    let s = match build_asd_system(family, Orientation::Plus) {
        Ok(s) => s,
        Err(e) => {
            c.error(e);
            return None;
        }
    };
    c.check(s.unknowns.len() == match family { Family::G42 => 6, _ => 5 }, format!("{family}: {} unknowns {:?}", s.unknowns.len(), s.unknowns));
    let report = solve_real(&s, &cfg.solve_options());
    if let crate::solver::SolveStatus::Incomplete { reasons } = &report.status {
        c.incomplete(format!("{family}: solver incomplete ({})", reasons.join("; ")));
        return None;
    }
    let sanity = numeric_sanity(&s, &report, 200, cfg.seed);
    c.check(
        sanity.unexplained.is_empty(),
        format!(
            "{family}: numeric sanity layer, {} starts, {} converged, {} excluded by W- = 0, {} unexplained",
            sanity.starts,
            sanity.converged,
            sanity.excluded_by_nonvanishing,
            sanity.unexplained.len()
        ),
    );
    Some((s, report))
}

fn value(sol: &crate::solver::RealSolution, name: &str) -> Option<Poly> {
    match sol.assignment.get(name)? {
        SolutionValue::Rational(r) => Some(Poly::constant(r.clone())),
        SolutionValue::Expression(p) => Some(p.clone()),
        SolutionValue::Algebraic(_) => None,
    }
}

fn h3_families(cfg: &SuiteConfig, c: &mut Checks) {
    let start = Instant::now();
    let Some((s, report)) = run_family(cfg, c, Family::H3Ext) else { return };
    c.check(report.solutions.len() == 2, format!("{} solution families", report.solutions.len()));
    let mut diagonals = Vec::new();
    for sol in &report.solutions {
        let get = |n: &str| value(sol, n);
        let consts: Option<Vec<Rat>> =
            ["c2_12", "c3_13", "c4_13"].iter().map(|n| get(n).and_then(|p| p.constant_value())).collect();
        c.check(sol.is_rational(), "exact rational output");
        c.check(sol.free_parameters == vec!["c2_13".to_string()], format!("free parameters {:?}", sol.free_parameters));
        let rel = get("c3_12").map(|p| &p + &Poly::var("c2_13"));
        c.check(rel.is_some_and(|r| r.is_zero()), "c3_12 = -c2_13");
        let Some(v) = consts else {
            c.check(false, "diagonal values are not rational constants");
            continue;
        };
        diagonals.push(v.clone());
        let rep = verify_solution(&s, sol);
        c.check(rep.passed, format!("(c2_12, c3_13, c4_13) = ({}, {}, {}) verified through the curvature pipeline", v[0], v[1], v[2]));
        // substitute c2_13 = -tau/k with k = -1/c2_12 and compare with the g_k frame
        if let Ok(k) = (-&v[0]).recip() {
            let mut map = sol.polynomial_map().unwrap_or_default();
            let sub: BTreeMap<String, Poly> =
                [("c2_13".to_string(), Poly::var("tau").scale(&(-&k.recip().expect("nonzero"))))].into_iter().collect();
            for p in map.values_mut() {
                *p = p.substitute(&sub);
            }
            let same = match (s.algebra_at(&map), gk_frame(rf("tau"), RatFunc::rat(k.clone()))) {
                (Ok(a), Ok(o)) => a == o.algebra,
                _ => false,
            };
            c.check(same, format!("with c2_13 = -tau/k this is the g_k frame at k = {k}"));
        }
    }
    diagonals.sort();
    let want = vec![
        vec![Rat::from_int(-1), Rat::from_int(-1), Rat::zero()],
        vec![Rat::new(-1, 2), Rat::new(-1, 2), Rat::zero()],
    ];
    let mut want_sorted = want.clone();
    want_sorted.sort();
    c.check(diagonals == want_sorted, "families are (-1, -1, 0) and (-1/2, -1/2, 0)");
    c.within(start, 60);
}

fn negative_families(cfg: &SuiteConfig, c: &mut Checks) {
    for family in [Family::G2PlusG2, Family::G42] {
        let start = Instant::now();
        let Some((_, report)) = run_family(cfg, c, family) else { continue };
        c.check(report.solutions.is_empty(), format!("{family}: {} real solutions", report.solutions.len()));
        let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
        for cert in &report.certificates {
            *kinds.entry(certificate_kind(cert)).or_default() += 1;
        }
        c.check(!report.certificates.is_empty(), format!("{family}: certificates {kinds:?}"));
        for cert in &report.certificates {
            if let Certificate::NonVanishingViolated { component, .. } = cert {
                c.note(format!("{family}: W+ = 0 component with W- = 0 as well (conformally flat), excluded: {}", component.join(", ")));
            }
        }
        c.within(start, 120);
    }
}

fn certificate_kind(c: &Certificate) -> &'static str {
    match c {
        Certificate::UnitIdeal { .. } => "unit_ideal",
        Certificate::NoRealRoots { .. } => "no_real_roots",
        Certificate::DiscriminantCells { .. } => "discriminant_cells",
        Certificate::ResultantNoRealRoots { .. } => "resultant_no_real_roots",
        Certificate::NonVanishingViolated { .. } => "non_vanishing_violated",
        Certificate::Subsumed { .. } => "subsumed",
    }
}

fn tau_free(cfg: &SuiteConfig, c: &mut Checks) {
    let o = match gk_frame(rf("tau"), rf("k")) {
        Ok(o) => o,
        Err(e) => return c.error(e),
    };
    let data = match cfg.pipeline(&o) {
        Ok(d) => d,
        Err(e) => return c.error(e),
    };
    let mut with_tau = 0;
    let mut nonzero = 0;
    for i in 0..4 {
        for j in 0..4 {
            for x in 0..4 {
                for y in 0..4 {
                    let r = data.riemann.get(i, j, x, y);
                    if !r.is_zero() {
                        nonzero += 1;
                    }
                    if r.vars().iter().any(|v| v == "tau") {
                        with_tau += 1;
                    }
                }
            }
        }
    }
    c.check(o.algebra.params().iter().any(|p| p == "tau"), "frame structure constants depend on tau");
    c.check(with_tau == 0, format!("{nonzero} nonzero Riemann components, {with_tau} involve tau"));
}

fn route_equivalence(cfg: &SuiteConfig, c: &mut Checks) {
    let compare = |label: String, o: &OrthoFrameAlgebra, c: &mut Checks, quiet: bool| -> bool {
        match connection_cartan(o) {
            Ok(cartan) => {
                let d = cartan.differences(&(cfg.koszul)(o));
                if !quiet || !d.is_empty() {
                    c.check(d.is_empty(), format!("{label}: {} differing coefficients", d.len()));
                }
                d.is_empty()
            }
            Err(e) => {
                c.error(format!("{label}: {e}"));
                false
            }
        }
    };
    for name in CATALOG_NAMES {
        let mut params = BTreeMap::new();
        if *name == "a_n" {
            params.insert("n".to_string(), RatFunc::int(4));
        }
        match catalog(name, &params) {
            Ok(l) => {
                let o = OrthoFrameAlgebra::orthonormal(l);
                compare(format!("{name} (symbolic parameters, identity metric)"), &o, c, false);
            }
            Err(e) => c.error(format!("{name}: {e}")),
        }
    }
    match gk_frame(rf("tau"), rf("k")) {
        Ok(o) => {
            compare("g_tau with g_k, symbolic (tau, k)".into(), &o, c, false);
        }
        Err(e) => c.error(e),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut agree = 0;
    for i in 0..100 {
        let l = random_valid_algebra(&mut rng);
        let o = OrthoFrameAlgebra::orthonormal(l);
        if compare(format!("random algebra #{i}"), &o, c, true) {
            agree += 1;
        }
    }
    c.check(agree == 100, format!("{agree}/100 random numeric algebras agree"));
}

fn lee_forms(c: &mut Checks) {
    let o = match gk_frame(rf("tau"), rf("k")) {
        Ok(o) => o,
        Err(e) => return c.error(e),
    };
    let basis = two_form_basis(Orientation::Plus);
    let mut thetas = Vec::new();
    for (i, w) in basis.iter().enumerate() {
        match lee_form(&o, w) {
            Ok(t) => {
                let lhs = w.d(&o);
                let rhs = w.wedge(&crate::curvature::Form::one_form(&t.theta));
                c.check(lhs.sub(&rhs).is_zero(), format!("theta{} = {} satisfies d(omega) = omega ^ theta", i + 1, show_vec(&t.theta)));
                thetas.push(t.theta);
            }
            Err(e) => return c.error(e),
        }
    }
    let stated12 = vec![rf("-3/k"), rf("0"), rf("0"), rf("-tau")];
    let stated3 = vec![rf("-1 - 2/k"), rf("0"), rf("0"), rf("0")];
    c.check(thetas[0] == stated12, format!("theta1 = -(3/k)e1 - tau e4 (computed {})", show_vec(&thetas[0])));
    c.check(thetas[1] == stated12, format!("theta2 = -(3/k)e1 - tau e4 (computed {})", show_vec(&thetas[1])));
    c.check(thetas[0] == thetas[1], "theta1 = theta2");
    c.check(thetas[2] == stated3, "theta3 = -(1 + 2/k)e1");
    // theta1 = theta3 exactly at (tau, k) = (0, 1), for the computed and the stated theta1
    for (label, t1) in [("computed", &thetas[0]), ("stated", &stated12)] {
        let eqs: Vec<Poly> = t1.iter().zip(&thetas[2]).map(|(a, b)| (a - b).numer().clone()).filter(|p| !p.is_zero()).collect();
        match PolySystem::new(vec!["k".into(), "tau".into()], eqs) {
            Ok(s) => {
                let r = solve_real(&s, &SolveOptions::default());
                let pts: Vec<(Option<Poly>, Option<Poly>)> =
                    r.solutions.iter().map(|s| (value(s, "tau"), value(s, "k"))).collect();
                let ok = r.is_complete()
                    && pts.len() == 1
                    && pts[0].0.as_ref().is_some_and(|p| p.is_zero())
                    && pts[0].1.as_ref().is_some_and(|p| p.is_one());
                c.check(ok, format!("{label} theta1 = theta3 exactly when (tau, k) = (0, 1)"));
            }
            Err(e) => c.error(e),
        }
    }
}

fn nijenhuis_checks(c: &mut Checks) {
    let integrable = |o: &OrthoFrameAlgebra| -> Result<Vec<bool>, CurvatureError> {
        two_form_basis(Orientation::Plus)
            .iter()
            .map(|w| AlmostComplexStructure::from_two_form(4, w).map(|j| nijenhuis(o, &j).is_integrable()))
            .collect()
    };
    match gk_frame(rf("tau"), rf("k")).map(|o| integrable(&o)) {
        Ok(Ok(v)) => c.check(v[2], "N(I3) = 0 for symbolic (tau, k)"),
        Ok(Err(e)) => c.error(e),
        Err(e) => c.error(e),
    }
    for (tau, k) in [("1", "1"), ("2", "3"), ("-1/2", "2"), ("3", "1/2"), ("1/7", "5")] {
        match gk_frame(rf(tau), rf(k)).map(|o| integrable(&o)) {
            Ok(Ok(v)) => c.check(!v[0], format!("N(I1) != 0 at (tau, k) = ({tau}, {k})")),
            Ok(Err(e)) => c.error(e),
            Err(e) => c.error(e),
        }
    }
    match gk_frame(rf("0"), rf("1")).map(|o| integrable(&o)) {
        Ok(Ok(v)) => c.check(v.iter().all(|x| *x), "N(I1) = N(I2) = N(I3) = 0 at (tau, k) = (0, 1)"),
        Ok(Err(e)) => c.error(e),
        Err(e) => c.error(e),
    }
}

fn iso_invariant_check(cfg: &SuiteConfig, c: &mut Checks) {
    let l = g_tau(rf("tau"));
    let target = rf("(1 + tau^2)/2");
    match iso_invariant(&l, &unit(4, 0)) {
        Ok(inv) => {
            c.check(inv.raw_ratio == target, format!("det/tr of ad f1 on g' = {}", inv.raw_ratio));
            c.check(inv.normalized_ratio == target, format!("16 det/tr^3 = {}", inv.normalized_ratio));
        }
        Err(e) => c.error(e),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 9);
    let mut same = 0;
    for i in 0..20 {
        let tau = random_rat(&mut rng, 3, 3);
        let a = if i % 2 == 0 {
            Rat::one()
        } else {
            loop {
                let a = random_rat(&mut rng, 3, 2);
                if !a.is_zero() {
                    break a;
                }
            }
        };
        let f: Vec<RatFunc> = std::iter::once(RatFunc::rat(a.clone()))
            .chain((1..4).map(|_| RatFunc::rat(random_rat(&mut rng, 3, 2))))
            .collect();
        let want = RatFunc::rat(&(&Rat::one() + &tau.pow(2)) * &Rat::new(1, 2));
        match iso_invariant(&g_tau(RatFunc::rat(tau.clone())), &f) {
            Ok(inv) => {
                let mut ok = inv.normalized_ratio == want;
                if a.is_one() {
                    ok &= inv.raw_ratio == want;
                }
                if ok {
                    same += 1;
                } else {
                    c.check(false, format!("tau = {tau}, f = {}: ratio {}", show_vec(&f), inv.normalized_ratio));
                }
            }
            Err(e) => c.error(format!("tau = {tau}, f = {}: {e}", show_vec(&f))),
        }
    }
    c.check(same == 20, format!("{same}/20 random f outside g' give (1 + tau^2)/2"));
}

fn orientation_flip(cfg: &SuiteConfig, c: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 10);
    let mut swapped = 0;
    for i in 0..50 {
        let o = OrthoFrameAlgebra::orthonormal(random_valid_algebra(&mut rng));
        let res = flip_orientation(&o)
            .map_err(|e| e.to_string())
            .and_then(|f| Ok((cfg.pipeline(&o).map_err(|e| e.to_string())?, cfg.pipeline(&f).map_err(|e| e.to_string())?)));
        match res {
            Ok((a, b)) => {
                let ok = a.w_plus.matrix.charpoly() == b.w_minus.matrix.charpoly()
                    && a.w_minus.matrix.charpoly() == b.w_plus.matrix.charpoly();
                if ok {
                    swapped += 1;
                } else {
                    c.check(false, format!("random algebra #{i}: eigenvalue multisets not swapped"));
                }
            }
            Err(e) => c.error(format!("random algebra #{i}: {e}")),
        }
    }
    c.check(swapped == 50, format!("{swapped}/50 random algebras: flip swaps W+ and W- eigenvalues"));
}

/// Rational orthogonal matrix from the Cayley transform of a random skew matrix.
fn random_rotation(rng: &mut impl Rng) -> FracMatrix {
    let (a, b, d) = (random_rat(rng, 2, 3), random_rat(rng, 2, 3), random_rat(rng, 2, 3));
    let s = FracMatrix::from_rows(vec![
        vec![RatFunc::zero(), RatFunc::rat(a.clone()), RatFunc::rat(b.clone())],
        vec![RatFunc::rat(-&a), RatFunc::zero(), RatFunc::rat(d.clone())],
        vec![RatFunc::rat(-&b), RatFunc::rat(-&d), RatFunc::zero()],
    ]);
    let id = FracMatrix::identity(3);
    let inv = id.add(&s).inverse().expect("I + S is invertible for skew S");
    id.sub(&s).mul(&inv)
}

fn square_identity(cfg: &SuiteConfig, c: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 11);
    let (mut rep_ok, mut gen_ok) = (0, 0);
    for _ in 0..50 {
        let a = loop {
            let a = random_rat(&mut rng, 4, 3);
            if !a.is_zero() {
                break a;
            }
        };
        let q = random_rotation(&mut rng);
        let mut d = vec![RatFunc::rat(a.clone()), RatFunc::rat(a.clone()), RatFunc::rat(&a * &Rat::from_int(-2))];
        let r = rng.gen_range(0..3);
        d.rotate_left(r);
        let w = q.transpose().mul(&diag(&d)).mul(&q);
        if weyl_square_identity(&w).holds() {
            rep_ok += 1;
        }
        let (x, y) = loop {
            let x = random_rat(&mut rng, 4, 3);
            let y = random_rat(&mut rng, 4, 3);
            let z = -(&x + &y);
            if x != y && y != z && x != z {
                break (x, y);
            }
        };
        let z = -(&x + &y);
        let w = q.transpose().mul(&diag(&[RatFunc::rat(x), RatFunc::rat(y), RatFunc::rat(z)])).mul(&q);
        if !weyl_square_identity(&w).holds() {
            gen_ok += 1;
        }
    }
    c.check(rep_ok == 50, format!("{rep_ok}/50 repeated-eigenvalue matrices have zero residual"));
    c.check(gen_ok == 50, format!("{gen_ok}/50 distinct-eigenvalue matrices have nonzero residual"));
    let mu = rf("mu");
    let w = diag(&[-&mu, -&mu, &mu * &RatFunc::int(2)]);
    let s = weyl_square_identity(&w);
    c.check(s.holds(), format!("mu * diag(-1, -1, 2): residual zero, lambda = {}", s.lambda));
}

fn check_reversal(l: &LieAlgebra, g: &FracMatrix, label: &str, c: &mut Checks) -> bool {
    match orientation_reversing_automorphism(l, g) {
        Ok(Some(r)) => {
            let m = &r.matrix;
            let hom = l.is_homomorphism_to(l, m);
            let orth = m.transpose().mul(g).mul(m) == *g;
            let det = m.det() == RatFunc::int(-1);
            let ok = hom && orth && det;
            if !ok {
                c.check(false, format!("{label}: automorphism {hom}, orthogonal {orth}, det -1 {det}"));
            }
            ok
        }
        Ok(None) => {
            c.check(false, format!("{label}: no orientation-reversing automorphism found"));
            false
        }
        Err(e) => {
            c.error(format!("{label}: {e}"));
            false
        }
    }
}

fn random_pd(rng: &mut impl Rng, n: usize) -> FracMatrix {
    let a = random_invertible(rng, n);
    a.transpose().mul(&a)
}

fn automorphisms(cfg: &SuiteConfig, c: &mut Checks) {
    let h = catalog("h3+a1", &BTreeMap::new()).expect("catalog entry");
    let id = FracMatrix::identity(4);
    let ok_id = check_reversal(&h, &id, "h3+a1, identity metric", c);
    c.check(ok_id, "h3+a1, identity metric: phi verified");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 12);
    let g = random_pd(&mut rng, 4);
    let ok_g = check_reversal(&h, &g, "h3+a1, random metric", c);
    c.check(ok_g, "h3+a1, random metric: phi verified");
    let mut ok = 0;
    for i in 0..10 {
        let rows = (0..3).map(|_| (0..3).map(|_| RatFunc::rat(random_rat(&mut rng, 3, 2))).collect()).collect();
        let spec = ExtensionSpec { base: LieAlgebra::abelian(3), derivations: vec![FracMatrix::from_rows(rows)] };
        let l = match spec.build() {
            Ok(l) => l,
            Err(e) => {
                c.error(e);
                continue;
            }
        };
        let g = if i % 2 == 0 { id.clone() } else { random_pd(&mut rng, 4) };
        if check_reversal(&l, &g, &format!("R + a3 #{i}"), c) {
            ok += 1;
        }
    }
    c.check(ok == 10, format!("{ok}/10 random rho: psi verified"));
}
