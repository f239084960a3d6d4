use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::groebner::{groebner, Budget, BudgetExhausted};
use super::mpoly::MPoly;
use super::system::PolySystem;
use super::univariate::{eval_interval, isolate_real_roots, refine, sturm_count, Interval, SturmChain, UPoly};
use crate::exactmath::{gcd, resultant, FracMatrix, Poly, Rat, RatFunc};

/// Tuning for [`solve_real`].
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Total elimination steps (S-pair reductions plus resultants).
    pub budget: u64,
    /// Steps one Gröbner basis may take before the resultant fallback is used.
    pub basis_budget: u64,
    pub max_depth: usize,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions { budget: 2_000_000, basis_budget: 50_000, max_depth: 60 }
    }
}

/// Real algebraic number: the unique root of `poly` in `interval`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraicValue {
    /// Squarefree defining polynomial in the variable `x`.
    pub poly: String,
    #[serde(skip)]
    pub upoly: UPoly,
    pub interval: Interval,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SolutionValue {
    Rational(Rat),
    /// Polynomial in the free parameters.
    Expression(Poly),
    Algebraic(AlgebraicValue),
}

/// Exact description of an isolated point through a separating coordinate `u`:
/// `u = Σ weights_i x_i`, `min_poly(u) = 0`, `x_i = coords_i(u)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointShape {
    pub weights: Vec<Rat>,
    pub min_poly: String,
    #[serde(skip)]
    pub min_upoly: UPoly,
    pub coords: Vec<String>,
    #[serde(skip)]
    pub coord_upolys: Vec<UPoly>,
    pub u_interval: Interval,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealSolution {
    pub assignment: BTreeMap<String, SolutionValue>,
    pub free_parameters: Vec<String>,
    /// Reduced lex Gröbner basis of the component, for certificates.
    pub component: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<PointShape>,
}

impl RealSolution {
    /// Substitution map `unknown -> polynomial in free parameters` (rational families only).
    pub fn polynomial_map(&self) -> Option<BTreeMap<String, Poly>> {
        self.assignment
            .iter()
            .map(|(k, v)| match v {
                SolutionValue::Rational(r) => Some((k.clone(), Poly::constant(r.clone()))),
                SolutionValue::Expression(p) => Some((k.clone(), p.clone())),
                SolutionValue::Algebraic(_) => None,
            })
            .collect()
    }

    pub fn is_rational(&self) -> bool {
        self.assignment.values().all(|v| !matches!(v, SolutionValue::Algebraic(_)))
    }

    /// Floating-point coordinates (free parameters set to `params`).
    pub fn approx(&self, unknowns: &[String], params: &BTreeMap<String, f64>) -> Vec<f64> {
        unknowns
            .iter()
            .map(|u| match &self.assignment[u] {
                SolutionValue::Rational(r) => r.to_f64(),
                SolutionValue::Expression(p) => {
                    let names = p.vars().to_vec();
                    let at: Vec<f64> = names.iter().map(|n| params.get(n).copied().unwrap_or(0.0)).collect();
                    MPoly::from_poly(p, &names).expect("own vars").eval_f64(&at)
                }
                SolutionValue::Algebraic(a) => a.approx,
            })
            .collect()
    }
}

/// Why a branch of the search contributes no accepted real solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The reduced Gröbner basis is `{1}`: no complex solutions.
    UnitIdeal { branch: String, generators: Vec<String> },
    /// A univariate element (after removing rational roots) has no real root.
    NoRealRoots { branch: String, variable: String, poly: String, bound: String, sturm_count: usize },
    /// All real points of a bivariate element lie over the roots of its discriminant.
    DiscriminantCells { branch: String, poly: String, discriminant: String, samples: Vec<String> },
    /// An iterated resultant in the last unknown has no real root.
    ResultantNoRealRoots { branch: String, eliminant: String, sturm_count: usize },
    /// The component makes every polynomial of the non-vanishing group vanish.
    NonVanishingViolated { branch: String, component: Vec<String> },
    /// The component is contained in another reported one.
    Subsumed { component: Vec<String>, by: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolveStatus {
    Complete,
    Incomplete { reasons: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub solutions: Vec<RealSolution>,
    pub certificates: Vec<Certificate>,
    pub steps_used: u64,
    pub branches: usize,
}

impl SolveReport {
    pub fn is_complete(&self) -> bool {
        self.status == SolveStatus::Complete
    }
}

enum Found {
    Family { gb: Vec<MPoly> },
    Points { gb: Vec<MPoly>, points: Vec<RealSolution> },
}

struct Solver<'a> {
    names: Vec<String>,
    n: usize,
    opts: &'a SolveOptions,
    budget: Budget,
    seen: BTreeSet<Vec<MPoly>>,
    found: Vec<(String, Found)>,
    certificates: Vec<Certificate>,
    incomplete: Vec<String>,
    branches: usize,
}

/// All real solutions of `S`, as rational families or isolated algebraic points.
pub fn solve_real(s: &PolySystem, opts: &SolveOptions) -> SolveReport {
    let names = s.unknowns.clone();
    let n = names.len();
    let mut solver = Solver {
        names: names.clone(),
        n,
        opts,
        budget: Budget::new(opts.budget),
        seen: BTreeSet::new(),
        found: Vec::new(),
        certificates: Vec::new(),
        incomplete: Vec::new(),
        branches: 0,
    };
    let input: Vec<MPoly> = s
        .equations
        .iter()
        .map(|e| MPoly::from_poly(&e.poly, &names).expect("checked variables"))
        .collect();
    if let Err(e) = solver.branch(input, "root".into(), 0) {
        solver.incomplete.push(e.to_string());
    }
    let nonvanishing: Vec<MPoly> = s
        .nonvanishing
        .iter()
        .map(|e| MPoly::from_poly(&e.poly, &names).expect("checked variables"))
        .collect();
    solver.finish(&nonvanishing)
}

fn show(p: &MPoly, names: &[String]) -> String {
    p.display(names)
}

fn show_all(ps: &[MPoly], names: &[String]) -> Vec<String> {
    ps.iter().map(|p| show(p, names)).collect()
}

fn is_zero_dimensional(gb: &[MPoly], n: usize) -> bool {
    (0..n).all(|i| {
        gb.iter().any(|g| {
            let m = g.lm();
            m[i] > 0 && m.iter().enumerate().all(|(j, e)| j == i || *e == 0)
        })
    })
}

fn is_linear_triangular(gb: &[MPoly]) -> bool {
    gb.iter().all(|g| g.lm().iter().sum::<u32>() == 1)
}

fn leading_vars(gb: &[MPoly]) -> Vec<usize> {
    gb.iter().filter_map(|g| g.lm().iter().position(|e| *e > 0)).collect()
}

impl Solver<'_> {
    fn to_poly(&self, p: &MPoly) -> Poly {
        p.to_poly(&self.names)
    }

    fn from_poly(&self, p: &Poly) -> MPoly {
        MPoly::from_poly(p, &self.names).expect("variables stay within the unknowns")
    }

    fn mark_incomplete(&mut self, path: &str, why: String) {
        self.incomplete.push(format!("{path}: {why}"));
    }

    fn basis(&mut self, input: &[MPoly]) -> Result<Option<Vec<MPoly>>, BudgetExhausted> {
        let cap = self.opts.basis_budget.min(self.budget.remaining());
        let mut local = Budget::new(cap);
        let r = groebner(input, &mut local);
        self.budget.spend(local.used.min(cap))?;
        match r {
            Ok(gb) => Ok(Some(gb)),
            Err(_) if self.budget.remaining() == 0 => Err(BudgetExhausted { limit: self.budget.limit }),
            Err(_) => Ok(None),
        }
    }

    fn branch(&mut self, input: Vec<MPoly>, path: String, depth: usize) -> Result<(), BudgetExhausted> {
        self.branches += 1;
        if depth > self.opts.max_depth {
            self.mark_incomplete(&path, "branch depth limit reached".into());
            return Ok(());
        }
        let gb = match self.basis(&input)? {
            Some(gb) => gb,
            None => return self.resultant_fallback(input, path, depth),
        };
        if !self.seen.insert(gb.clone()) {
            return Ok(());
        }
        if gb.iter().any(|g| g.is_unit()) {
            self.certificates.push(Certificate::UnitIdeal {
                branch: path,
                generators: show_all(&input, &self.names),
            });
            return Ok(());
        }
        // squarefree parts
        for (idx, g) in gb.iter().enumerate() {
            let p = self.to_poly(g);
            let sf = p.squarefree_part();
            if sf.total_degree() < p.total_degree() {
                let mut next = gb.clone();
                next[idx] = self.from_poly(&sf);
                return self.branch(next, format!("{path}/sqf"), depth + 1);
            }
        }
        // content splits
        for (idx, g) in gb.iter().enumerate() {
            let p = self.to_poly(g);
            for v in p.vars() {
                let c = p.content_in(v);
                if !c.is_constant() {
                    let rest = p.div_exact(&c).expect("content divides");
                    let mut a = gb.clone();
                    a.push(self.from_poly(&c));
                    let mut b = gb.clone();
                    b[idx] = self.from_poly(&rest);
                    self.branch(a, format!("{path}/content{idx}a"), depth + 1)?;
                    return self.branch(b, format!("{path}/content{idx}b"), depth + 1);
                }
            }
        }
        // pairwise gcds
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                let (pi, pj) = (self.to_poly(&gb[i]), self.to_poly(&gb[j]));
                let h = gcd(&pi, &pj);
                if !h.is_constant() {
                    let rest: Vec<MPoly> = gb
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, g)| g.clone())
                        .collect();
                    let mut a = rest.clone();
                    a.push(self.from_poly(&h));
                    let mut b = rest;
                    b.push(self.from_poly(&pi.div_exact(&h).expect("gcd divides")));
                    b.push(self.from_poly(&pj.div_exact(&h).expect("gcd divides")));
                    self.branch(a, format!("{path}/gcd{i}{j}a"), depth + 1)?;
                    return self.branch(b, format!("{path}/gcd{i}{j}b"), depth + 1);
                }
            }
        }
        // univariate elements of degree > 1
        for g in &gb {
            let sup = g.support();
            if sup.len() != 1 || g.total_degree() < 2 {
                continue;
            }
            let x = sup[0];
            let u = UPoly::new(g.univariate_coeffs(x).expect("univariate"));
            let roots = u.rational_roots();
            for r in &roots {
                let mut next = gb.clone();
                next.push(MPoly::var(self.n, x).sub(&MPoly::constant(self.n, r.clone())));
                self.branch(next, format!("{path}/{}={}", self.names[x], r), depth + 1)?;
            }
            let q = u.strip_rational_roots(&roots);
            if q.degree() >= 1 {
                let b = q.root_bound();
                let count = sturm_count(&q, &-&b, &b).expect("nonzero, nonempty");
                if count == 0 {
                    self.certificates.push(Certificate::NoRealRoots {
                        branch: path.clone(),
                        variable: self.names[x].clone(),
                        poly: q.display_in(&self.names[x]),
                        bound: b.to_string(),
                        sturm_count: 0,
                    });
                } else {
                    let mut next = gb.clone();
                    next.push(MPoly::from_univariate(self.n, x, q.coeffs()));
                    let irr_path = format!("{path}/{}:irrational", self.names[x]);
                    match self.basis(&next)? {
                        None => self.mark_incomplete(&irr_path, "basis budget exceeded".into()),
                        Some(gb2) if gb2.iter().any(|g| g.is_unit()) => {
                            self.certificates.push(Certificate::UnitIdeal {
                                branch: irr_path,
                                generators: show_all(&next, &self.names),
                            });
                        }
                        Some(gb2) if is_zero_dimensional(&gb2, self.n) => {
                            self.algebraic_points(gb2, irr_path)?;
                        }
                        Some(gb2) => {
                            self.mark_incomplete(
                                &irr_path,
                                format!("positive-dimensional set over irrational roots: {:?}", show_all(&gb2, &self.names)),
                            );
                        }
                    }
                }
            }
            return Ok(());
        }
        // semidefinite quadratics
        for (idx, g) in gb.iter().enumerate() {
            if let Some(forms) = semidefinite_forms(g) {
                let mut next: Vec<MPoly> = gb.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, g)| g.clone()).collect();
                next.extend(forms);
                return self.branch(next, format!("{path}/psd{idx}"), depth + 1);
            }
        }
        if is_linear_triangular(&gb) {
            self.found.push((path, Found::Family { gb }));
            return Ok(());
        }
        if is_zero_dimensional(&gb, self.n) {
            return self.algebraic_points(gb, path);
        }
        self.discriminant_cells(gb, path, depth)
    }

    /// Real points of a zero-dimensional ideal via a separating linear form.
    fn algebraic_points(&mut self, gb: Vec<MPoly>, path: String) -> Result<(), BudgetExhausted> {
        let n = self.n;
        for attempt in 0..8i64 {
            // extended ring: x_0..x_{n-1}, u
            let weights: Vec<Rat> = (0..n).map(|i| Rat::from_int(1 + (attempt + 1) * i as i64 % 7 + attempt * (i as i64))).collect();
            let lift = |p: &MPoly| -> MPoly {
                let mut out = MPoly::zero(n + 1);
                for (m, c) in p.terms() {
                    let mut k = m.clone();
                    k.push(0);
                    out = out.add(&MPoly::term(k, c.clone()));
                }
                out
            };
            let mut ext: Vec<MPoly> = gb.iter().map(lift).collect();
            let mut lin = MPoly::var(n + 1, n);
            for (i, w) in weights.iter().enumerate() {
                lin = lin.sub(&MPoly::var(n + 1, i).scale(w));
            }
            ext.push(lin);
            let Some(g1) = self.basis(&ext)? else {
                self.mark_incomplete(&path, "basis budget exceeded in separating form".into());
                return Ok(());
            };
            let Some(p) = g1.iter().find(|g| g.support() == vec![n]) else { continue };
            let pu = UPoly::new(p.univariate_coeffs(n).expect("univariate")).squarefree();
            ext = g1.clone();
            ext.push(MPoly::from_univariate(n + 1, n, pu.coeffs()));
            let Some(g2) = self.basis(&ext)? else {
                self.mark_incomplete(&path, "basis budget exceeded in separating form".into());
                return Ok(());
            };
            // shape position: x_i - f_i(u) for all i, plus min poly
            let mut coords: Vec<Option<UPoly>> = vec![None; n];
            let mut minp: Option<UPoly> = None;
            let mut shape = true;
            for g in &g2 {
                let lv = g.lm().iter().position(|e| *e > 0).unwrap_or(n);
                if lv == n {
                    minp = g.univariate_coeffs(n).map(UPoly::new);
                } else if g.lm()[lv] == 1 && g.support().iter().all(|v| *v == lv || *v == n) && g.degree_in(lv) == 1 {
                    let rest = g.sub(&MPoly::var(n + 1, lv));
                    coords[lv] = rest.univariate_coeffs(n).map(|c| UPoly::new(c).scale(&Rat::from_int(-1)));
                } else {
                    shape = false;
                }
            }
            let (Some(minp), true) = (minp, shape) else { continue };
            if coords.iter().any(|c| c.is_none()) {
                continue;
            }
            let coords: Vec<UPoly> = coords.into_iter().map(|c| c.unwrap()).collect();
            let mut points = Vec::new();
            for iv in isolate_real_roots(&minp) {
                points.push(self.point_from_shape(&weights, &minp, &coords, iv));
            }
            self.found.push((path, Found::Points { gb, points }));
            return Ok(());
        }
        self.mark_incomplete(&path, "no separating linear form found".into());
        Ok(())
    }

    fn point_from_shape(&self, weights: &[Rat], minp: &UPoly, coords: &[UPoly], iv: Interval) -> RealSolution {
        let mut assignment = BTreeMap::new();
        let mut u_iv = iv.clone();
        for (i, f) in coords.iter().enumerate() {
            let value = coordinate_value(minp, f, &mut u_iv);
            assignment.insert(self.names[i].clone(), value);
        }
        let shape = PointShape {
            weights: weights.to_vec(),
            min_poly: minp.display_in("u"),
            min_upoly: minp.clone(),
            coords: coords.iter().map(|c| c.display_in("u")).collect(),
            coord_upolys: coords.to_vec(),
            u_interval: u_iv,
        };
        RealSolution { assignment, free_parameters: Vec::new(), component: Vec::new(), shape: Some(shape) }
    }

    /// For a bivariate element `p(y, t)` in the last two unknowns, checks that real
    /// points only occur over roots of `lc_y(p)·res_y(p, ∂p/∂y)` and branches there.
    fn discriminant_cells(&mut self, gb: Vec<MPoly>, path: String, depth: usize) -> Result<(), BudgetExhausted> {
        let n = self.n;
        if n < 2 {
            self.mark_incomplete(&path, format!("unresolved basis {:?}", show_all(&gb, &self.names)));
            return Ok(());
        }
        let (y, t) = (n - 2, n - 1);
        let Some(p) = gb.iter().find(|g| g.uses_only(&[y, t]) && g.degree_in(y) > 0 && g.degree_in(t) > 0) else {
            self.mark_incomplete(&path, format!("unresolved basis {:?}", show_all(&gb, &self.names)));
            return Ok(());
        };
        let (yn, tn) = (self.names[y].clone(), self.names[t].clone());
        let pp = self.to_poly(p);
        self.budget.spend(1)?;
        let disc = &pp.lc_in(&yn) * &resultant(&pp, &pp.deriv(&yn), &yn);
        let dm = self.from_poly(&disc);
        let Some(dc) = dm.univariate_coeffs(t) else {
            self.mark_incomplete(&path, "discriminant is not univariate".into());
            return Ok(());
        };
        let d = UPoly::new(dc);
        if d.is_zero() {
            self.mark_incomplete(&path, format!("vanishing discriminant of {pp}"));
            return Ok(());
        }
        let roots = isolate_real_roots(&d);
        let mut samples = Vec::new();
        let sep = separate(&d, &roots);
        let bound = d.root_bound();
        let mut pts = vec![-&bound - Rat::one()];
        for w in sep.windows(2) {
            pts.push(Rat::mid(&w[0].hi, &w[1].lo));
        }
        pts.push(&bound + Rat::one());
        if sep.is_empty() {
            pts = vec![Rat::zero()];
        }
        for s in &pts {
            let at = self.from_poly(&pp).subst_rat(t, s);
            let u = UPoly::new(at.univariate_coeffs(y).unwrap_or_default());
            let c = if u.degree() >= 1 {
                let b = u.root_bound();
                sturm_count(&u, &-&b, &b).expect("nonempty")
            } else {
                0
            };
            if c > 0 {
                self.mark_incomplete(
                    &path,
                    format!("{pp} has real points over the open cell containing {tn} = {s}"),
                );
                return Ok(());
            }
            samples.push(format!("{tn}={s}: 0 real roots in {yn}"));
        }
        self.certificates.push(Certificate::DiscriminantCells {
            branch: path.clone(),
            poly: pp.to_string(),
            discriminant: d.display_in(&tn),
            samples,
        });
        let rr = d.rational_roots();
        for r in &rr {
            let mut next = gb.clone();
            next.push(MPoly::var(n, t).sub(&MPoly::constant(n, r.clone())));
            self.branch(next, format!("{path}/{tn}={r}"), depth + 1)?;
        }
        let q = d.strip_rational_roots(&rr);
        if q.degree() >= 1 {
            let b = q.root_bound();
            if sturm_count(&q, &-&b, &b).expect("nonempty") > 0 {
                let mut next = gb.clone();
                next.push(MPoly::from_univariate(n, t, q.coeffs()));
                self.branch(next, format!("{path}/{tn}:irrational"), depth + 1)?;
            }
        }
        Ok(())
    }

    /// When a basis exceeds its budget: eliminate down to the last unknown with
    /// resultants, then branch on its rational roots.
    fn resultant_fallback(&mut self, input: Vec<MPoly>, path: String, depth: usize) -> Result<(), BudgetExhausted> {
        let n = self.n;
        let t = n - 1;
        let mut set: Vec<Poly> = input.iter().map(|p| self.to_poly(p)).filter(|p| !p.is_zero()).collect();
        for v in 0..t {
            let name = self.names[v].clone();
            let (with, without): (Vec<Poly>, Vec<Poly>) = set.into_iter().partition(|p| p.has_var(&name));
            let mut next = without;
            for w in with.windows(2) {
                self.budget.spend(1)?;
                let r = resultant(&w[0], &w[1], &name);
                if !r.is_zero() {
                    next.push(r.squarefree_part());
                }
            }
            set = next;
        }
        let eliminants: Vec<UPoly> = set
            .iter()
            .filter_map(|p| self.from_poly(p).univariate_coeffs(t))
            .map(UPoly::new)
            .filter(|u| u.degree() >= 1)
            .collect();
        let Some(e) = eliminants.into_iter().reduce(|a, b| a.gcd(&b)).filter(|e| e.degree() >= 1) else {
            self.mark_incomplete(&path, "basis budget exceeded and resultants gave no eliminant".into());
            return Ok(());
        };
        let rr = e.rational_roots();
        let q = e.strip_rational_roots(&rr);
        let b = q.root_bound();
        let irr = if q.degree() >= 1 { sturm_count(&q, &-&b, &b).expect("nonempty") } else { 0 };
        if rr.is_empty() && irr == 0 {
            self.certificates.push(Certificate::ResultantNoRealRoots {
                branch: path,
                eliminant: e.display_in(&self.names[t]),
                sturm_count: 0,
            });
            return Ok(());
        }
        if irr > 0 {
            self.mark_incomplete(&path, "eliminant has irrational real roots beyond the fallback".into());
        }
        for r in rr {
            let mut next = input.clone();
            next.push(MPoly::var(n, t).sub(&MPoly::constant(n, r.clone())));
            self.branch(next, format!("{path}/fallback:{}={r}", self.names[t]), depth + 1)?;
        }
        Ok(())
    }

    fn family_solution(&self, gb: &[MPoly]) -> RealSolution {
        let lead = leading_vars(gb);
        let free: Vec<usize> = (0..self.n).filter(|i| !lead.contains(i)).collect();
        let mut assignment = BTreeMap::new();
        for i in 0..self.n {
            let value = match gb.iter().find(|g| g.lm()[i] == 1) {
                Some(g) => MPoly::var(self.n, i).sub(g),
                None => MPoly::var(self.n, i),
            };
            let v = if value.is_constant() {
                SolutionValue::Rational(value.coeff(&vec![0; self.n]))
            } else {
                SolutionValue::Expression(self.to_poly(&value))
            };
            assignment.insert(self.names[i].clone(), v);
        }
        RealSolution {
            assignment,
            free_parameters: free.iter().map(|i| self.names[*i].clone()).collect(),
            component: show_all(gb, &self.names),
            shape: None,
        }
    }

    fn finish(mut self, nonvanishing: &[MPoly]) -> SolveReport {
        let found = std::mem::take(&mut self.found);
        let mut families: Vec<(String, Vec<MPoly>, RealSolution)> = Vec::new();
        let mut points: Vec<(String, Vec<MPoly>, RealSolution)> = Vec::new();
        for (path, f) in found {
            match f {
                Found::Family { gb } => {
                    let sol = self.family_solution(&gb);
                    families.push((path, gb, sol));
                }
                Found::Points { gb, points: ps } => {
                    for mut p in ps {
                        p.component = show_all(&gb, &self.names);
                        points.push((path.clone(), gb.clone(), p));
                    }
                }
            }
        }
        // containment between rational families
        let mut keep = vec![true; families.len()];
        for a in 0..families.len() {
            for b in 0..families.len() {
                if a == b || !keep[a] || !keep[b] {
                    continue;
                }
                let a_in_b = self.contained(&families[a].2, &families[b].1);
                let b_in_a = self.contained(&families[b].2, &families[a].1);
                if a_in_b && (!b_in_a || b < a) {
                    keep[a] = false;
                    self.certificates.push(Certificate::Subsumed {
                        component: families[a].2.component.clone(),
                        by: families[b].2.component.clone(),
                    });
                }
            }
        }
        let mut solutions = Vec::new();
        for (i, (path, _, sol)) in families.into_iter().enumerate() {
            if !keep[i] {
                continue;
            }
            if !nonvanishing.is_empty() && self.all_vanish_family(&sol, nonvanishing) {
                self.certificates.push(Certificate::NonVanishingViolated { branch: path, component: sol.component.clone() });
                continue;
            }
            solutions.push(sol);
        }
        for (path, _, sol) in points {
            if !nonvanishing.is_empty() && self.all_vanish_point(&sol, nonvanishing) {
                self.certificates.push(Certificate::NonVanishingViolated { branch: path, component: sol.component.clone() });
                continue;
            }
            if solutions.iter().any(|s| s == &sol) {
                continue;
            }
            solutions.push(sol);
        }
        solutions.sort_by_key(|s| serde_json::to_string(&s.assignment).unwrap_or_default());
        let status = if self.incomplete.is_empty() {
            SolveStatus::Complete
        } else {
            SolveStatus::Incomplete { reasons: self.incomplete.clone() }
        };
        SolveReport { status, solutions, certificates: self.certificates, steps_used: self.budget.used, branches: self.branches }
    }

    fn contained(&self, sol: &RealSolution, gb: &[MPoly]) -> bool {
        let Some(map) = sol.polynomial_map() else { return false };
        gb.iter().all(|g| self.to_poly(g).substitute(&map).is_zero())
    }

    fn all_vanish_family(&self, sol: &RealSolution, nv: &[MPoly]) -> bool {
        let map = sol.polynomial_map().expect("rational family");
        nv.iter().all(|g| self.to_poly(g).substitute(&map).is_zero())
    }

    fn all_vanish_point(&self, sol: &RealSolution, nv: &[MPoly]) -> bool {
        let shape = sol.shape.as_ref().expect("algebraic points carry a shape");
        nv.iter().all(|g| shape_residual(g, shape).is_zero())
    }
}

/// `g(coords(u)) mod min_poly(u)`; zero exactly when `g` vanishes at every
/// point described by the shape.
pub fn shape_residual(g: &MPoly, shape: &PointShape) -> UPoly {
    let mut acc = UPoly::zero();
    for (m, c) in g.terms() {
        let mut t = UPoly::constant(c.clone());
        for (i, e) in m.iter().enumerate() {
            for _ in 0..*e {
                t = t.mul(&shape.coord_upolys[i]).rem(&shape.min_upoly);
            }
        }
        acc = acc.add(&t);
    }
    acc.rem(&shape.min_upoly)
}

/// Makes consecutive isolating intervals strictly separated.
fn separate(p: &UPoly, roots: &[Interval]) -> Vec<Interval> {
    let mut out: Vec<Interval> = roots.to_vec();
    let q = p.squarefree();
    loop {
        let mut changed = false;
        for i in 0..out.len().saturating_sub(1) {
            if out[i].hi >= out[i + 1].lo {
                out[i] = out[i].bisect_toward_root(&q);
                out[i + 1] = out[i + 1].bisect_toward_root(&q);
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}

/// Value of `f(u)` at the root of `minp` in `u_iv`, refining `u_iv` as needed.
fn coordinate_value(minp: &UPoly, f: &UPoly, u_iv: &mut Interval) -> SolutionValue {
    // defining polynomial of x = f(u): res_u(x - f(u), minp(u))
    let names = ["u".to_string(), "x".to_string()];
    let fx = {
        let mut terms: Vec<(Vec<u32>, Rat)> = f.coeffs().iter().enumerate().map(|(i, c)| (vec![i as u32, 0], -c)).collect();
        terms.push((vec![0, 1], Rat::one()));
        Poly::from_terms(names.to_vec(), terms)
    };
    let mp = Poly::from_terms(
        names.to_vec(),
        minp.coeffs().iter().enumerate().map(|(i, c)| (vec![i as u32, 0], c.clone())),
    );
    let r = resultant(&fx, &mp, "u");
    let rx = MPoly::from_poly(&r, &["x".to_string()]).expect("univariate in x");
    let q = UPoly::new(rx.univariate_coeffs(0).unwrap_or_default()).squarefree();
    // exact rational value?
    for root in q.rational_roots() {
        let g = minp.gcd(&f.sub(&UPoly::constant(root.clone())));
        if g.degree() >= 1 {
            let c = sturm_count(&g, &u_iv.lo, &u_iv.hi).unwrap_or(0);
            let exact_point = u_iv.exact().is_some_and(|x| g.eval(&x).is_zero());
            if c == 1 || exact_point {
                return SolutionValue::Rational(root);
            }
        }
    }
    let isol = separate(&q, &isolate_real_roots(&q));
    loop {
        let img = if let Some(x) = u_iv.exact() {
            Interval::point(f.eval(&x))
        } else {
            eval_interval(f, u_iv)
        };
        let hits: Vec<&Interval> = isol.iter().filter(|iv| !(img.hi < iv.lo || iv.hi < img.lo)).collect();
        if hits.len() == 1 && hits[0].lo <= img.lo && img.hi <= hits[0].hi {
            let iv = refine(&q, hits[0], &Rat::new(1, 1i64 << 40));
            let approx = iv.midpoint().to_f64();
            return SolutionValue::Algebraic(AlgebraicValue { poly: q.display_in("x"), upoly: q.clone(), interval: iv, approx });
        }
        *u_iv = u_iv.bisect_toward_root(&minp.squarefree());
    }
}

/// For a quadratic `g` whose homogenized Gram matrix is semidefinite, the
/// linear forms whose common zeros are the real zeros of `g`.
fn semidefinite_forms(g: &MPoly) -> Option<Vec<MPoly>> {
    if g.total_degree() != 2 {
        return None;
    }
    let n = g.nvars();
    let used = g.support();
    let m = used.len() + 1;
    let mut q = FracMatrix::zeros(m, m);
    let half = RatFunc::frac(1, 2);
    for (mono, c) in g.terms() {
        let mut idx: Vec<usize> = Vec::new();
        for (pos, v) in used.iter().enumerate() {
            for _ in 0..mono[*v] {
                idx.push(pos + 1);
            }
        }
        while idx.len() < 2 {
            idx.push(0);
        }
        let (a, b) = (idx[0], idx[1]);
        let c = RatFunc::rat(c.clone());
        if a == b {
            let v = q.get(a, a) + &c;
            q.set(a, a, v);
        } else {
            let h = &c * &half;
            let v = q.get(a, b) + &h;
            q.set(a, b, v.clone());
            q.set(b, a, v);
        }
    }
    let basis: Vec<MPoly> = std::iter::once(MPoly::one(n)).chain(used.iter().map(|v| MPoly::var(n, *v))).collect();
    for sign in [1i64, -1] {
        let mut a = q.scale(&RatFunc::int(sign));
        let mut forms = Vec::new();
        let mut ok = true;
        loop {
            let piv = (0..m).find(|i| !a.get(*i, *i).is_zero());
            let Some(i) = piv else {
                if !a.is_zero() {
                    ok = false;
                }
                break;
            };
            let d = a.get(i, i).constant_value().expect("numeric");
            if d.is_negative() {
                ok = false;
                break;
            }
            let row: Vec<RatFunc> = (0..m).map(|j| a.get(i, j).clone()).collect();
            let mut form = MPoly::zero(n);
            for (j, r) in row.iter().enumerate() {
                form = form.add(&basis[j].scale(&r.constant_value().expect("numeric")));
            }
            forms.push(form);
            let inv = RatFunc::rat(d.recip().expect("nonzero"));
            for r in 0..m {
                for c in 0..m {
                    let v = a.get(r, c) - &(&(&row[r] * &row[c]) * &inv);
                    a.set(r, c, v);
                }
            }
        }
        if ok {
            return Some(forms);
        }
    }
    None
}

/// Sturm-based real root count of a univariate polynomial over all of ℝ.
pub fn real_root_count(p: &UPoly) -> usize {
    if p.degree() < 1 {
        return 0;
    }
    let b = p.root_bound();
    SturmChain::new(p).count(&-&b, &b)
}
