use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::{MathError, Rat};

/// Exponent vector, dense over the owning polynomial's variable list.
pub type Exps = Vec<u32>;

/// Multivariate polynomial with rational coefficients over named variables.
///
/// Variables are kept sorted by name and pruned when unused, so two equal
/// polynomials always have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Exps, Rat>,
}

/// Graded reverse lexicographic comparison of two exponent vectors.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { vars: Vec::new(), terms }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Rat::from_int(n))
    }

    pub fn var(name: &str) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rat::one());
        Poly { vars: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from raw parts; exponent vectors must match `vars` in length.
    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Exps, Rat)>) -> Poly {
        let mut idx: Vec<usize> = (0..vars.len()).collect();
        idx.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        let sorted: Vec<String> = idx.iter().map(|&i| vars[i].clone()).collect();
        let mut map: BTreeMap<Exps, Rat> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            let e2: Exps = idx.iter().map(|&i| e[i]).collect();
            let slot = map.entry(e2).or_insert_with(Rat::zero);
            *slot += &c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut p = Poly { vars: sorted, terms: map };
        p.merge_duplicate_vars();
        p.prune();
        p
    }

    fn merge_duplicate_vars(&mut self) {
        let mut uniq: Vec<String> = self.vars.clone();
        uniq.dedup();
        if uniq.len() == self.vars.len() {
            return;
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| uniq.binary_search(v).unwrap())
            .collect();
        let mut map: BTreeMap<Exps, Rat> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; uniq.len()];
            for (i, &x) in e.iter().enumerate() {
                e2[pos[i]] += x;
            }
            *map.entry(e2).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        self.vars = uniq;
        self.terms = map;
    }

    fn prune(&mut self) {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let vars: Vec<String> = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| {
                let e2: Exps = e
                    .iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(&x, _)| x)
                    .collect();
                (e2, c)
            })
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rat> {
        if !self.vars.is_empty() {
            return None;
        }
        Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rat::zero))
    }

    pub fn has_var(&self, x: &str) -> bool {
        self.var_index(x).is_some()
    }

    fn var_index(&self, x: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(x)).ok()
    }

    /// Re-expresses the terms over a superset of variables (sorted).
    fn lift(&self, vars: &[String]) -> BTreeMap<Exps, Rat> {
        if vars == self.vars.as_slice() {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("variable missing from superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = vec![0u32; vars.len()];
                for (i, &x) in e.iter().enumerate() {
                    e2[pos[i]] = x;
                }
                (e2, c.clone())
            })
            .collect()
    }

    fn union_vars(&self, o: &Poly) -> Vec<String> {
        if self.vars == o.vars {
            return self.vars.clone();
        }
        let set: BTreeSet<&String> = self.vars.iter().chain(&o.vars).collect();
        set.into_iter().cloned().collect()
    }

    fn build(vars: Vec<String>, mut terms: BTreeMap<Exps, Rat>) -> Poly {
        terms.retain(|_, c| !c.is_zero());
        let mut p = Poly { vars, terms };
        p.prune();
        p
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, x: &str) -> u32 {
        match self.var_index(x) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Leading term in lexicographic order over the sorted variable list.
    pub fn lex_leading(&self) -> Option<(&Exps, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn lex_leading_coeff(&self) -> Rat {
        self.lex_leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    /// Scales so that the lexicographic leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.lex_leading() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(&c.recip().unwrap()),
        }
    }

    /// Coefficients with respect to `x`, lowest power first.
    pub fn coeffs_in(&self, x: &str) -> Vec<Poly> {
        let Some(i) = self.var_index(x) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(x) as usize;
        let mut buckets: Vec<BTreeMap<Exps, Rat>> = vec![BTreeMap::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            buckets[k].insert(e2, c.clone());
        }
        buckets
            .into_iter()
            .map(|t| Poly::build(self.vars.clone(), t))
            .collect()
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(x: &str, coeffs: &[Poly]) -> Poly {
        let xp = Poly::var(x);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &xp) + c;
        }
        acc
    }

    pub fn deriv(&self, x: &str) -> Poly {
        let Some(i) = self.var_index(x) else {
            return Poly::zero();
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                terms.insert(e2, c * &Rat::from_int(e[i] as i64));
            }
        }
        Poly::build(self.vars.clone(), terms)
    }

    /// Evaluates at a full assignment of the polynomial's variables.
    pub fn eval(&self, at: &BTreeMap<String, Rat>) -> Result<Rat, MathError> {
        let vals: Vec<&Rat> = self
            .vars
            .iter()
            .map(|v| at.get(v).ok_or_else(|| MathError::Unassigned(v.clone())))
            .collect::<Result<_, _>>()?;
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    t *= &vals[k].pow(x);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes rational values for some of the variables.
    pub fn partial_eval(&self, at: &BTreeMap<String, Rat>) -> Poly {
        let subs: BTreeMap<String, Poly> = at
            .iter()
            .filter(|(k, _)| self.has_var(k))
            .map(|(k, v)| (k.clone(), Poly::constant(v.clone())))
            .collect();
        self.substitute(&subs)
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, subs: &BTreeMap<String, Poly>) -> Poly {
        if !self.vars.iter().any(|v| subs.contains_key(v)) {
            return self.clone();
        }
        let mut acc = Poly::zero();
        let mut cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = &self.vars[k];
                let factor = match subs.get(name) {
                    Some(p) => cache.entry((k, x)).or_insert_with(|| p.pow(x)).clone(),
                    None => Poly::var(name).pow(x),
                };
                t = &t * &factor;
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Poly {
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone()))
            .collect();
        Poly::from_terms(vars, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip().ok()?));
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.vars.iter().any(|v| !self.has_var(v)) {
            return None;
        }
        let vars = self.vars.clone();
        let dt = d.lift(&vars);
        let (dl_e, dl_c) = dt.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.terms.clone();
        let mut quo: BTreeMap<Exps, Rat> = BTreeMap::new();
        while let Some((re, rc)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&dl_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exps = re.iter().zip(&dl_e).map(|(a, b)| a - b).collect();
            let qc = &rc / &dl_c;
            for (e, c) in &dt {
                let ne: Exps = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let slot = rem.entry(ne.clone()).or_insert_with(Rat::zero);
                *slot -= &(c * &qc);
                if slot.is_zero() {
                    rem.remove(&ne);
                }
            }
            quo.insert(qe, qc);
        }
        Some(Poly::build(vars, quo))
    }

    /// Pseudo-remainder of `self` by `d` as polynomials in `x`.
    pub fn prem(&self, d: &Poly, x: &str) -> Poly {
        let dc = d.coeffs_in(x);
        let dd = dc.len() - 1;
        let lcd = &dc[dd];
        let mut r = self.coeffs_in(x);
        trim(&mut r);
        while !r.is_empty() && r.len() > dd {
            let dr = r.len() - 1;
            let lcr = r[dr].clone();
            for c in r.iter_mut() {
                *c = &*c * lcd;
            }
            for (j, q) in dc.iter().enumerate() {
                let k = j + dr - dd;
                r[k] = &r[k] - &(&lcr * q);
            }
            trim(&mut r);
        }
        Poly::from_coeffs_in(x, &r)
    }

    /// Greatest common divisor of the coefficients with respect to `x`.
    pub fn content_in(&self, x: &str) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(x) {
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_in(&self, x: &str) -> Poly {
        let c = self.content_in(x);
        if c.is_zero() {
            return Poly::zero();
        }
        self.div_exact(&c).expect("content divides")
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return if self.is_zero() { Poly::zero() } else { Poly::one() };
        }
        let mut g = self.clone();
        for v in &self.vars {
            g = gcd(&g, &self.deriv(v));
        }
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Exact square root, choosing the root with positive leading coefficient.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let vars = self.vars.clone();
        let (le, lc) = self.lex_leading()?;
        if le.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let r0e: Exps = le.iter().map(|e| e / 2).collect();
        let r0c = lc.sqrt_exact()?;
        let mut root: BTreeMap<Exps, Rat> = BTreeMap::new();
        root.insert(r0e.clone(), r0c.clone());
        let two_lead = (r0e, &r0c * &Rat::from_int(2));
        for _ in 0..=self.terms.len() * 2 + 4 {
            let r = Poly::build(vars.clone(), root.clone());
            let rem = self - &(&r * &r);
            if rem.is_zero() {
                return Some(r);
            }
            let rt = rem.lift(&vars);
            let (e, c) = rt.iter().next_back()?;
            if e.iter().zip(&two_lead.0).any(|(a, b)| a < b) {
                return None;
            }
            let te: Exps = e.iter().zip(&two_lead.0).map(|(a, b)| a - b).collect();
            if root.contains_key(&te) {
                return None;
            }
            root.insert(te, c / &two_lead.1);
        }
        None
    }

    /// Leading coefficient as a polynomial in `x`.
    pub fn lc_in(&self, x: &str) -> Poly {
        self.coeffs_in(x).pop().unwrap_or_default()
    }

    fn fmt_monomial(&self, e: &[u32]) -> String {
        let mut parts = Vec::new();
        for (v, &x) in self.vars.iter().zip(e) {
            match x {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{x}")),
            }
        }
        parts.join("*")
    }

    /// Terms sorted by graded reverse lexicographic order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Exps, &Rat)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grevlex_cmp(b.0, a.0));
        t
    }

    /// Multiplies by the lcm of denominators and divides by the integer content,
    /// keeping the sign of the leading term positive.
    pub fn integer_primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = Rat::lcm_denoms(self.terms.values());
        let scaled = self.scale(&Rat::from_int(l));
        let mut g = num_bigint::BigInt::from(0);
        for c in scaled.terms.values() {
            g = num_integer::Integer::gcd(&g, c.numer());
        }
        let mut out = scaled.scale(&Rat::new(1, g));
        if out.sorted_terms()[0].1.is_negative() {
            out = -out;
        }
        out
    }
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

/// Monic greatest common divisor via primitive pseudo-remainder sequences.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let x = a
        .vars
        .iter()
        .chain(&b.vars)
        .min()
        .cloned()
        .expect("non-constant");
    if !a.has_var(&x) {
        return gcd(a, &b.content_in(&x));
    }
    if !b.has_var(&x) {
        return gcd(&a.content_in(&x), b);
    }
    let ca = a.content_in(&x);
    let cb = b.content_in(&x);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides").integer_primitive();
    let mut q = b.div_exact(&cb).expect("content divides").integer_primitive();
    if p.degree_in(&x) < q.degree_in(&x) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = p.prem(&q, &x);
        if r.is_zero() {
            break;
        }
        if r.degree_in(&x) == 0 {
            q = Poly::one();
            break;
        }
        p = q;
        q = r.primitive_in(&x).integer_primitive();
    }
    (&c * &q.primitive_in(&x)).monic()
}

/// Resultant with respect to `x`, via the Sylvester determinant.
pub fn resultant(a: &Poly, b: &Poly, x: &str) -> Poly {
    let ac = a.coeffs_in(x);
    let bc = b.coeffs_in(x);
    let m = ac.len() - 1;
    let n = bc.len() - 1;
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    if m == 0 {
        return ac[0].pow(n as u32);
    }
    if n == 0 {
        return bc[0].pow(m as u32);
    }
    let size = m + n;
    let mut mat = vec![vec![Poly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in ac.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in bc.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free determinant of a square polynomial matrix.
pub fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let mono = self.fmt_monomial(e);
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let vars = self.union_vars(o);
        let mut t = self.lift(&vars);
        for (e, c) in o.lift(&vars) {
            let slot = t.entry(e).or_insert_with(Rat::zero);
            *slot += &c;
        }
        Poly::build(vars, t)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        let vars = self.union_vars(o);
        let a = self.lift(&vars);
        let b = o.lift(&vars);
        let mut t: BTreeMap<Exps, Rat> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let slot = t.entry(e).or_insert_with(Rat::zero);
                *slot += &(ca * cb);
            }
        }
        Poly::build(vars, t)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Poly {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Poly {
        Poly::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        crate::exactmath::parse_poly(s).unwrap()
    }

    #[test]
    fn display_is_grevlex() {
        assert_eq!(p("1 + k^2 - 3*k").to_string(), "k^2 - 3*k + 1");
        assert_eq!(p("tau*k - 1/2*k^2").to_string(), "-1/2*k^2 + k*tau");
    }

    #[test]
    fn gcd_basic() {
        let a = p("(x + y)^2 * (x - 1)");
        let b = p("(x + y) * (x + 2)");
        assert_eq!(gcd(&a, &b), p("x + y"));
        assert_eq!(gcd(&p("x^2 + 1"), &p("x + 1")), Poly::one());
    }

    #[test]
    fn exact_division() {
        let a = p("x^3 - y^3");
        assert_eq!(a.div_exact(&p("x - y")), Some(p("x^2 + x*y + y^2")));
        assert_eq!(a.div_exact(&p("x + y")), None);
    }

    #[test]
    fn squarefree() {
        assert_eq!(p("(x - 1)^3 * (y + 2)^2 * x").squarefree_part(), p("(x - 1)*(y + 2)*x"));
    }

    #[test]
    fn sqrt() {
        assert_eq!(p("k^2 + 2*k + 1").sqrt_exact(), Some(p("k + 1")));
        assert_eq!(p("4*a^2*b^2").sqrt_exact(), Some(p("2*a*b")));
        assert_eq!(p("k^2 + 1").sqrt_exact(), None);
    }

    #[test]
    fn resultant_of_linear_factors() {
        assert_eq!(resultant(&p("x - a"), &p("x - b"), "x"), p("a - b"));
        assert_eq!(resultant(&p("x^2 + 1"), &p("2*x"), "x"), p("4"));
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
