use std::collections::BTreeMap;
use std::fmt;

use crate::exactmath::{Poly, Rat};

pub type Mono = Vec<u32>;

/// Polynomial over a fixed, ordered variable list, kept in lex order with the
/// first variable largest. The leading term is the last map entry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Mono, Rat>,
}

pub(crate) fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn mono_lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn mono_sub(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_add(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl MPoly {
    pub fn zero(n: usize) -> MPoly {
        MPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rat) -> MPoly {
        let mut p = MPoly::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(n: usize) -> MPoly {
        MPoly::constant(n, Rat::one())
    }

    pub fn var(n: usize, i: usize) -> MPoly {
        let mut m = vec![0; n];
        m[i] = 1;
        MPoly::term(m, Rat::one())
    }

    pub fn term(m: Mono, c: Rat) -> MPoly {
        let mut p = MPoly::zero(m.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|e| *e == 0))
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn lm(&self) -> &Mono {
        self.leading().expect("leading monomial of zero").0
    }

    pub fn lc(&self) -> &Rat {
        self.leading().expect("leading coefficient of zero").1
    }

    pub fn coeff(&self, m: &[u32]) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip().expect("nonzero")),
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.n);
        }
        MPoly { n: self.n, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_term(&self, m: &[u32], c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.n);
        }
        MPoly {
            n: self.n,
            terms: self.terms.iter().map(|(k, x)| (mono_add(k, m), x * c)).collect(),
        }
    }

    /// `self - c·x^m·other`, in place.
    pub fn sub_mul_term(&mut self, other: &MPoly, m: &[u32], c: &Rat) {
        for (k, x) in &other.terms {
            let key = mono_add(k, m);
            let v = x * c;
            match self.terms.get_mut(&key) {
                Some(y) => {
                    *y -= &v;
                    if y.is_zero() {
                        self.terms.remove(&key);
                    }
                }
                None => {
                    self.terms.insert(key, -v);
                }
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.sub_mul_term(o, &vec![0; self.n], &Rat::from_int(-1));
        out
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.sub_mul_term(o, &vec![0; self.n], &Rat::one());
        out
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (m, c) in &o.terms {
            out.sub_mul_term(self, m, &-c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        (0..e).fold(MPoly::one(self.n), |acc, _| acc.mul(self))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|i| self.terms.keys().any(|m| m[*i] > 0)).collect()
    }

    /// Index of the largest (lex-first) occurring variable.
    pub fn main_var(&self) -> Option<usize> {
        self.support().first().copied()
    }

    pub fn uses_only(&self, vars: &[usize]) -> bool {
        self.support().iter().all(|v| vars.contains(v))
    }

    /// Substitutes `x_i := value`.
    pub fn subst_rat(&self, i: usize, value: &Rat) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut k = m.clone();
            let e = k[i];
            k[i] = 0;
            let v = c * &value.pow(e);
            out.sub_mul_term(&MPoly::one(self.n), &k, &-v);
        }
        out
    }

    /// Substitutes `x_i := q`.
    pub fn subst(&self, i: usize, q: &MPoly) -> MPoly {
        let d = self.degree_in(i);
        let powers: Vec<MPoly> = (0..=d)
            .scan(MPoly::one(self.n), |acc, _| {
                let cur = acc.clone();
                *acc = acc.mul(q);
                Some(cur)
            })
            .collect();
        let mut out = MPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut k = m.clone();
            let e = k[i] as usize;
            k[i] = 0;
            out.sub_mul_term(&powers[e], &k, &-c);
        }
        out
    }

    pub fn eval(&self, at: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.iter().zip(at) {
                if *e > 0 {
                    t *= &x.pow(*e);
                }
            }
            s += &t;
        }
        s
    }

    pub fn eval_f64(&self, at: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter().zip(at).fold(c.to_f64(), |acc, (e, x)| acc * x.powi(*e as i32))
            })
            .sum()
    }

    pub fn partial_deriv(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut k = m.clone();
                k[i] -= 1;
                out.terms.insert(k, c * &Rat::from_int(m[i]));
            }
        }
        out
    }

    /// Coefficients in `x_i`, lowest degree first.
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![MPoly::zero(self.n); d + 1];
        for (m, c) in &self.terms {
            let mut k = m.clone();
            let e = k[i] as usize;
            k[i] = 0;
            out[e].terms.insert(k, c.clone());
        }
        out
    }

    /// Univariate coefficients when only `x_i` occurs.
    pub fn univariate_coeffs(&self, i: usize) -> Option<Vec<Rat>> {
        if !self.uses_only(&[i]) {
            return None;
        }
        let d = self.degree_in(i) as usize;
        let mut out = vec![Rat::zero(); d + 1];
        for (m, c) in &self.terms {
            out[m[i] as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(n: usize, i: usize, coeffs: &[Rat]) -> MPoly {
        let mut p = MPoly::zero(n);
        for (e, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0; n];
                m[i] = e as u32;
                p.terms.insert(m, c.clone());
            }
        }
        p
    }

    pub fn to_poly(&self, names: &[String]) -> Poly {
        Poly::from_terms(names.to_vec(), self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Converts a polynomial whose variables all appear in `names`.
    pub fn from_poly(p: &Poly, names: &[String]) -> Option<MPoly> {
        let n = names.len();
        let idx: Option<Vec<usize>> =
            p.vars().iter().map(|v| names.iter().position(|w| w == v)).collect();
        let idx = idx?;
        let mut out = MPoly::zero(n);
        for (e, c) in p.terms() {
            let mut m = vec![0; n];
            for (k, x) in idx.iter().zip(e) {
                m[*k] = *x;
            }
            out.terms.insert(m, c.clone());
        }
        Some(out)
    }

    pub fn display(&self, names: &[String]) -> String {
        self.to_poly(names).to_string()
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.n).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}
