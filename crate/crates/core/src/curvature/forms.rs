use std::collections::BTreeMap;
use std::fmt;

use crate::exactmath::RatFunc;
use crate::frames::OrthoFrameAlgebra;

/// Left-invariant exterior form on a frame, stored on increasing index lists.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Form {
    terms: BTreeMap<Vec<usize>, RatFunc>,
}

/// Sorts `idx` in place and returns the sign of the permutation, or `None` on a repeat.
fn sort_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

impl Form {
    pub fn zero() -> Form {
        Form::default()
    }

    /// `c · e^{i1}∧…∧e^{ip}` for arbitrary (possibly unsorted) indices.
    pub fn mono(idx: &[usize], c: RatFunc) -> Form {
        let mut v = idx.to_vec();
        let mut f = Form::zero();
        if let Some(s) = sort_sign(&mut v) {
            if !c.is_zero() {
                f.terms.insert(v, c.scale(&crate::exactmath::Rat::from_int(s)));
            }
        }
        f
    }

    pub fn one_form(coeffs: &[RatFunc]) -> Form {
        coeffs
            .iter()
            .enumerate()
            .fold(Form::zero(), |acc, (i, c)| acc.add(&Form::mono(&[i], c.clone())))
    }

    pub fn coeff(&self, idx: &[usize]) -> RatFunc {
        let mut v = idx.to_vec();
        match sort_sign(&mut v) {
            Some(s) => self
                .terms
                .get(&v)
                .map(|c| c.scale(&crate::exactmath::Rat::from_int(s)))
                .unwrap_or_default(),
            None => RatFunc::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Form) -> Form {
        let mut t = self.terms.clone();
        for (k, v) in &o.terms {
            let s = &t.get(k).cloned().unwrap_or_default() + v;
            if s.is_zero() {
                t.remove(k);
            } else {
                t.insert(k.clone(), s);
            }
        }
        Form { terms: t }
    }

    pub fn scale(&self, c: &RatFunc) -> Form {
        if c.is_zero() {
            return Form::zero();
        }
        Form { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.scale(&RatFunc::int(-1)))
    }

    pub fn wedge(&self, o: &Form) -> Form {
        let mut out = Form::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let idx: Vec<usize> = a.iter().chain(b).copied().collect();
                out = out.add(&Form::mono(&idx, x * y));
            }
        }
        out
    }

    /// Exterior derivative, using `de^k = Σ_{i<j} c(k,i,j) e^{ij}` from the frame.
    pub fn d(&self, o: &OrthoFrameAlgebra) -> Form {
        let n = o.dim();
        let de: Vec<Form> = (0..n)
            .map(|k| {
                let mut f = Form::zero();
                for i in 0..n {
                    for j in i + 1..n {
                        f = f.add(&Form::mono(&[i, j], o.c(k, i, j)));
                    }
                }
                f
            })
            .collect();
        let mut out = Form::zero();
        for (idx, c) in &self.terms {
            for s in 0..idx.len() {
                let before = Form::mono(&idx[..s], RatFunc::one());
                let after = Form::mono(&idx[s + 1..], RatFunc::one());
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let t = before.wedge(&de[idx[s]]).wedge(&after);
                out = out.add(&t.scale(&(c * &RatFunc::int(sign))));
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Form {
        let mut t = BTreeMap::new();
        for (k, v) in &self.terms {
            let w = f(v);
            if !w.is_zero() {
                t.insert(k.clone(), w);
            }
        }
        Form { terms: t }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| {
                let name: String = k.iter().map(|i| (i + 1).to_string()).collect();
                if v.is_one() {
                    format!("e{name}")
                } else if v.numer().num_terms() > 1 {
                    format!("({v})*e{name}")
                } else {
                    format!("{v}*e{name}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({self})")
    }
}
