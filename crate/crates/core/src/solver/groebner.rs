use std::collections::BTreeSet;

use super::mpoly::{mono_divides, mono_lcm, mono_sub, MPoly};
use crate::exactmath::Rat;

/// Step counter shared by the whole solve; one unit per S-pair reduction or resultant.
#[derive(Clone, Debug)]
pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("elimination budget of {limit} steps exhausted")]
pub struct BudgetExhausted {
    pub limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: 0 }
    }

    pub fn spend(&mut self, n: u64) -> Result<(), BudgetExhausted> {
        self.used += n;
        if self.used > self.limit {
            Err(BudgetExhausted { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.used)
    }
}

/// Full reduction of `p` modulo `basis`.
pub fn normal_form(p: &MPoly, basis: &[MPoly]) -> MPoly {
    let mut p = p.clone();
    let mut rem = MPoly::zero(p.nvars());
    while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|g| !g.is_zero() && mono_divides(g.lm(), &m)) {
            Some(g) => {
                let q = &c / g.lc();
                p.sub_mul_term(g, &mono_sub(&m, g.lm()), &q);
            }
            None => {
                p.sub_mul_term(&MPoly::term(m.clone(), Rat::one()), &vec![0; m.len()], &c);
                rem = rem.add(&MPoly::term(m, c));
            }
        }
    }
    rem
}

fn s_poly(f: &MPoly, g: &MPoly) -> MPoly {
    let l = mono_lcm(f.lm(), g.lm());
    let mut s = f.mul_term(&mono_sub(&l, f.lm()), &f.lc().recip().expect("nonzero"));
    s.sub_mul_term(g, &mono_sub(&l, g.lm()), &g.lc().recip().expect("nonzero"));
    s
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Reduced lex Gröbner basis (monic, sorted by leading monomial).
/// Returns `[1]` for the unit ideal and `[]` for the zero ideal.
pub fn groebner(polys: &[MPoly], budget: &mut Budget) -> Result<Vec<MPoly>, BudgetExhausted> {
    let mut g: Vec<MPoly> = Vec::new();
    for p in polys {
        let r = normal_form(p, &g);
        if !r.is_zero() {
            if r.is_constant() {
                return Ok(vec![MPoly::one(r.nvars())]);
            }
            g.push(r.monic());
        }
    }
    let mut pairs: BTreeSet<(u32, Vec<u32>, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let key = |g: &[MPoly], i: usize, j: usize| {
        let l = mono_lcm(g[i].lm(), g[j].lm());
        (l.iter().sum::<u32>(), l, i, j)
    };
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert(key(&g, i, j));
        }
    }
    while let Some(item) = pairs.iter().next().cloned() {
        pairs.remove(&item);
        let (_, lcm, i, j) = item;
        done.insert((i, j));
        if coprime(g[i].lm(), g[j].lm()) {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && mono_divides(g[k].lm(), &lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        budget.spend(1)?;
        let r = normal_form(&s_poly(&g[i], &g[j]), &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![MPoly::one(r.nvars())]);
        }
        g.push(r.monic());
        let new = g.len() - 1;
        for i in 0..new {
            pairs.insert(key(&g, i, new));
        }
    }
    Ok(reduce_basis(g))
}

/// Minimizes and inter-reduces a Gröbner basis.
pub fn reduce_basis(g: Vec<MPoly>) -> Vec<MPoly> {
    let mut g: Vec<MPoly> = g.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    g.sort_by(|a, b| a.lm().cmp(b.lm()));
    let mut minimal: Vec<MPoly> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| mono_divides(q.lm(), p.lm())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let lead = MPoly::term(minimal[i].lm().clone(), Rat::one());
        let tail = minimal[i].sub(&lead);
        out.push(lead.add(&normal_form(&tail, &others)));
    }
    out.sort_by(|a, b| a.lm().cmp(b.lm()));
    out
}

/// Whether `basis` is the unit ideal.
pub fn is_unit_ideal(basis: &[MPoly]) -> bool {
    basis.iter().any(|p| p.is_unit())
}
