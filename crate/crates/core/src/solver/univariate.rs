use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactmath::Rat;

/// Dense univariate polynomial over the rationals, lowest degree first,
/// without trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UPoly {
    c: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut c: Vec<Rat>) -> UPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|x| Rat::from_int(*x)).collect())
    }

    pub fn zero() -> UPoly {
        UPoly::default()
    }

    pub fn constant(c: Rat) -> UPoly {
        UPoly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rat) -> UPoly {
        UPoly::new(vec![-r, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lc(&self) -> Rat {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + a.to_f64())
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        self.eval(x).signum()
    }

    pub fn deriv(&self) -> UPoly {
        UPoly::new(
            self.c.iter().enumerate().skip(1).map(|(i, a)| a * &Rat::from_int(i as i64)).collect(),
        )
    }

    pub fn scale(&self, k: &Rat) -> UPoly {
        UPoly::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip().expect("nonzero"))
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).cloned().unwrap_or_default();
                    let b = o.c.get(i).cloned().unwrap_or_default();
                    &a + &b
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&Rat::from_int(-1)))
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let inv = d.lc().recip().expect("nonzero");
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &inv;
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &(&t * b);
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree(&self) -> UPoly {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.deriv());
        self.div_rem(&g).0.monic()
    }

    /// Clears denominators and content, with positive leading coefficient.
    pub fn integer_primitive(&self) -> Vec<BigInt> {
        let l = Rat::lcm_denoms(self.c.iter());
        let ints: Vec<BigInt> =
            self.c.iter().map(|a| (a * &Rat::from(l.clone())).numer().clone()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if ints.last().is_some_and(|x| x.is_negative()) { -1 } else { 1 };
        ints.iter().map(|x| x / &g * sign).collect()
    }

    /// Cauchy bound: every real root lies in `(-B, B)`.
    pub fn root_bound(&self) -> Rat {
        let lc = self.lc().abs();
        let m = self.c.iter().take(self.c.len().saturating_sub(1)).map(|a| a.abs()).max();
        match m {
            None => Rat::one(),
            Some(m) => &Rat::one() + &(&m / &lc),
        }
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rat> {
        if self.degree() <= 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut p = self.squarefree();
        if p.c[0].is_zero() {
            out.push(Rat::zero());
            p = p.div_rem(&UPoly::from_ints(&[0, 1])).0;
        }
        if p.degree() >= 1 {
            let ints = p.integer_primitive();
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let (nums, dens) = (divisors(&a0), divisors(&an));
            if let (Some(nums), Some(dens)) = (nums, dens) {
                for q in &dens {
                    for n in &nums {
                        for s in [1, -1] {
                            let r = Rat::from_big(num_rational::BigRational::new(n * s, q.clone()));
                            if !out.contains(&r) && p.eval(&r).is_zero() {
                                out.push(r);
                            }
                        }
                    }
                }
            } else {
                // divisor enumeration too large; fall back to isolating intervals
                for iv in isolate_real_roots(&p) {
                    if let Some(r) = iv.exact() {
                        out.push(r);
                    } else if let Some(r) = rational_in_interval(&p, &iv) {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Removes the rational roots, returning the squarefree cofactor.
    pub fn strip_rational_roots(&self, roots: &[Rat]) -> UPoly {
        let mut p = self.squarefree();
        for r in roots {
            p = p.div_rem(&UPoly::linear_root(r)).0;
        }
        p.monic()
    }

    pub fn display_in(&self, var: &str) -> String {
        let names = vec![var.to_string()];
        let terms = self.c.iter().enumerate().map(|(i, a)| (vec![i as u32], a.clone()));
        crate::exactmath::Poly::from_terms(names, terms).to_string()
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return Some(vec![BigInt::one()]);
    }
    if n.bits() > 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let e = n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
        if out.len() > 100_000 {
            return None;
        }
    }
    Some(out)
}

/// Simplest-denominator rational in `iv` that is a root, if any (used only when
/// divisor enumeration is impractical).
fn rational_in_interval(p: &UPoly, iv: &Interval) -> Option<Rat> {
    let ints = p.integer_primitive();
    let an = ints.last()?.abs();
    // a rational root p/q has q | an; refine until the interval has width < 1/an²
    let mut iv = iv.clone();
    let tiny = Rat::from_big(num_rational::BigRational::new(BigInt::one(), &an * &an * 2));
    while iv.width() > tiny {
        iv = iv.bisect_toward_root(p);
        if let Some(r) = iv.exact() {
            return Some(r);
        }
    }
    let mid = iv.midpoint();
    let q = &an;
    let cand = Rat::from_big(num_rational::BigRational::new((&mid * &Rat::from(q.clone())).round(), q.clone()));
    p.eval(&cand).is_zero().then_some(cand)
}

/// Sturm sequence `p, p', -rem(p, p'), …`.
#[derive(Clone, Debug)]
pub struct SturmChain {
    pub chain: Vec<UPoly>,
}

impl SturmChain {
    pub fn new(p: &UPoly) -> SturmChain {
        let p = p.squarefree();
        let mut chain = vec![p.clone()];
        if p.degree() >= 1 {
            chain.push(p.deriv());
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.scale(&Rat::from_int(-1)));
            }
        }
        SturmChain { chain }
    }

    pub fn variations(&self, x: &Rat) -> usize {
        let signs: Vec<i32> = self.chain.iter().map(|q| q.sign_at(x)).filter(|s| *s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a) - self.variations(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SturmError {
    #[error("empty interval: need a < b, got ({0}, {1}]")]
    EmptyInterval(String, String),
    #[error("the zero polynomial has infinitely many roots")]
    ZeroPolynomial,
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &UPoly, a: &Rat, b: &Rat) -> Result<usize, SturmError> {
    if a >= b {
        return Err(SturmError::EmptyInterval(a.to_string(), b.to_string()));
    }
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    Ok(SturmChain::new(p).count(a, b))
}

/// Closed rational interval `[lo, hi]`; isolating intervals are open at the low end
/// unless `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn point(x: Rat) -> Interval {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: Rat, hi: Rat) -> Interval {
        if lo <= hi {
            Interval { lo, hi }
        } else {
            Interval { lo: hi, hi: lo }
        }
    }

    pub fn exact(&self) -> Option<Rat> {
        (self.lo == self.hi).then(|| self.lo.clone())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        Rat::mid(&self.lo, &self.hi)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    pub fn disjoint(&self, o: &Interval) -> bool {
        self.hi < o.lo || o.hi < self.lo
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        Interval::new(&self.lo * c, &self.hi * c)
    }

    /// Halves an isolating interval of a squarefree `p`, keeping the root.
    pub fn bisect_toward_root(&self, p: &UPoly) -> Interval {
        if self.lo == self.hi {
            return self.clone();
        }
        let m = self.midpoint();
        if p.eval(&m).is_zero() {
            return Interval::point(m);
        }
        let s = SturmChain::new(p);
        if s.count(&self.lo, &m) == 1 {
            Interval { lo: self.lo.clone(), hi: m }
        } else {
            Interval { lo: m, hi: self.hi.clone() }
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Disjoint isolating intervals `(lo, hi]` (or points) for the distinct real roots, ascending.
pub fn isolate_real_roots(p: &UPoly) -> Vec<Interval> {
    if p.degree() <= 0 {
        return Vec::new();
    }
    let q = p.squarefree();
    let s = SturmChain::new(&q);
    let b = q.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![Interval { lo: -&b, hi: b }];
    while let Some(iv) = stack.pop() {
        let n = s.count(&iv.lo, &iv.hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if q.eval(&iv.hi).is_zero() {
                out.push(Interval::point(iv.hi.clone()));
            } else {
                out.push(iv);
            }
            continue;
        }
        let m = iv.midpoint();
        stack.push(Interval { lo: m.clone(), hi: iv.hi.clone() });
        stack.push(Interval { lo: iv.lo.clone(), hi: m });
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Refines an isolating interval of the squarefree `p` until its width is at most `eps`.
pub fn refine(p: &UPoly, iv: &Interval, eps: &Rat) -> Interval {
    let mut iv = iv.clone();
    while iv.width() > *eps {
        iv = iv.bisect_toward_root(p);
    }
    iv
}

/// Rational interval enclosure of `p` over `x`.
pub fn eval_interval(p: &UPoly, x: &Interval) -> Interval {
    let mut acc = Interval::point(Rat::zero());
    for a in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Interval::point(a.clone()));
    }
    acc
}
