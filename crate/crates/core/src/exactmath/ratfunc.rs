use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::gcd;
use super::{parse_ratfunc, MathError, Poly, Rat};

/// Quotient of polynomials in lowest terms with a monic denominator.
///
/// Structure constants of frames adapted to a symbolic metric pick up
/// denominators (for example `1/k`), so this is the scalar type used for
/// symbolic algebra throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    pub fn int(n: i64) -> RatFunc {
        RatFunc::from_poly(Poly::int(n))
    }

    pub fn rat(r: Rat) -> RatFunc {
        RatFunc::from_poly(Poly::constant(r))
    }

    pub fn frac(n: i64, d: i64) -> RatFunc {
        RatFunc::rat(Rat::new(n, d))
    }

    pub fn var(name: &str) -> RatFunc {
        RatFunc::from_poly(Poly::var(name))
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Poly::one() }
    }

    /// Builds `num/den` in lowest terms.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, MathError> {
        if den.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(RatFunc::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = den.constant_value() {
            return RatFunc::from_poly(num.scale(&c.recip().expect("nonzero")));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        RatFunc::normalized(num, den)
    }

    fn normalized(num: Poly, den: Poly) -> RatFunc {
        let lc = den.lex_leading_coeff();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.recip().expect("nonzero");
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if !self.den.is_one() {
            return None;
        }
        self.num.constant_value()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    /// Variables appearing in numerator or denominator, sorted.
    pub fn vars(&self) -> Vec<String> {
        let mut v: Vec<String> = self.num.vars().iter().chain(self.den.vars()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn inv(&self) -> Result<RatFunc, MathError> {
        if self.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(RatFunc::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc, MathError> {
        Ok(self * &o.inv()?)
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, n: u32) -> RatFunc {
        RatFunc { num: self.num.pow(n), den: self.den.pow(n) }
    }

    pub fn eval(&self, at: &BTreeMap<String, Rat>) -> Result<Rat, MathError> {
        let d = self.den.eval(at)?;
        if d.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(&self.num.eval(at)? / &d)
    }

    /// Substitutes rational values for some variables.
    pub fn partial_eval(&self, at: &BTreeMap<String, Rat>) -> Result<RatFunc, MathError> {
        RatFunc::new(self.num.partial_eval(at), self.den.partial_eval(at))
    }

    /// Substitutes rational functions for variables.
    pub fn substitute(&self, subs: &BTreeMap<String, RatFunc>) -> Result<RatFunc, MathError> {
        let vars = self.vars();
        if !vars.iter().any(|v| subs.contains_key(v)) {
            return Ok(self.clone());
        }
        Ok(&subst_poly(&self.num, subs)? * &subst_poly(&self.den, subs)?.inv()?)
    }

    /// Exact square root when numerator and denominator are perfect squares.
    pub fn sqrt_exact(&self) -> Option<RatFunc> {
        let n = self.num.sqrt_exact()?;
        let d = self.den.sqrt_exact()?;
        Some(RatFunc::normalized(n, d))
    }

    pub fn deriv(&self, x: &str) -> RatFunc {
        let n = &(&self.num.deriv(x) * &self.den) - &(&self.num * &self.den.deriv(x));
        RatFunc::reduce(n, &self.den * &self.den)
    }
}

fn subst_poly(p: &Poly, subs: &BTreeMap<String, RatFunc>) -> Result<RatFunc, MathError> {
    let mut acc = RatFunc::zero();
    for (e, c) in p.terms() {
        let mut t = RatFunc::rat(c.clone());
        for (name, &x) in p.vars().iter().zip(e) {
            if x == 0 {
                continue;
            }
            let base = match subs.get(name) {
                Some(r) => r.clone(),
                None => RatFunc::var(name),
            };
            t = &t * &base.pow(x);
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        let den = wrap(&self.den);
        if den.contains('*') && !den.starts_with('(') {
            write!(f, "{}/({den})", wrap(&self.num))
        } else {
            write!(f, "{}/{den}", wrap(&self.num))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for RatFunc {
    type Err = MathError;
    fn from_str(s: &str) -> Result<RatFunc, MathError> {
        parse_ratfunc(s)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<RatFunc, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_ratfunc(&s).map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(RatFunc::int(n.as_i64().unwrap())),
            other => Err(serde::de::Error::custom(format!("expected expression string, got {other}"))),
        }
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

impl From<Rat> for RatFunc {
    fn from(r: Rat) -> RatFunc {
        RatFunc::rat(r)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> RatFunc {
        RatFunc::int(n)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &o.num);
            }
            return RatFunc::reduce(&self.num + &o.num, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&o.num * &a);
        let den = &(&a * &b) * &g;
        RatFunc::reduce(num, den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFunc::normalized(&n1 * &n2, &d1 * &d2)
    }
}

/// Panics on division by zero; see [`RatFunc::checked_div`].
impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o).expect("rational function division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        &self - &o
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, o: RatFunc) -> RatFunc {
        &self / &o
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(it: I) -> RatFunc {
        it.fold(RatFunc::zero(), |a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(r("(k^2 - 1)/(k + 1)"), r("k - 1"));
        assert_eq!(r("1/k + 1/k"), r("2/k"));
        assert_eq!(r("(2*k)/(4*k^2)").to_string(), "1/2/k");
    }

    #[test]
    fn canonical_denominator() {
        assert_eq!(r("1/(2*k)"), r("(1/2)/k"));
        assert_eq!(r("-tau/k").denom(), &Poly::var("k"));
    }

    #[test]
    fn substitution() {
        let mut s = BTreeMap::new();
        s.insert("k".to_string(), r("2*t"));
        assert_eq!(r("1/k + k").substitute(&s).unwrap(), r("(1 + 4*t^2)/(2*t)"));
    }
}
