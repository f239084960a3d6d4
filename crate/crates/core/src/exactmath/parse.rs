//! Small expression parser for coefficients given on the command line or in JSON.
//!
//! Grammar: sums and differences of products and quotients of powers, where a
//! power is a number, an identifier or a parenthesized expression raised to a
//! non-negative integer (`^` or `**`).

use super::{MathError, Poly, RatFunc};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
    Pow,
}

fn lex(s: &str) -> Result<Vec<Tok>, MathError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if c == '*' && cs.get(i + 1) == Some(&'*') {
            out.push(Tok::Pow);
            i += 2;
        } else if c == '^' {
            out.push(Tok::Pow);
            i += 1;
        } else if "+-*/()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(MathError::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    src: String,
}

impl Parser {
    fn err(&self, msg: &str) -> MathError {
        MathError::Parse(format!("{msg} in {:?}", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<RatFunc, MathError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, MathError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.unary()?;
            acc = if c == '*' { &acc * &t } else { acc.checked_div(&t)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, MathError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, MathError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Pow) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Op('-')) {
                self.pos += 1;
                true
            } else {
                false
            };
            let e: u32 = match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    n.parse().map_err(|_| self.err("exponent too large"))?
                }
                _ => return Err(self.err("expected integer exponent")),
            };
            let p = base.pow(e);
            return if neg { p.inv() } else { Ok(p) };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, MathError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFunc::rat(n.parse()?))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(RatFunc::var(&v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, MathError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(MathError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, src: s.to_string() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses an expression that must be a polynomial.
pub fn parse_poly(s: &str) -> Result<Poly, MathError> {
    let r = parse_ratfunc(s)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| MathError::Parse(format!("{s:?} is not a polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse_poly("1 + 2*3^2").unwrap(), Poly::int(19));
        assert_eq!(parse_poly("-x^2").unwrap().to_string(), "-x^2");
        assert_eq!(parse_poly("2**3").unwrap(), Poly::int(8));
        assert_eq!(parse_ratfunc("1/2/k").unwrap(), parse_ratfunc("1/(2*k)").unwrap());
    }

    #[test]
    fn errors() {
        assert!(parse_ratfunc("1 +").is_err());
        assert!(parse_ratfunc("(x").is_err());
        assert!(parse_ratfunc("x $ y").is_err());
        assert!(parse_ratfunc("1/(x - x)").is_err());
        assert!(parse_poly("1/x").is_err());
    }
}
