//! Parser for polynomial expressions in `x` with coefficients in `F_q(t)`.
//!
//! Accepted syntax: integers, element literals `[c0,c1,...]`, the variables
//! `t` and `x`, `+ - * / ^`, parentheses, and juxtaposition (`3t`, `2(x+1)`).
//! Division and negative exponents are only allowed for `x`-free operands.
//!
//! ```
//! use prigid::fq::FqField;
//! use prigid::expr::parse_bivariate;
//! let f = FqField::new(7, 1).unwrap();
//! let p = parse_bivariate(&f, "x^3-(1+t)").unwrap();
//! assert_eq!(p.len(), 4);
//! ```

use crate::error::{Error, Result};
use crate::fq::FqField;
use crate::ratfunc::RatFunc;

/// Coefficients of `x^0, x^1, ...`, trailing zeros stripped.
pub type BiPoly = Vec<RatFunc>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Elem(String),
    Var(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = cs[start..i].iter().collect();
                out.push(Tok::Num(lit.parse().map_err(|_| Error::Parse(format!("integer `{lit}` too large")))?));
            }
            '[' => {
                let start = i;
                while i < cs.len() && cs[i] != ']' {
                    i += 1;
                }
                if i == cs.len() {
                    return Err(Error::Parse("unterminated element literal".into()));
                }
                i += 1;
                out.push(Tok::Elem(cs[start..i].iter().collect()));
            }
            't' | 'x' | 'X' => {
                out.push(Tok::Var(c.to_ascii_lowercase()));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    f: &'a FqField,
    toks: Vec<Tok>,
    pos: usize,
}

fn trim(f: &FqField, mut p: BiPoly) -> BiPoly {
    let _ = f;
    while p.last().is_some_and(RatFunc::is_zero) {
        p.pop();
    }
    p
}

fn bi_add(f: &FqField, a: &BiPoly, b: &BiPoly) -> BiPoly {
    let n = a.len().max(b.len());
    let z = RatFunc::from_int(f, 0);
    trim(f, (0..n).map(|i| a.get(i).unwrap_or(&z).add(f, b.get(i).unwrap_or(&z))).collect())
}

fn bi_mul(f: &FqField, a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RatFunc::from_int(f, 0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(f, &x.mul(f, y));
        }
    }
    trim(f, out)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect_op(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Op(d)) if *d == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(Error::Parse(format!("expected `{c}`, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            let rhs = if c == '-' { rhs.iter().map(|r| r.neg(self.f)).collect() } else { rhs };
            acc = bi_add(self.f, &acc, &rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = bi_mul(self.f, &acc, &rhs);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let d = as_scalar(&rhs)?;
                    let inv = d.inv(self.f)?;
                    acc = acc.iter().map(|c| c.mul(self.f, &inv)).collect();
                }
                Some(Tok::Num(_) | Tok::Elem(_) | Tok::Var(_) | Tok::Op('(')) => {
                    let rhs = self.power()?;
                    acc = bi_mul(self.f, &acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BiPoly> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(v.iter().map(|r| r.neg(self.f)).collect());
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let neg = if let Some(Tok::Op('-')) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return Err(Error::Parse("exponent must be an integer".into()));
            };
            self.pos += 1;
            if neg {
                let s = as_scalar(&base)?;
                return Ok(vec![s.pow_signed(self.f, -e)?]);
            }
            let mut acc = vec![RatFunc::from_int(self.f, 1)];
            for _ in 0..e {
                acc = bi_mul(self.f, &acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly> {
        let f = self.f;
        let tok = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        let v = match tok {
            Tok::Num(n) => vec![RatFunc::from_int(f, n)],
            Tok::Elem(s) => vec![RatFunc::constant(f, f.parse_elem(&s)?)],
            Tok::Var('t') => vec![RatFunc::t(f)],
            Tok::Var(_) => vec![RatFunc::from_int(f, 0), RatFunc::from_int(f, 1)],
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect_op(')')?;
                e
            }
            Tok::Op(c) => return Err(Error::Parse(format!("unexpected `{c}`"))),
        };
        Ok(trim(f, v))
    }
}

fn as_scalar(p: &BiPoly) -> Result<RatFunc> {
    match p.len() {
        0 => Err(Error::ZeroElement),
        1 => Ok(p[0].clone()),
        _ => Err(Error::Parse("division by an expression involving x".into())),
    }
}

/// Parses a polynomial in `x` over `F_q(t)`.
pub fn parse_bivariate(f: &FqField, s: &str) -> Result<BiPoly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { f, toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(v)
}

/// Parses an element of `F_q(t)` (an `x`-free expression).
pub fn parse_ratfunc(f: &FqField, s: &str) -> Result<RatFunc> {
    let v = parse_bivariate(f, s)?;
    match v.len() {
        0 => Ok(RatFunc::from_int(f, 0)),
        1 => Ok(v[0].clone()),
        _ => Err(Error::Parse(format!("`{s}` involves x"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let f = FqField::new(7, 1).unwrap();
        let a = parse_ratfunc(&f, "t(1-t)^2").unwrap();
        let t = RatFunc::t(&f);
        let omt = RatFunc::from_int(&f, 1).sub(&f, &t);
        assert_eq!(a, t.mul(&f, &omt.mul(&f, &omt)));
        assert_eq!(parse_ratfunc(&f, "1/t").unwrap(), t.inv(&f).unwrap());
        assert_eq!(parse_ratfunc(&f, "t^-2").unwrap(), t.pow_signed(&f, -2).unwrap());
        assert_eq!(parse_ratfunc(&f, "8t^3").unwrap(), t.pow_signed(&f, 3).unwrap());
        let p = parse_bivariate(&f, "x^3 - (1+t)").unwrap();
        assert_eq!(p[0], RatFunc::from_int(&f, -1).sub(&f, &t));
        assert!(p[1].is_zero() && p[2].is_zero());
        assert!(parse_ratfunc(&f, "x+1").is_err());
        assert!(parse_bivariate(&f, "1/(x+1)").is_err());
        assert!(parse_bivariate(&f, "(t").is_err());
        let g = FqField::new(7, 3).unwrap();
        assert_eq!(parse_ratfunc(&g, "[0,1]").unwrap(), RatFunc::constant(&g, g.generator()));
    }
}
