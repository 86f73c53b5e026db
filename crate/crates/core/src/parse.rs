//! Polynomial text input.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | variable | '(' expr ')' | ('+'|'-') factor
//! ```

use crate::error::{Error, Result};
use crate::poly::{BiPoly, Poly, TriPoly, BI_VARS, TRI_VARS};
use crate::rat::Rat;
use num_bigint::BigInt;
use num_traits::Zero;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 128;
/// Largest total degree of any intermediate result.
pub const MAX_DEGREE: u32 = 256;
/// Largest number of terms of any intermediate result.
pub const MAX_TERMS: usize = 5_000;
const MAX_DEPTH: usize = 200;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i - start > 4096 {
                return Err(Error::Syntax { pos: start, msg: "integer literal too long".into() });
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if b"+-*^/()".contains(&c) {
            out.push((Tok::Sym(c as char), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser<'a, const N: usize> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    vars: &'a [&'a str; N],
    depth: usize,
}

impl<const N: usize> Parser<'_, N> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.here(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn mul(&self, a: &Poly<N>, b: &Poly<N>) -> Result<Poly<N>> {
        if a.total_degree() + b.total_degree() > MAX_DEGREE {
            return self.err("degree too large");
        }
        if a.len().saturating_mul(b.len()) > 10 * MAX_TERMS {
            return self.err("expression too large");
        }
        let p = a.mul(b);
        if p.len() > MAX_TERMS {
            return self.err("expression too large");
        }
        Ok(p)
    }

    fn pow(&self, base: &Poly<N>, mut e: u32) -> Result<Poly<N>> {
        let mut acc = Poly::one();
        let mut b = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b)?;
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b)?;
            }
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Poly<N>> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.add(&t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.sub(&t);
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<N>> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = self.mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<N>> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.peek() {
                Some(Tok::Int(n)) => n.clone(),
                _ => return self.err("expected a non-negative integer exponent"),
            };
            let e = match u32::try_from(&e) {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return self.err("exponent too large"),
            };
            if base.total_degree().saturating_mul(e) > MAX_DEGREE {
                return self.err("degree too large");
            }
            let p = self.pow(&base, e)?;
            self.pos += 1;
            if self.peek() == Some(&Tok::Sym('^')) {
                return self.err("chained exponent needs parentheses");
            }
            return Ok(p);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<N>> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        let r = match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(Poly::constant(Rat::new(n, d)))
                        }
                        Some(Tok::Int(_)) => self.err("zero denominator"),
                        _ => self.err("expected an integer denominator"),
                    }
                } else {
                    Ok(Poly::constant(Rat::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Poly::var(i))
                }
                None => Err(Error::UnknownVariable { name, pos: self.here() }),
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(Tok::Sym('+')) => {
                self.pos += 1;
                self.factor()
            }
            Some(Tok::Sym(c)) => self.err(&format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        };
        self.depth -= 1;
        r
    }
}

/// Parses a polynomial in the given ordered variables.
pub fn parse_poly<const N: usize>(text: &str, vars: &[&str; N]) -> Result<Poly<N>> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), vars, depth: 0 };
    if p.peek().is_none() {
        return p.err("empty input");
    }
    let r = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(r)
}

/// Parses a polynomial in `x, y`.
pub fn parse_polynomial(text: &str) -> Result<BiPoly> {
    parse_poly(text, &BI_VARS)
}

/// Parses a polynomial in `x, y, t`.
pub fn parse_family(text: &str) -> Result<TriPoly> {
    parse_poly(text, &TRI_VARS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn basic_forms() {
        let f = parse_polynomial("y^2 - x^3").unwrap();
        assert_eq!(f, BiPoly::from_terms([([3, 0], int(-1)), ([0, 2], int(1))]));
        assert!(parse_polynomial("0").unwrap().is_zero());
        let g = parse_polynomial("-3/4*x*(y + 1)^2").unwrap();
        assert_eq!(g.coeff(&[1, 1]), rat(-3, 2));
        assert_eq!(parse_polynomial("-x^2").unwrap().coeff(&[2, 0]), int(-1));
        assert_eq!(parse_polynomial("2^3").unwrap().constant_term(), int(8));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial("y^2 - z") {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "z");
                assert_eq!(pos, 6);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("y^"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_polynomial("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_polynomial("(x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^99999"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("(x + y + 1)^128"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x $ y"), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn round_trip() {
        for s in ["y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7", "7/3 - x*y", "0", "(x - y)^3 * (x + 2*y)"] {
            let p = parse_polynomial(s).unwrap();
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
        }
        let t = parse_family("y^2 - x^2*(x - t)").unwrap();
        assert_eq!(parse_family(&t.to_string()).unwrap(), t);
    }
}
