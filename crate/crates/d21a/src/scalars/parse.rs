//! Textual grammar for scalars: `poly "/" poly` with integer coefficients,
//! `^` for powers and implicit multiplication by adjacency.

use super::poly::{Coef, Parameters, Polynomial};
use super::ratfunc::RationalFunction;
use crate::error::ScalarError;
use num::BigInt;
use std::str::FromStr;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Caret,
    Star,
    Slash,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn next_tok(&mut self) -> Result<Tok, ScalarError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok(Tok::Plus)
            }
            b'-' => {
                self.pos += 1;
                Ok(Tok::Minus)
            }
            b'^' => {
                self.pos += 1;
                Ok(Tok::Caret)
            }
            b'*' => {
                self.pos += 1;
                Ok(Tok::Star)
            }
            b'/' => {
                self.pos += 1;
                Ok(Tok::Slash)
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Tok::Int(BigInt::from_str(s).unwrap()))
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Tok::Ident(s.to_string()))
            }
            _ => Err(ScalarError::Parse(format!("unexpected character `{}`", c as char))),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: Tok,
    params: Parameters,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, params: &Parameters) -> Result<Self, ScalarError> {
        let mut lexer = Lexer::new(src);
        let lookahead = lexer.next_tok()?;
        Ok(Parser { lexer, lookahead, params: params.clone() })
    }

    fn advance(&mut self) -> Result<Tok, ScalarError> {
        let t = std::mem::replace(&mut self.lookahead, self.lexer.next_tok()?);
        Ok(t)
    }

    fn parse_poly(&mut self) -> Result<Polynomial, ScalarError> {
        let mut acc = Polynomial::zero(&self.params);
        let mut sign = 1i64;
        // optional leading sign
        loop {
            match self.lookahead {
                Tok::Plus => {
                    self.advance()?;
                }
                Tok::Minus => {
                    sign = -sign;
                    self.advance()?;
                }
                _ => break,
            }
        }
        loop {
            let term = self.parse_term()?;
            acc = if sign < 0 { acc.sub(&term) } else { acc.add(&term) };
            sign = 1;
            match self.lookahead {
                Tok::Plus => {
                    self.advance()?;
                }
                Tok::Minus => {
                    sign = -1;
                    self.advance()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Polynomial, ScalarError> {
        let mut acc = Polynomial::one(&self.params);
        let mut saw_factor = false;
        loop {
            match self.lookahead.clone() {
                Tok::Int(n) => {
                    self.advance()?;
                    let p = Polynomial::constant(&self.params, Coef::from_integer(n));
                    acc = acc.mul(&p);
                    saw_factor = true;
                }
                Tok::Ident(name) => {
                    self.advance()?;
                    if self.params.index_of(&name).is_none() {
                        return Err(ScalarError::Parse(format!(
                            "unknown parameter `{name}` (context: {:?})",
                            self.params.names()
                        )));
                    }
                    let mut p = Polynomial::var(&self.params, &name);
                    if self.lookahead == Tok::Caret {
                        self.advance()?;
                        match self.advance()? {
                            Tok::Int(e) => {
                                let e: u32 = e.to_string().parse().map_err(|_| {
                                    ScalarError::Parse("exponent too large".into())
                                })?;
                                p = p.pow(e);
                            }
                            t => {
                                return Err(ScalarError::Parse(format!(
                                    "expected integer exponent, found {t:?}"
                                )))
                            }
                        }
                    }
                    acc = acc.mul(&p);
                    saw_factor = true;
                }
                Tok::Star => {
                    self.advance()?;
                }
                _ => break,
            }
        }
        if !saw_factor {
            return Err(ScalarError::Parse("expected a term".into()));
        }
        Ok(acc)
    }
}

pub fn parse_polynomial(src: &str, params: &Parameters) -> Result<Polynomial, ScalarError> {
    let mut p = Parser::new(src, params)?;
    let poly = p.parse_poly()?;
    if p.lookahead != Tok::End {
        return Err(ScalarError::Parse(format!("trailing input near {:?}", p.lookahead)));
    }
    Ok(poly)
}

pub fn parse_rational(src: &str, params: &Parameters) -> Result<RationalFunction, ScalarError> {
    let mut p = Parser::new(src, params)?;
    let num = p.parse_poly()?;
    match p.lookahead {
        Tok::End => Ok(RationalFunction::from_poly(num)),
        Tok::Slash => {
            p.advance()?;
            let den = p.parse_poly()?;
            if p.lookahead != Tok::End {
                return Err(ScalarError::Parse("trailing input after denominator".into()));
            }
            if den.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(RationalFunction::new(num, den))
        }
        ref t => Err(ScalarError::Parse(format!("unexpected token {t:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let p = Parameters::new(&["a"]);
        for s in ["a", "a+1", "2a^2+2", "-a-1", "a^2-1", "1"] {
            let poly = parse_polynomial(s, &p).unwrap();
            let back = parse_polynomial(&format!("{}", poly), &p).unwrap();
            assert_eq!(poly, back);
        }
        let rf = parse_rational("2a^2+2/1-a^2", &p).unwrap();
        let disp = format!("{}", rf);
        let back = parse_rational(&disp, &p).unwrap();
        assert_eq!(rf, back);
    }

    #[test]
    fn rejects_unknown_parameter() {
        let p = Parameters::new(&["a"]);
        assert!(parse_polynomial("b+1", &p).is_err());
    }
}
