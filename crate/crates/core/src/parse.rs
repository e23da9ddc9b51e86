//! Text syntax for polynomials.
//!
//! ```text
//! expr        := ['-'] term (('+' | '-') term)*
//! term        := factor ('*' factor)*
//! factor      := coefficient | var ('^' int)? | '(' expr ')'
//! coefficient := uint ('/' uint)?
//! int         := '-'? uint
//! ```
//!
//! Whitespace is insignificant and there is no implicit multiplication. Over
//! `Q[t, t^-1]` the identifier `t` (unless declared as a variable) is the
//! coefficient symbol and accepts any integer exponent.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Ambient, ExpVec, Poly};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        let start = i;
        match ch {
            c if c.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            other => return Err(Error::parse(start, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ambient: &'a Arc<Ambient>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let at = self.offset();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(Error::parse(at, format!("expected {what}, found {t:?}"))),
            None => Err(Error::parse(at, format!("expected {what}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn signed_int(&mut self) -> Result<i32> {
        let at = self.offset();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Num(n)) => {
                let v: i32 = n.try_into().map_err(|_| Error::parse(at, "exponent out of range"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(Error::parse(at, "expected integer exponent")),
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let at = self.offset();
        let ring = self.ambient.ring;
        match self.bump() {
            Some(Tok::Num(n)) => {
                let c = if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dat = self.offset();
                    match self.bump() {
                        Some(Tok::Num(d)) => ring.from_ratio(&n, &d).map_err(|e| Error::parse(dat, e.to_string()))?,
                        _ => return Err(Error::parse(dat, "expected denominator")),
                    }
                } else {
                    ring.from_bigint(&n)
                };
                Ok(Poly::constant(self.ambient, c))
            }
            Some(Tok::Ident(name)) => {
                let exp = if self.peek() == Some(&Tok::Caret) {
                    self.bump();
                    self.signed_int()?
                } else {
                    1
                };
                if let Some(i) = self.ambient.var_index(&name) {
                    let mut e = ExpVec::zero(self.ambient.nvars());
                    e.0[i] = exp;
                    if exp < 0 && !self.ambient.laurent {
                        return Err(Error::NegativeExponentWithoutLaurent(name));
                    }
                    Ok(Poly::monomial(self.ambient, e, ring.one()))
                } else if name == "t" && ring == Ring::QLaurentT {
                    let c = ring.t_power(exp as i64).expect("laurent ring");
                    Ok(Poly::constant(self.ambient, c))
                } else {
                    Err(Error::UnknownVariable(name))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(t) => Err(Error::parse(at, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` into a canonical polynomial of `ambient`.
pub fn parse_poly(text: &str, ambient: &Arc<Ambient>) -> Result<Poly> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), ambient };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::parse(p.offset(), "trailing input (implicit multiplication is not allowed)"));
    }
    Ok(out)
}

/// Parses a comma-separated list, one polynomial per entry.
pub fn parse_poly_list(text: &str, ambient: &Arc<Ambient>) -> Result<Vec<Poly>> {
    text.split(',').map(|s| parse_poly(s, ambient)).collect()
}
