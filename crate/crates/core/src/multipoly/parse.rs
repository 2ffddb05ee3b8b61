//! Expression parser for polynomial text.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := nat ('/' nat)? | ident | '(' expr ')'
//! ```
//!
//! Identifiers resolve to ring variables first, then to the coefficient
//! field generator. Errors carry the byte offset of the offending token.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactfield::Rational;

use super::poly::Polynomial;
use super::ring::PolyRing;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                toks.push((Tok::Num(n), start));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(src[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{}`", src[i..].chars().next().unwrap()),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    toks: Vec<(Tok, usize)>,
    i: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(_, p)| *p).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(t, _)| t.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let b = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e = u32::try_from(&n).map_err(|_| Error::Parse {
                        pos,
                        msg: format!("exponent {n} does not fit in 32 bits"),
                    })?;
                    return b.pow(e);
                }
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected an integer exponent after `^`".into(),
                    })
                }
            }
        }
        Ok(b)
    }

    fn base(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Num(d)) => {
                            let r = Rational::new(n, d).map_err(|_| Error::Parse {
                                pos: dpos,
                                msg: "zero denominator".into(),
                            })?;
                            Ok(Polynomial::constant_rational(self.ring, r))
                        }
                        _ => Err(Error::Parse {
                            pos: dpos,
                            msg: "expected an integer denominator after `/`".into(),
                        }),
                    }
                } else {
                    Ok(Polynomial::constant_rational(
                        self.ring,
                        Rational::new(n, BigInt::from(1)).expect("unit denominator"),
                    ))
                }
            }
            Some(Tok::Ident(name)) => {
                if let Some(idx) = self.ring.var_index(&name) {
                    return Polynomial::var(self.ring, idx);
                }
                let field = self.ring.field();
                if !field.is_rationals() && name == field.generator_name() {
                    return Polynomial::constant(self.ring, field.generator());
                }
                Err(Error::UnknownVariable { name })
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(t) => Err(Error::Parse {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(Error::Parse {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

impl PolyRing {
    /// Parse an expression into a polynomial in this ring.
    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        let toks = lex(src)?;
        if toks.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty input".into(),
            });
        }
        let mut p = Parser {
            ring: self,
            toks,
            i: 0,
            len: src.len(),
        };
        let poly = p.expr()?;
        if p.i != p.toks.len() {
            return Err(p.err("trailing input after expression"));
        }
        Ok(poly)
    }

    /// Parse several expressions at once.
    pub fn parse_all(&self, srcs: &[&str]) -> Result<Vec<Polynomial>> {
        srcs.iter().map(|s| self.parse(s)).collect()
    }
}
