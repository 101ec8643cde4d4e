//! Parser for the polynomial text grammar.
//!
//! Terms are joined by `+`/`-`; a term is an optional coefficient followed by
//! `*`-separated variable powers like `X^3`; variables are ASCII identifiers;
//! whitespace is insignificant. Coefficients are integers, or `num/den`
//! fractions when the ambient field is the rationals. Example: `X^2 - Y*Z^2`.

use num_bigint::BigInt;
use std::fmt;
use std::sync::Arc;

use crate::field::FieldSpec;
use crate::monomial::Monomial;
use crate::poly::{Ambient, Polynomial};

/// A parse failure with the byte offset where it happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                toks.push((start, Tok::Int(text.parse().unwrap())));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => {
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character `{}`", src[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    ambient: &'a Arc<Ambient>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: message.into(),
        }
    }

    /// varpow := Ident ('^' Int)?
    fn var_power(&mut self) -> Result<(usize, u32), ParseError> {
        let offset = self.offset();
        let name = match self.bump() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => {
                return Err(ParseError {
                    offset,
                    message: "expected a variable".into(),
                })
            }
        };
        let index = self.ambient.var_index(&name).ok_or(ParseError {
            offset,
            message: format!("undeclared variable `{name}`"),
        })?;
        let mut exp = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    exp = u32::try_from(n.clone()).map_err(|_| ParseError {
                        offset: self.toks[self.pos - 1].0,
                        message: "exponent out of range".into(),
                    })?;
                }
                _ => {
                    return Err(ParseError {
                        offset: self
                            .toks
                            .get(self.pos - 1)
                            .map(|(o, _)| *o)
                            .unwrap_or(self.end),
                        message: "expected an exponent after `^`".into(),
                    })
                }
            }
        }
        Ok((index, exp))
    }

    /// term := coefficient ('*'? varpow ('*' varpow)*)? | varpow ('*' varpow)*
    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let field = &self.ambient.field;
        let mut coeff = field.one();
        let mut saw_coeff = false;
        if let Some(Tok::Int(_)) = self.peek() {
            let n = match self.bump() {
                Some(Tok::Int(n)) => n.clone(),
                _ => unreachable!(),
            };
            saw_coeff = true;
            if self.peek() == Some(&Tok::Slash) {
                let slash_at = self.offset();
                self.bump();
                let den = match self.bump() {
                    Some(Tok::Int(d)) => d.clone(),
                    _ => {
                        return Err(ParseError {
                            offset: slash_at,
                            message: "expected a denominator after `/`".into(),
                        })
                    }
                };
                if matches!(field, FieldSpec::Prime(_)) {
                    return Err(ParseError {
                        offset: slash_at,
                        message: "coefficient not in field: fractions need the rationals".into(),
                    });
                }
                coeff = field.from_ratio(&n, &den).map_err(|e| ParseError {
                    offset: slash_at,
                    message: e.to_string(),
                })?;
            } else {
                coeff = field.from_bigint(&n);
            }
            if self.peek() == Some(&Tok::Star) {
                self.bump();
            }
        }
        let mut exponents = vec![0u32; self.ambient.arity()];
        let mut saw_var = false;
        if matches!(self.peek(), Some(Tok::Ident(_))) {
            loop {
                let (i, e) = self.var_power()?;
                exponents[i] = exponents[i].checked_add(e).ok_or_else(|| ParseError {
                    offset: self.offset(),
                    message: "exponent out of range".into(),
                })?;
                saw_var = true;
                if self.peek() == Some(&Tok::Star) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        if !saw_coeff && !saw_var {
            return Err(self.err("expected a term"));
        }
        Ok(Polynomial::monomial(
            self.ambient,
            Monomial::new(exponents),
            coeff,
        ))
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.bump();
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t).expect("same ambient");
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t).expect("same ambient");
                }
                None => break,
                Some(_) => return Err(self.err("expected `+`, `-`, or end of input")),
            }
        }
        Ok(acc)
    }
}

/// Parses a polynomial in the text grammar against a fixed ambient ring.
pub fn polynomial(src: &str, ambient: &Arc<Ambient>) -> Result<Polynomial, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ParseError {
            offset: 0,
            message: "empty polynomial".into(),
        });
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: src.len(),
        ambient,
    };
    let poly = p.polynomial()?;
    if p.pos < toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}
