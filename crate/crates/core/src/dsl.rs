//! Text syntax for symbols and polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := number ['/' number] | 'i' | '(' expr ')'
//!         | 'z' ['^' int] | 'zb' ['^' int] | 'z̄' ['^' int] | '|z|^' int
//! ```
//!
//! `zb` (or `z̄`) is the conjugate variable and `|z|^2s` stands for `z^s zb^s`.
//! Factors may be juxtaposed, so `2z^3zb` and `2*z^3*zb` are the same term.
//! The canonical printed forms of [`MixedSymbol`] and [`AnalyticPoly`] parse
//! back to the same value.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::fock::{AnalyticPoly, MixedSymbol, MixedTerm};
use crate::scalar::{GaussianRational, Rational};

/// A syntax error at a 1-based character column of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}\n  {input}\n  {caret}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
    input: String,
    caret: String,
}

impl ParseError {
    fn new(input: &str, column: usize, message: impl Into<String>) -> Self {
        Self {
            column,
            message: message.into(),
            input: input.to_string(),
            caret: format!("{}^", " ".repeat(column.saturating_sub(1))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Slash,
    I,
    Z,
    Zb,
    AbsZ,
    Caret,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Int(v) => return write!(f, "number {v}"),
            Tok::Slash => "'/'",
            Tok::I => "'i'",
            Tok::Z => "'z'",
            Tok::Zb => "'zb'",
            Tok::AbsZ => "'|z|'",
            Tok::Caret => "'^'",
            Tok::Star => "'*'",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
        };
        f.write_str(s)
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), col));
            continue;
        }
        let tok = match c {
            '/' => Tok::Slash,
            'i' => Tok::I,
            '^' => Tok::Caret,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'z' => {
                if matches!(chars.get(i + 1), Some(&'b') | Some(&'\u{0304}')) {
                    i += 1;
                    Tok::Zb
                } else {
                    Tok::Z
                }
            }
            '|' => {
                if chars.get(i + 1) == Some(&'z') && chars.get(i + 2) == Some(&'|') {
                    i += 2;
                    Tok::AbsZ
                } else {
                    return Err(ParseError::new(input, col, "expected '|z|'"));
                }
            }
            other => {
                return Err(ParseError::new(input, col, format!("unexpected character '{other}'")));
            }
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    analytic: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.input.chars().count() + 1, |(_, c)| *c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.input, self.column(), message)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {t}")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MixedSymbol, ParseError> {
        let mut total = MixedSymbol::zero();
        let mut negative = match self.peek() {
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
        loop {
            let term = self.term()?;
            total = if negative {
                &total + &term.scale(&GaussianRational::from_int(-1))
            } else {
                &total + &term
            };
            negative = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => return Ok(total),
            };
            self.bump();
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_) | Tok::I | Tok::Z | Tok::Zb | Tok::AbsZ | Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<MixedSymbol, ParseError> {
        if !self.starts_factor() {
            return Err(self.unexpected("a term"));
        }
        let mut product = self.factor()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.bump();
                if !self.starts_factor() {
                    return Err(self.unexpected("a factor after '*'"));
                }
            } else if !self.starts_factor() {
                return Ok(product);
            }
            let next = self.factor()?;
            product = multiply(&product, &next);
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.bump();
        self.int_literal("an exponent")
    }

    fn int_literal(&mut self, what: &str) -> Result<u32, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = u32::try_from(v.clone()).map_err(|_| self.error("exponent too large"))?;
                self.bump();
                Ok(v)
            }
            Some(Tok::Minus) => Err(self.error("negative exponents are not allowed")),
            _ => Err(self.unexpected(what)),
        }
    }

    fn factor(&mut self) -> Result<MixedSymbol, ParseError> {
        let one = GaussianRational::from_int(1);
        let col = self.column();
        match self.bump() {
            Some(Tok::Int(num)) => {
                let value = if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let den = match self.bump() {
                        Some(Tok::Int(d)) => d,
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected("a denominator"));
                        }
                    };
                    if den.is_zero() {
                        return Err(ParseError::new(self.input, col, "zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(MixedSymbol::constant(value.into()))
            }
            Some(Tok::I) => Ok(MixedSymbol::constant(GaussianRational::i())),
            Some(Tok::Z) => Ok(MixedSymbol::term(one, self.exponent()?, 0)),
            Some(Tok::Zb) => {
                if self.analytic {
                    return Err(ParseError::new(
                        self.input,
                        col,
                        "a polynomial in z may not contain zb",
                    ));
                }
                Ok(MixedSymbol::term(one, 0, self.exponent()?))
            }
            Some(Tok::AbsZ) => {
                if self.peek() != Some(&Tok::Caret) {
                    return Err(self.unexpected("'^' after '|z|'"));
                }
                self.bump();
                let exp_col = self.column();
                let e = self.int_literal("an exponent")?;
                if e % 2 != 0 {
                    return Err(ParseError::new(self.input, exp_col, "'|z|' needs an even exponent"));
                }
                if self.analytic && e > 0 {
                    return Err(ParseError::new(
                        self.input,
                        col,
                        "a polynomial in z may not contain |z|",
                    ));
                }
                Ok(MixedSymbol::term(one, e / 2, e / 2))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a factor"))
            }
        }
    }
}

fn multiply(x: &MixedSymbol, y: &MixedSymbol) -> MixedSymbol {
    let mut out = MixedSymbol::zero();
    for a in x.terms() {
        for b in y.terms() {
            out.add_term(&a.coeff * &b.coeff, a.p + b.p, a.n + b.n);
        }
    }
    out
}

fn parse(input: &str, analytic: bool) -> Result<MixedSymbol, ParseError> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return Err(ParseError::new(input, 1, "empty expression"));
    }
    let mut parser = Parser {
        input,
        toks,
        pos: 0,
        analytic,
    };
    let value = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return Err(parser.unexpected("'+', '-' or end of input"));
    }
    Ok(value)
}

/// Parses a symbol `Σ c z^p zb^n`; like terms are merged.
pub fn parse_symbol(input: &str) -> Result<MixedSymbol, ParseError> {
    parse(input, false)
}

/// Parses a polynomial in `z` alone.
pub fn parse_poly(input: &str) -> Result<AnalyticPoly, ParseError> {
    let symbol = parse(input, true)?;
    Ok(AnalyticPoly::from_terms(
        symbol.terms().map(|MixedTerm { coeff, p, .. }| (p, coeff)),
    ))
}
