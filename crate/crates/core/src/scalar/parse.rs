//! Infix parser for the coefficient grammar:
//! `+ - * / ^`, integer literals, variables `x y z`, and `exp( ) sin( ) cos( )`
//! applied to homogeneous linear forms. Whitespace is insignificant.

use std::fmt;

use num::BigInt;

use super::{Rational, ScalarExpr, COORD_NAMES};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column inside the expression text.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(src: &str) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
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
            if i < chars.len() && chars[i] == '.' {
                return Err(ParseError {
                    column: i + 1,
                    message: "decimal literals are not allowed; write a rational a/b".into(),
                });
            }
            let n: BigInt = digits.parse().map_err(|_| ParseError {
                column: col,
                message: format!("bad integer literal `{digits}`"),
            })?;
            toks.push((Tok::Int(n), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        toks.push((tok, col));
        i += 1;
    }
    Ok(Lexer {
        toks,
        end: chars.len() + 1,
    })
}

struct Parser {
    lexer: Lexer,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.lexer.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.lexer
            .toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.lexer.end)
    }

    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.lexer.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let col = self.column();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => self.err(col, format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let col = self.column();
                    let rhs = self.unary()?;
                    acc = match acc.try_div(&rhs) {
                        Ok(q) => q,
                        Err(e) => return self.err(col, e.to_string()),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarExpr, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ScalarExpr, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let col = self.column();
        let parenthesized = self.peek() == Some(&Tok::LParen);
        if parenthesized {
            self.bump();
        }
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let n = match self.bump() {
            Some(Tok::Int(n)) => n,
            _ => return self.err(col, "exponent must be an integer literal"),
        };
        if parenthesized {
            self.expect(Tok::RParen, "`)` after exponent")?;
        }
        let n: i64 = match i64::try_from(&n) {
            Ok(v) if v <= 64 => v,
            _ => return self.err(col, "exponent too large"),
        };
        let n = if negative { -n } else { n };
        base.powi(n).or_else(|e| self.err(col, e.to_string()))
    }

    fn primary(&mut self) -> Result<ScalarExpr, ParseError> {
        let col = self.column();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(ScalarExpr::constant(Rational::from_integer(n))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if let Some(coord) = COORD_NAMES.iter().position(|c| *c == name) {
                    return Ok(ScalarExpr::var(coord));
                }
                if !matches!(name.as_str(), "exp" | "sin" | "cos") {
                    return self.err(
                        col,
                        format!("unknown identifier `{name}`; expected x, y, z, exp, sin or cos"),
                    );
                }
                self.expect(Tok::LParen, &format!("`(` after `{name}`"))?;
                let arg_col = self.column();
                let arg = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                let lin = match arg.as_linear() {
                    Some(lin) => lin,
                    None if arg.is_canonical_zero() => super::Linear::zero(),
                    None => {
                        return self.err(
                            arg_col,
                            format!(
                                "argument of `{name}` must be a rational-linear combination of x, y, z without constant term"
                            ),
                        )
                    }
                };
                Ok(match name.as_str() {
                    "exp" => ScalarExpr::exp(lin),
                    "sin" => ScalarExpr::sin(&lin),
                    _ => ScalarExpr::cos(&lin),
                })
            }
            Some(_) => self.err(col, "expected a number, variable, function or `(`"),
            None => self.err(col, "unexpected end of expression"),
        }
    }
}

pub(super) fn parse(src: &str) -> Result<ScalarExpr, ParseError> {
    let lexer = lex(src)?;
    let mut p = Parser { lexer, pos: 0 };
    if p.peek().is_none() {
        return p.err(1, "empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        let col = p.column();
        return p.err(col, "unexpected trailing input");
    }
    Ok(e)
}
