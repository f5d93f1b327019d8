//! A small expression language for series.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '·') unary)*
//! unary  := '-' unary | atom
//! atom   := INT | INT '/' INT | 'T' ('^' exp)? | '[' element ']' | name | '(' expr ')'
//! exp    := INT | '-' INT | '(' '-'? INT ('/' INT)? ')'
//! name   := 'geometric' | 'zeta' | 'moebius' | 'input' | 'one'
//! ```
//!
//! `T^e` is the monomial at the element `e` of an additive carrier. `[e]`
//! names any element, e.g. `[6]` for `6^-s` or `[xy]` for a word. Numbers are
//! constants times the unit. `moebius` is tabulated up to the window maximum.

use thiserror::Error;

use crate::carriers::CatalogCarrier;
use crate::coeff::{parse_coeff_literal, AnyRing, Ring, RingError};
use crate::finmonoid::{MonoidError, PartialFinitenessMonoid, Window};
use crate::series::{builtins, GenSeries, SeriesError};

#[derive(Debug, Error)]
pub enum ExprError {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("`{0}` is not available here")]
    Unavailable(String),
}

/// Evaluation environment for an expression.
pub struct Context {
    pub monoid: PartialFinitenessMonoid,
    pub ring: AnyRing,
    pub window: Window,
    pub input: Option<GenSeries<AnyRing>>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Elem(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                s.push(chars[i].1);
                i += 1;
            }
            out.push((pos, Tok::Num(s)));
        } else if c.is_alphabetic() {
            let mut s = String::new();
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                s.push(chars[i].1);
                i += 1;
            }
            out.push((pos, Tok::Ident(s)));
        } else if c == '[' {
            let end = chars[i..]
                .iter()
                .position(|&(_, ch)| ch == ']')
                .ok_or(ExprError::Parse {
                    pos,
                    msg: "unclosed `[`".into(),
                })?;
            let s: String = chars[i + 1..i + end].iter().map(|&(_, ch)| ch).collect();
            out.push((pos, Tok::Elem(s)));
            i += end + 1;
        } else if "+-*·^()/−".contains(c) {
            out.push((pos, Tok::Sym(if c == '−' { '-' } else { c })));
            i += 1;
        } else {
            return Err(ExprError::Parse {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ctx: &'a Context,
}

type S = GenSeries<AnyRing>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn num(&mut self) -> Result<String, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(n)
            }
            _ => self.err("expected a number"),
        }
    }

    fn expr(&mut self) -> Result<S, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<S, ExprError> {
        let mut acc = self.unary()?;
        while self.eat('*') || self.eat('·') {
            acc = acc.mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<S, ExprError> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else {
            self.atom()
        }
    }

    fn constant(&self, lit: &str) -> Result<S, ExprError> {
        let c = parse_coeff_literal(&self.ctx.ring, lit)?;
        Ok(GenSeries::monomial(self.ctx.monoid.clone(), self.ctx.ring.clone(), self.ctx.monoid.unit(), c)?)
    }

    fn monomial(&self, elem: &str) -> Result<S, ExprError> {
        let m = self.ctx.monoid.parse_element(elem)?;
        Ok(GenSeries::monomial(self.ctx.monoid.clone(), self.ctx.ring.clone(), m, self.ctx.ring.one())?)
    }

    fn exponent(&mut self) -> Result<String, ExprError> {
        if self.eat('(') {
            let neg = self.eat('-');
            let mut s = self.num()?;
            if self.eat('/') {
                s = format!("{s}/{}", self.num()?);
            }
            self.expect(')')?;
            Ok(if neg { format!("-{s}") } else { s })
        } else if self.eat('-') {
            Ok(format!("-{}", self.num()?))
        } else {
            self.num()
        }
    }

    fn atom(&mut self) -> Result<S, ExprError> {
        let start = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                if self.eat('/') {
                    let d = self.num()?;
                    self.constant(&format!("{n}/{d}"))
                } else {
                    self.constant(&n)
                }
            }
            Some(Tok::Elem(e)) => {
                self.at += 1;
                self.monomial(&e)
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match name.as_str() {
                    "T" => {
                        let additive = matches!(
                            self.ctx.monoid.carrier(),
                            Some(
                                CatalogCarrier::NatUsual
                                    | CatalogCarrier::NatDiscrete
                                    | CatalogCarrier::IntUsual
                                    | CatalogCarrier::IntDiscrete
                                    | CatalogCarrier::RationalGrid
                                    | CatalogCarrier::Truncated(_)
                            )
                        );
                        if !additive {
                            return Err(ExprError::Unavailable(format!(
                                "T over {} (write elements as [e])",
                                self.ctx.monoid.name()
                            )));
                        }
                        let e = if self.eat('^') { self.exponent()? } else { "1".into() };
                        self.monomial(&e)
                    }
                    "one" => Ok(GenSeries::unit_series(self.ctx.monoid.clone(), self.ctx.ring.clone())),
                    "geometric" => Ok(builtins::geometric(self.ctx.monoid.clone(), self.ctx.ring.clone())?),
                    "zeta" => Ok(builtins::zeta(self.ctx.ring.clone())),
                    "moebius" => {
                        let bound = u64::try_from(self.ctx.window.max).unwrap_or(0);
                        Ok(builtins::moebius(self.ctx.ring.clone(), bound)?)
                    }
                    "input" => self.ctx.input.clone().ok_or(ExprError::Unavailable("input".into())),
                    _ => Err(ExprError::Parse {
                        pos: start,
                        msg: format!("unknown name `{name}`"),
                    }),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses and evaluates `src` in `ctx`.
pub fn evaluate(src: &str, ctx: &Context) -> Result<S, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
        ctx,
    };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}
