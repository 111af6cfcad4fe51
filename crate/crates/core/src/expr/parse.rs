//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' posint)?
//! atom   := rational | var | '(' expr ')'
//!         | 'sum(' var ',' nat ',' var ',' expr ')'
//!         | 'prod(' var ',' nat ',' var ',' expr ')'
//!         | 'H(' var (('+'|'-') nat)? ')' | 'H(' posint ',' var (('+'|'-') nat)? ')'
//! ```
//!
//! Division is only allowed by expressions that fold to a rational function.

use num_bigint::BigInt;
use thiserror::Error;

use super::ast::{index_name, SumExpr};
use crate::algebra::{Field, Poly, Rat, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("scope error at {pos}: {msg}")]
    ScopeError { pos: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::SyntaxError { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    out.push((s.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    /// `n` followed by the bound indices; the last one is in scope.
    scope: Vec<String>,
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::SyntaxError { pos, msg: msg.into() })
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            syntax(self.pos(), format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.bump() {
            Tok::Ident(s) => Ok(s),
            _ => syntax(self.toks[self.at.saturating_sub(1)].0, "expected identifier"),
        }
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(n),
            _ => syntax(pos, "expected natural number"),
        }
    }

    fn small_nat(&mut self) -> Result<u64, ParseError> {
        let pos = self.pos();
        let n = self.nat()?;
        u64::try_from(n).or_else(|_| syntax(pos, "number too large"))
    }

    fn current_var(&self) -> &str {
        self.scope.last().map(String::as_str).unwrap_or_default()
    }

    /// Identifier that must name the variable currently in scope.
    fn bound_var(&mut self) -> Result<(), ParseError> {
        let pos = self.pos();
        let v = self.ident()?;
        self.check_var(pos, &v)
    }

    fn check_var(&self, pos: usize, v: &str) -> Result<(), ParseError> {
        if v == self.current_var() {
            Ok(())
        } else if self.scope[..self.scope.len().saturating_sub(1)].iter().any(|s| s == v) {
            Err(ParseError::ScopeError { pos, msg: format!("variable {v} is not the innermost index") })
        } else {
            Err(ParseError::ScopeError { pos, msg: format!("unknown variable {v}") })
        }
    }

    fn expr(&mut self) -> Result<SumExpr, ParseError> {
        let mut parts = vec![self.term()?];
        loop {
            if self.eat('+') {
                parts.push(self.term()?);
            } else if self.eat('-') {
                let t = self.term()?;
                parts.push(SumExpr::neg(t));
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { SumExpr::plus(parts) })
    }

    fn term(&mut self) -> Result<SumExpr, ParseError> {
        let mut parts = vec![self.unary()?];
        loop {
            if self.eat('*') {
                parts.push(self.unary()?);
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.pos();
                self.bump();
                let d = self.unary()?;
                match d.leaf_value() {
                    Some(r) if !r.is_zero() => parts.push(SumExpr::base(r.inv())),
                    Some(_) => return syntax(pos, "division by zero"),
                    None => return syntax(pos, "divisor must be a rational function"),
                }
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { SumExpr::times(parts) })
    }

    fn unary(&mut self) -> Result<SumExpr, ParseError> {
        if self.eat('-') {
            let e = self.unary()?;
            Ok(SumExpr::neg(e))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<SumExpr, ParseError> {
        let a = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            let k = self.small_nat()?;
            if k == 0 {
                return syntax(pos, "exponent must be positive");
            }
            let k = u32::try_from(k).or_else(|_| syntax(pos, "exponent too large"))?;
            return Ok(SumExpr::power(a, k));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<SumExpr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(SumExpr::Const(Rat::from_integer(n))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) if (name == "sum" || name == "prod") && *self.peek() == Tok::Sym('(') => {
                self.bump();
                let index = self.ident()?;
                self.expect(',')?;
                let lower = self.small_nat()?;
                self.expect(',')?;
                self.bound_var()?;
                self.expect(',')?;
                self.scope.push(index.clone());
                let body = self.expr()?;
                self.scope.pop();
                self.expect(')')?;
                Ok(if name == "sum" { SumExpr::sum(lower, index, body) } else { SumExpr::prod(lower, index, body) })
            }
            Tok::Ident(name) if name == "H" && *self.peek() == Tok::Sym('(') => {
                self.bump();
                let mut order = 1u32;
                if let Tok::Num(_) = self.peek() {
                    let p = self.pos();
                    let o = self.small_nat()?;
                    if o == 0 {
                        return syntax(p, "harmonic order must be positive");
                    }
                    order = u32::try_from(o).or_else(|_| syntax(p, "harmonic order too large"))?;
                    self.expect(',')?;
                }
                self.bound_var()?;
                let mut offset = 0i64;
                if self.eat('+') {
                    offset = self.small_nat()? as i64;
                } else if self.eat('-') {
                    offset = -(self.small_nat()? as i64);
                }
                self.expect(')')?;
                Ok(self.harmonic(order, offset))
            }
            Tok::Ident(v) => {
                self.check_var(pos, &v)?;
                Ok(SumExpr::var())
            }
            Tok::End => syntax(pos, "unexpected end of input"),
            Tok::Sym(c) => syntax(pos, format!("unexpected '{c}'")),
        }
    }

    /// `H(o, v + c)` as `H(o, v)` plus a rational correction; the index is
    /// named by nesting depth.
    fn harmonic(&self, order: u32, offset: i64) -> SumExpr {
        let h = SumExpr::harmonic(order, index_name(self.scope.len() - 1));
        if offset == 0 {
            return h;
        }
        // H(v+c) = H(v) + sum_{j=1}^{c} 1/(v+j)^o; H(v-c) = H(v) - sum_{j=0}^{c-1} 1/(v-j)^o
        let mut corr = RatFunc::zero();
        let term = |j: i64| {
            let p = Poly::from_ints(&[j, 1]).pow(order);
            RatFunc::new(Poly::one(), p)
        };
        if offset > 0 {
            for j in 1..=offset {
                corr = corr.add(&term(j));
            }
        } else {
            for j in 0..-offset {
                corr = corr.sub(&term(-j));
            }
        }
        SumExpr::plus(vec![h, SumExpr::base(corr)])
    }
}

/// Parses an expression whose top-level variable is `n`.
pub fn parse(text: &str) -> Result<SumExpr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, scope: vec!["n".to_string()] };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return syntax(p.pos(), "trailing input");
    }
    Ok(e)
}

/// Parses a rational function of `n`.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc, ParseError> {
    let e = parse(text)?;
    e.leaf_value().ok_or(ParseError::SyntaxError { pos: 0, msg: "expected a rational function of n".into() })
}
