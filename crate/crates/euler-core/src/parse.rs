//! Polynomial expression parsing.
//!
//! Grammar (no implicit multiplication; subtraction desugars to an added
//! negation):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' UINT)?
//! base   := NUMBER | IDENT | '(' expr ')'
//! NUMBER := UINT ('/' UINT)?      (one token, no interior spaces)
//! ```

use std::fmt;

use num::BigInt;

use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::scalar::{CoefficientField, Scalar};

/// Abstract syntax for polynomial expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    /// Unsigned rational literal `numer/denom` (`denom == 1` when the
    /// literal had no slash).
    Num(u64, u64),
    Var(String),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

/// Syntactic slot an expression is being rendered into; decides when
/// parentheses are required for an exact round-trip.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Expr,
    Term,
    Factor,
    Base,
}

impl ExprAst {
    fn needs_parens(&self, slot: Slot) -> bool {
        match slot {
            Slot::Expr => false,
            Slot::Term => matches!(self, ExprAst::Add(..)),
            Slot::Factor => matches!(self, ExprAst::Add(..) | ExprAst::Mul(..)),
            Slot::Base => !matches!(self, ExprAst::Num(..) | ExprAst::Var(_)),
        }
    }

    fn render(&self, slot: Slot, out: &mut String) {
        if self.needs_parens(slot) {
            out.push('(');
            self.render(Slot::Expr, out);
            out.push(')');
            return;
        }
        match self {
            ExprAst::Num(n, d) => {
                if *d == 1 {
                    out.push_str(&n.to_string());
                } else {
                    out.push_str(&format!("{n}/{d}"));
                }
            }
            ExprAst::Var(v) => out.push_str(v),
            ExprAst::Neg(x) => {
                out.push('-');
                x.render(Slot::Factor, out);
            }
            ExprAst::Add(l, r) => {
                l.render(Slot::Expr, out);
                if let ExprAst::Neg(x) = r.as_ref() {
                    out.push_str(" - ");
                    x.render(Slot::Term, out);
                } else {
                    out.push_str(" + ");
                    r.render(Slot::Term, out);
                }
            }
            ExprAst::Mul(l, r) => {
                l.render(Slot::Term, out);
                out.push_str(" * ");
                r.render(Slot::Factor, out);
            }
            ExprAst::Pow(b, k) => {
                b.render(Slot::Base, out);
                out.push_str(&format!("^{k}"));
            }
        }
    }

    /// Evaluates to a polynomial over the named variables.
    pub fn eval(
        &self,
        names: &[String],
        field: CoefficientField,
        order: MonomialOrder,
    ) -> Result<Polynomial> {
        let nvars = names.len();
        match self {
            ExprAst::Num(n, d) => {
                let c = Scalar::from_ratio(&BigInt::from(*n), &BigInt::from(*d), field)?;
                Ok(Polynomial::constant(c, nvars))
            }
            ExprAst::Var(v) => match names.iter().position(|n| n == v) {
                Some(i) => Ok(Polynomial::variable(i, nvars, field)),
                None => Err(Error::UnknownVariable(v.clone())),
            },
            ExprAst::Neg(x) => Ok(x.eval(names, field, order)?.neg()),
            ExprAst::Add(l, r) => {
                Ok(l.eval(names, field, order)?.add(&r.eval(names, field, order)?, order))
            }
            ExprAst::Mul(l, r) => {
                Ok(l.eval(names, field, order)?.mul(&r.eval(names, field, order)?, order))
            }
            ExprAst::Pow(b, k) => Ok(b.eval(names, field, order)?.pow(*k, order)),
        }
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(Slot::Expr, &mut s);
        write!(f, "{s}")
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<u64>().map_err(|_| Error::Parse {
            position: start,
            message: "integer literal too large".to_string(),
        })
    }

    fn parse_ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos || self.src[start].is_ascii_digit() {
            return self.err("expected an identifier");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
    }

    fn parse_expr(&mut self) -> Result<ExprAst> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = ExprAst::Add(Box::new(acc), Box::new(rhs));
                }
                Some(b'-') => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = ExprAst::Add(Box::new(acc), Box::new(ExprAst::Neg(Box::new(rhs))));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<ExprAst> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            let rhs = self.parse_factor()?;
            acc = ExprAst::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<ExprAst> {
        if self.peek() == Some(b'-') {
            self.bump();
            let inner = self.parse_factor()?;
            return Ok(ExprAst::Neg(Box::new(inner)));
        }
        let base = self.parse_base()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let k = self.parse_uint()?;
            let k = u32::try_from(k).map_err(|_| Error::Parse {
                position: self.pos,
                message: "exponent too large".to_string(),
            })?;
            return Ok(ExprAst::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn parse_base(&mut self) -> Result<ExprAst> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint()?;
                // A slash immediately followed by a digit continues the
                // rational literal; anything else is left for the caller.
                if self.src.get(self.pos) == Some(&b'/')
                    && self.src.get(self.pos + 1).is_some_and(|d| d.is_ascii_digit())
                {
                    self.pos += 1;
                    let d = self.parse_uint()?;
                    if d == 0 {
                        return self.err("zero denominator");
                    }
                    Ok(ExprAst::Num(n, d))
                } else {
                    Ok(ExprAst::Num(n, 1))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                Ok(ExprAst::Var(self.parse_ident()?))
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses a complete expression string into an AST.
pub fn parse_expression(src: &str) -> Result<ExprAst> {
    let mut cur = Cursor::new(src);
    let ast = cur.parse_expr()?;
    cur.skip_ws();
    if cur.pos != cur.src.len() {
        return cur.err("trailing input after expression");
    }
    Ok(ast)
}

/// Parses and evaluates an expression over the given variables.
pub fn parse_polynomial(
    src: &str,
    names: &[String],
    field: CoefficientField,
    order: MonomialOrder,
) -> Result<Polynomial> {
    parse_expression(src)?.eval(names, field, order)
}
