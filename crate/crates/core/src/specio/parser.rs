//! Calculator grammar over `n`: integers, decimals, `+ - * / ^`, parentheses
//! and `log(...)`. Precedence from tightest: `^`, unary minus, `* /`, `+ -`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::ParseError;
use crate::exact::{Rational, RationalFunction};
use crate::logexpr::LogExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Num(Rational),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Log(Box<Expr>),
}

/// Syntax tree node; `pos` is the byte offset of the node's operator or
/// first token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: usize,
}

impl fmt::Display for Expr {
    /// Fully parenthesized prefix form, e.g. `(- 1 (/ 2 (^ n 2)))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Num(q) => write!(f, "{q}"),
            ExprKind::Var => f.write_str("n"),
            ExprKind::Neg(a) => write!(f, "(neg {a})"),
            ExprKind::Add(a, b) => write!(f, "(+ {a} {b})"),
            ExprKind::Sub(a, b) => write!(f, "(- {a} {b})"),
            ExprKind::Mul(a, b) => write!(f, "(* {a} {b})"),
            ExprKind::Div(a, b) => write!(f, "(/ {a} {b})"),
            ExprKind::Pow(a, k) => write!(f, "(^ {a} {k})"),
            ExprKind::Log(a) => write!(f, "(log {a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Var,
    Log,
    Op(char),
    End,
}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part = &text[start..i];
            let mut frac = "";
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let fs = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                frac = &text[fs..i];
            }
            if int_part.is_empty() && frac.is_empty() {
                return Err(err(start, "malformed number"));
            }
            let digits: BigInt = format!("{int_part}{frac}").parse().expect("digits");
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            out.push((Tok::Num(Rational::new(digits, scale)), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            match &text[start..i] {
                "n" => out.push((Tok::Var, start)),
                "log" => out.push((Tok::Log, start)),
                w => return Err(err(start, format!("unknown identifier '{w}'"))),
            }
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or(c);
            return Err(err(i, format!("unexpected character '{ch}'")));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Op(c) {
            self.bump();
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op(c @ ('+' | '-')) => *c,
                _ => return Ok(lhs),
            };
            let (_, pos) = self.bump();
            let rhs = self.term()?;
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            let kind = if op == '+' { ExprKind::Add(a, b) } else { ExprKind::Sub(a, b) };
            lhs = Expr { kind, pos };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Op(c @ ('*' | '/')) => *c,
                _ => return Ok(lhs),
            };
            let (_, pos) = self.bump();
            let rhs = self.unary()?;
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            let kind = if op == '*' { ExprKind::Mul(a, b) } else { ExprKind::Div(a, b) };
            lhs = Expr { kind, pos };
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                let (_, pos) = self.bump();
                let inner = self.unary()?;
                Ok(Expr {
                    kind: ExprKind::Neg(Box::new(inner)),
                    pos,
                })
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        let (_, pos) = self.bump();
        let k = self.exponent()?;
        if *self.peek() == Tok::Op('^') {
            return Err(err(self.pos(), "chained exponents need parentheses"));
        }
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), k),
            pos,
        })
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let paren = *self.peek() == Tok::Op('(');
        if paren {
            self.bump();
        }
        let neg = *self.peek() == Tok::Op('-');
        if neg {
            self.bump();
        }
        let pos = self.pos();
        let k = match self.bump().0 {
            Tok::Num(q) if q.is_integer() => i32::try_from(q.to_integer())
                .map_err(|_| err(pos, "exponent is too large"))?,
            _ => return Err(err(pos, "exponent must be an integer literal")),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -k } else { k })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, pos) = self.bump();
        let kind = match tok {
            Tok::Num(q) => ExprKind::Num(q),
            Tok::Var => ExprKind::Var,
            Tok::Log => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                ExprKind::Log(Box::new(inner))
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                return Ok(inner);
            }
            Tok::End => return Err(err(pos, "unexpected end of input")),
            Tok::Op(c) => return Err(err(pos, format!("unexpected '{c}'"))),
        };
        Ok(Expr { kind, pos })
    }
}

/// Parse text into a syntax tree.
pub fn parse_ast(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

fn first_log(e: &Expr) -> Option<usize> {
    match &e.kind {
        ExprKind::Num(_) | ExprKind::Var => None,
        ExprKind::Log(_) => Some(e.pos),
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => first_log(a),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            first_log(a).or_else(|| first_log(b))
        }
    }
}

fn rational_operand(e: &LogExpr, pos: usize, what: &str) -> Result<RationalFunction, ParseError> {
    e.as_rational()
        .cloned()
        .ok_or_else(|| err(pos, format!("{what} must not contain log")))
}

/// Lower a syntax tree to a log-form expression.
pub fn lower(e: &Expr) -> Result<LogExpr, ParseError> {
    Ok(match &e.kind {
        ExprKind::Num(q) => LogExpr::rational(RationalFunction::constant(q.clone())),
        ExprKind::Var => LogExpr::rational(RationalFunction::var()),
        ExprKind::Neg(a) => lower(a)?.neg(),
        ExprKind::Add(a, b) => lower(a)?.add(&lower(b)?),
        ExprKind::Sub(a, b) => lower(a)?.sub(&lower(b)?),
        ExprKind::Mul(a, b) => {
            let (x, y) = (lower(a)?, lower(b)?);
            if let Some(r) = y.as_rational() {
                x.mul_rational(r)
            } else if let Some(r) = x.as_rational() {
                y.mul_rational(r)
            } else {
                return Err(err(e.pos, "product of two log terms is not supported"));
            }
        }
        ExprKind::Div(a, b) => {
            let d = rational_operand(&lower(b)?, e.pos, "a divisor")?;
            if d.is_zero() {
                return Err(err(e.pos, "zero denominator"));
            }
            lower(a)?.mul_rational(&d.recip().map_err(|_| err(e.pos, "zero denominator"))?)
        }
        ExprKind::Pow(a, k) => {
            let base = rational_operand(&lower(a)?, e.pos, "a power base")?;
            let p = base
                .pow(*k)
                .map_err(|_| err(e.pos, "negative power of zero"))?;
            LogExpr::rational(p)
        }
        ExprKind::Log(a) => {
            if let Some(pos) = first_log(a) {
                return Err(err(pos, "nested log is not supported"));
            }
            let arg = rational_operand(&lower(a)?, a.pos, "a log argument")?;
            LogExpr::log(arg).map_err(|m| err(e.pos, format!("domain error: {m}")))?
        }
    })
}

/// Parse a rational function of `n`.
pub fn parse_ratfunc(text: &str) -> Result<RationalFunction, ParseError> {
    let ast = parse_ast(text)?;
    if let Some(pos) = first_log(&ast) {
        return Err(err(pos, "log is not allowed in a rational function"));
    }
    Ok(lower(&ast)?
        .as_rational()
        .cloned()
        .expect("log-free tree lowers to a rational function"))
}

/// Parse a log-form expression.
pub fn parse_logexpr(text: &str) -> Result<LogExpr, ParseError> {
    lower(&parse_ast(text)?)
}

/// Parse a decimal rational literal such as `"-413/3"`, `"22"` or `"0.25"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let num = |s: &str, off: usize| -> Result<Rational, ParseError> {
        match tokenize(s)?.as_slice() {
            [(Tok::Num(q), _), (Tok::End, _)] => Ok(q.clone()),
            _ => Err(err(off, format!("'{s}' is not a decimal number"))),
        }
    };
    let off = usize::from(neg);
    let q = match body.split_once('/') {
        Some((a, b)) => {
            let d = num(b, off + a.len() + 1)?;
            if d.is_zero() {
                return Err(err(off + a.len() + 1, "zero denominator"));
            }
            num(a, off)? / d
        }
        None => num(body, off)?,
    };
    Ok(if neg { -q } else { q })
}
