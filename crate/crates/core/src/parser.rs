//! Text syntax for polynomials, multivectors and forms.
//!
//! ```text
//! expr  := sum
//! sum   := prod (('+' | '-') prod)*
//! prod  := wedge ('*' wedge)*
//! wedge := unary ('^' unary)*
//! unary := '-' unary | atom
//! atom  := RATIONAL | 'x'INT | 'e'INT | 'dx'INT | atom '**' INT | '(' expr ')'
//! ```
//!
//! `RATIONAL` is `INT ('/' INT)?` without spaces. Variables and basis
//! elements are numbered from 1. `*` needs a scalar on at least one side,
//! `^` needs operands of one variance (scalars mix with either), and `**`
//! takes a scalar base. Printing with `Display` gives text that parses back
//! to the same value.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::exterior::{Form, Multivector, MAX_DIM};
use crate::ring::{Polynomial, Rational};

const MAX_NESTING: usize = 200;
const MAX_EXPONENT: u32 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Type,
    IndexOutOfRange,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Type => "type error",
            ParseErrorKind::IndexOutOfRange => "index out of range",
        })
    }
}

/// A parse failure; `position` is a 0-based character offset.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            kind,
            message: message.into(),
        }
    }
}

/// A parsed expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Polynomial),
    Multivector(Multivector),
    Form(Form),
}

impl Value {
    pub fn dim(&self) -> usize {
        match self {
            Value::Scalar(p) => p.dim(),
            Value::Multivector(m) => m.dim(),
            Value::Form(w) => w.dim(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Scalar(p) => p.is_zero(),
            Value::Multivector(m) => m.is_zero(),
            Value::Form(w) => w.is_zero(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Multivector(_) => "multivector",
            Value::Form(_) => "form",
        }
    }

    /// The value as a multivector; scalars become degree 0.
    pub fn into_multivector(self) -> Option<Multivector> {
        match self {
            Value::Scalar(p) => Some(Multivector::scalar(p)),
            Value::Multivector(m) => Some(m),
            Value::Form(w) if w.is_zero() => Some(Multivector::zero(w.dim(), 0)),
            Value::Form(_) => None,
        }
    }

    /// The value as a form; scalars become degree 0.
    pub fn into_form(self) -> Option<Form> {
        match self {
            Value::Scalar(p) => Some(Form::scalar(p)),
            Value::Form(w) => Some(w),
            Value::Multivector(m) if m.is_zero() => Some(Form::zero(m.dim(), 0)),
            Value::Multivector(_) => None,
        }
    }

    /// Zeros and degree-0 fields collapse to scalars.
    pub fn normalized(self) -> Value {
        match self {
            Value::Multivector(m) if m.is_zero() || m.degree() == 0 => {
                Value::Scalar(m.component(crate::Blade::EMPTY))
            }
            Value::Form(w) if w.is_zero() || w.degree() == 0 => {
                Value::Scalar(w.component(crate::Blade::EMPTY))
            }
            v => v,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(p) => p.fmt(f),
            Value::Multivector(m) => m.fmt(f),
            Value::Form(w) => w.fmt(f),
        }
    }
}

/// Fields use the multivector/form schema; scalars serialize as
/// `{"kind":"scalar","dim":N,"value":"<poly>"}`.
impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Scalar(p) => {
                let mut st = s.serialize_struct("Scalar", 3)?;
                st.serialize_field("kind", "scalar")?;
                st.serialize_field("dim", &p.dim())?;
                st.serialize_field("value", &p.to_string())?;
                st.end()
            }
            Value::Multivector(m) => m.serialize(s),
            Value::Form(w) => w.serialize(s),
        }
    }
}

/// Canonical text of a value.
pub fn print_canonical(v: &Value) -> String {
    v.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    X(usize),
    E(usize),
    Dx(usize),
    Plus,
    Minus,
    Star,
    Pow,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |from: usize| {
        let mut j = from;
        while j < chars.len() && chars[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    let index = |start: usize, from: usize| -> std::result::Result<(usize, usize), ParseError> {
        let end = digits(from);
        if end == from {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                from,
                "expected an index after basis or variable name",
            ));
        }
        let s: String = chars[from..end].iter().collect();
        let n = s.parse::<usize>().map_err(|_| {
            ParseError::new(ParseErrorKind::IndexOutOfRange, start, format!("index {s} too large"))
        })?;
        Ok((n, end))
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, start)),
            '-' => out.push((Tok::Minus, start)),
            '^' => out.push((Tok::Caret, start)),
            '(' => out.push((Tok::LParen, start)),
            ')' => out.push((Tok::RParen, start)),
            '*' => {
                if chars.get(i + 1) == Some(&'*') {
                    out.push((Tok::Pow, start));
                    i += 1;
                } else {
                    out.push((Tok::Star, start));
                }
            }
            'x' => {
                let (n, end) = index(start, i + 1)?;
                out.push((Tok::X(n), start));
                i = end;
                continue;
            }
            'e' => {
                let (n, end) = index(start, i + 1)?;
                out.push((Tok::E(n), start));
                i = end;
                continue;
            }
            'd' => {
                if chars.get(i + 1) != Some(&'x') {
                    return Err(ParseError::new(ParseErrorKind::Syntax, i + 1, "expected `dx<i>`"));
                }
                let (n, end) = index(start, i + 2)?;
                out.push((Tok::Dx(n), start));
                i = end;
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut end = digits(i);
                if chars.get(end) == Some(&'/') {
                    let den_end = digits(end + 1);
                    if den_end == end + 1 {
                        return Err(ParseError::new(
                            ParseErrorKind::Syntax,
                            end + 1,
                            "expected a denominator",
                        ));
                    }
                    end = den_end;
                }
                let s: String = chars[i..end].iter().collect();
                let r: Rational = s
                    .parse()
                    .map_err(|e: String| ParseError::new(ParseErrorKind::Syntax, start, e))?;
                out.push((Tok::Num(r), start));
                i = end;
                continue;
            }
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    start,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    dim: usize,
    depth: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(ParseErrorKind::Syntax, self.here(), msg)
    }

    fn sum(&mut self) -> PResult<Value> {
        let mut acc = self.prod()?;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => return Ok(acc),
            };
            let at = self.here();
            self.pos += 1;
            let rhs = self.prod()?;
            acc = add(acc, rhs, negate).map_err(|m| ParseError::new(ParseErrorKind::Type, at, m))?;
        }
    }

    fn prod(&mut self) -> PResult<Value> {
        let mut acc = self.wedge()?;
        while self.peek() == Some(&Tok::Star) {
            let at = self.here();
            self.pos += 1;
            let rhs = self.wedge()?;
            acc = times(acc, rhs).map_err(|m| ParseError::new(ParseErrorKind::Type, at, m))?;
        }
        Ok(acc)
    }

    fn wedge(&mut self) -> PResult<Value> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Caret) {
            let at = self.here();
            self.pos += 1;
            let rhs = self.unary()?;
            acc = wedge(acc, rhs).map_err(|m| ParseError::new(ParseErrorKind::Type, at, m))?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Value> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            self.enter()?;
            let v = self.unary()?;
            self.depth -= 1;
            return Ok(negate(v));
        }
        self.power()
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.syntax("expression nested too deeply"));
        }
        Ok(())
    }

    fn power(&mut self) -> PResult<Value> {
        let base_at = self.here();
        let mut v = self.atom()?;
        while self.peek() == Some(&Tok::Pow) {
            self.pos += 1;
            let exp = match self.peek() {
                Some(Tok::Num(r)) if r.is_integer() && !r.is_negative() => r.clone(),
                _ => return Err(self.syntax("expected a non-negative integer exponent")),
            };
            let exp = u32::try_from(exp.numer())
                .ok()
                .filter(|&k| k <= MAX_EXPONENT)
                .ok_or_else(|| self.syntax(format!("exponent exceeds {MAX_EXPONENT}")))?;
            self.pos += 1;
            v = match v {
                Value::Scalar(p) => Value::Scalar(p.pow(exp)),
                _ => {
                    return Err(ParseError::new(
                        ParseErrorKind::Type,
                        base_at,
                        "`**` needs a scalar base",
                    ))
                }
            };
        }
        Ok(v)
    }

    fn check_index(&self, n: usize, at: usize) -> PResult<usize> {
        if n == 0 || n > self.dim {
            return Err(ParseError::new(
                ParseErrorKind::IndexOutOfRange,
                at,
                format!("index {n} out of range 1..={}", self.dim),
            ));
        }
        Ok(n - 1)
    }

    fn atom(&mut self) -> PResult<Value> {
        let at = self.here();
        let Some(tok) = self.peek().cloned() else {
            return Err(self.syntax("unexpected end of input"));
        };
        self.pos += 1;
        let dim = self.dim;
        Ok(match tok {
            Tok::Num(r) => Value::Scalar(Polynomial::constant(dim, r)),
            Tok::X(n) => Value::Scalar(Polynomial::var(dim, self.check_index(n, at)?)),
            Tok::E(n) => Value::Multivector(Multivector::basis(dim, &[self.check_index(n, at)?])),
            Tok::Dx(n) => Value::Form(Form::basis(dim, &[self.check_index(n, at)?])),
            Tok::LParen => {
                self.enter()?;
                let v = self.sum()?;
                self.depth -= 1;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                v
            }
            _ => {
                self.pos -= 1;
                return Err(self.syntax("expected a number, variable, basis element or `(`"));
            }
        })
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(p) => Value::Scalar(-p),
        Value::Multivector(m) => Value::Multivector(-m),
        Value::Form(w) => Value::Form(-w),
    }
}

fn add(a: Value, b: Value, negate_rhs: bool) -> std::result::Result<Value, String> {
    let b = if negate_rhs { negate(b) } else { b };
    if b.is_zero() {
        return Ok(a);
    }
    if a.is_zero() {
        return Ok(b);
    }
    match (a, b) {
        (Value::Scalar(p), Value::Scalar(q)) => Ok(Value::Scalar(p + q)),
        (Value::Multivector(m), Value::Multivector(n)) if m.degree() == n.degree() => {
            Ok(Value::Multivector(m + n))
        }
        (Value::Form(m), Value::Form(n)) if m.degree() == n.degree() => Ok(Value::Form(m + n)),
        (a, b) if a.kind() == b.kind() || a.kind() == "scalar" || b.kind() == "scalar" => {
            Err("sum of terms of different degrees".into())
        }
        _ => Err("sum mixes multivectors and forms".into()),
    }
}

fn times(a: Value, b: Value) -> std::result::Result<Value, String> {
    match (a, b) {
        (Value::Scalar(p), Value::Scalar(q)) => Ok(Value::Scalar(p * q)),
        (Value::Scalar(p), Value::Multivector(m)) | (Value::Multivector(m), Value::Scalar(p)) => {
            Ok(Value::Multivector(m.scale(&p)))
        }
        (Value::Scalar(p), Value::Form(w)) | (Value::Form(w), Value::Scalar(p)) => {
            Ok(Value::Form(w.scale(&p)))
        }
        _ => Err("`*` needs a scalar operand; use `^` for the wedge product".into()),
    }
}

fn wedge(a: Value, b: Value) -> std::result::Result<Value, String> {
    match (a, b) {
        (Value::Multivector(m), Value::Multivector(n)) => Ok(Value::Multivector(m.wedge(&n))),
        (Value::Form(m), Value::Form(n)) => Ok(Value::Form(m.wedge(&n))),
        (Value::Multivector(_), Value::Form(_)) | (Value::Form(_), Value::Multivector(_)) => {
            Err("wedge of a multivector and a form".into())
        }
        (a, b) => times(a, b),
    }
}

fn parse_raw(text: &str, dim: usize) -> PResult<Value> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        dim,
        depth: 0,
    };
    let v = p.sum()?;
    if p.pos < p.toks.len() {
        return Err(p.syntax("unexpected token"));
    }
    Ok(v)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::Precondition(format!("dim must be in 1..={MAX_DIM}, got {dim}")));
    }
    Ok(())
}

/// Parses an expression in `dim` variables. Zero and degree-0 results are
/// returned as [`Value::Scalar`].
pub fn parse(text: &str, dim: usize) -> Result<Value> {
    check_dim(dim)?;
    Ok(parse_raw(text, dim)?.normalized())
}

/// Parses an expression that must be a polynomial.
pub fn parse_polynomial(text: &str, dim: usize) -> std::result::Result<Polynomial, ParseError> {
    if dim > MAX_DIM {
        return Err(ParseError::new(ParseErrorKind::Syntax, 0, "dimension too large"));
    }
    match parse_raw(text, dim)?.normalized() {
        Value::Scalar(p) => Ok(p),
        v => Err(ParseError::new(
            ParseErrorKind::Type,
            0,
            format!("expected a polynomial, found a {}", v.kind()),
        )),
    }
}

/// Parses a multivector; a scalar is read as degree 0.
pub fn parse_multivector(text: &str, dim: usize) -> Result<Multivector> {
    parse(text, dim)?.into_multivector().ok_or_else(|| {
        ParseError::new(ParseErrorKind::Type, 0, "expected a multivector, found a form").into()
    })
}

/// Parses a form; a scalar is read as degree 0.
pub fn parse_form(text: &str, dim: usize) -> Result<Form> {
    parse(text, dim)?.into_form().ok_or_else(|| {
        ParseError::new(ParseErrorKind::Type, 0, "expected a form, found a multivector").into()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(dim: usize, i: usize) -> Polynomial {
        Polynomial::var(dim, i - 1)
    }

    #[test]
    fn examples() {
        let v = parse("x1*e1 ^ e2", 2).unwrap();
        assert_eq!(v, Value::Multivector(Multivector::basis(2, &[0, 1]).scale(&x(2, 1))));

        let err = match parse("dx1 ^ e1", 2) {
            Err(Error::Parse(e)) => e,
            other => panic!("{other:?}"),
        };
        assert_eq!(err.kind, ParseErrorKind::Type);
        assert_eq!(err.position, 4);

        let v = parse("3/2*x1**2*dx2", 2).unwrap();
        let c = x(2, 1).pow(2).scale(&Rational::new(3, 2));
        assert_eq!(v, Value::Form(Form::basis(2, &[1]).scale(&c)));
    }

    #[test]
    fn canonical_text() {
        let m = -Multivector::basis(2, &[1]);
        assert_eq!(print_canonical(&Value::Multivector(m)), "-1*e2");
        assert_eq!(print_canonical(&Value::Form(Form::zero(3, 2))), "0");
        let m = Multivector::basis(3, &[0, 1]).scale(&x(3, 3))
            + Multivector::basis(3, &[1, 2]).scale(&x(3, 1));
        assert_eq!(m.to_string(), "x3*e1^e2 + x1*e2^e3");
        assert_eq!(parse(&m.to_string(), 3).unwrap(), Value::Multivector(m));
    }

    #[test]
    fn precedence() {
        // ** binds tighter than unary minus
        assert_eq!(parse("-x1**2", 1).unwrap(), Value::Scalar(-x(1, 1).pow(2)));
        assert_eq!(parse("(-x1)**2", 1).unwrap(), Value::Scalar(x(1, 1).pow(2)));
        assert_eq!(parse("2*x1 - 3 + x1", 1).unwrap().to_string(), "3*x1 - 3");
        assert_eq!(parse("e2^e1", 2).unwrap().to_string(), "-1*e1^e2");
        assert_eq!(parse("e1^e1", 2).unwrap(), Value::Scalar(Polynomial::zero(2)));
        assert_eq!(parse("x1^e2", 2).unwrap().to_string(), "x1*e2");
        assert_eq!(parse("e1 ^ e2 * x1", 2).unwrap().to_string(), "x1*e1^e2");
    }

    #[test]
    fn errors() {
        let kind = |s: &str, dim| match parse(s, dim) {
            Err(Error::Parse(e)) => (e.kind, e.position),
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(kind("x3", 2), (ParseErrorKind::IndexOutOfRange, 0));
        assert_eq!(kind("e0", 2), (ParseErrorKind::IndexOutOfRange, 0));
        assert_eq!(kind("x1 +", 2), (ParseErrorKind::Syntax, 4));
        assert_eq!(kind("x1 x2", 2), (ParseErrorKind::Syntax, 3));
        assert_eq!(kind("(x1", 2), (ParseErrorKind::Syntax, 3));
        assert_eq!(kind("e1*e2", 2), (ParseErrorKind::Type, 2));
        assert_eq!(kind("e1 + e1^e2", 2), (ParseErrorKind::Type, 3));
        assert_eq!(kind("e1 + dx1", 2), (ParseErrorKind::Type, 3));
        assert_eq!(kind("e1**2", 2), (ParseErrorKind::Type, 0));
        assert_eq!(kind("x1**-1", 2), (ParseErrorKind::Syntax, 4));
        assert_eq!(kind("1/0", 2), (ParseErrorKind::Syntax, 0));
        assert_eq!(kind("y", 2), (ParseErrorKind::Syntax, 0));
        assert_eq!(kind("", 2), (ParseErrorKind::Syntax, 0));
        assert!(matches!(parse("x1", 0), Err(Error::Precondition(_))));
        let deep = "(".repeat(1000) + "1" + &")".repeat(1000);
        assert_eq!(kind(&deep, 1).0, ParseErrorKind::Syntax);
    }

    #[test]
    fn zero_absorbs_in_sums() {
        assert_eq!(parse("e1 - e1 + 1", 2).unwrap(), Value::Scalar(Polynomial::one(2)));
        assert_eq!(parse("0 + dx1", 2).unwrap(), Value::Form(Form::basis(2, &[0])));
        assert_eq!(parse("0*e1", 2).unwrap(), Value::Scalar(Polynomial::zero(2)));
    }

    #[test]
    fn big_rationals() {
        let v = parse("123456789012345678901234567890/11*x1", 1).unwrap();
        assert_eq!(parse(&v.to_string(), 1).unwrap(), v);
    }
}
