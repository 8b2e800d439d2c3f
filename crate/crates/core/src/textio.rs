//! Text input and output for expressions.
//!
//! Input grammar (whitespace is insignificant):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | 'i' | var | 'exp' '(' expr ')' | '(' expr ')' | '-' factor
//! var      := 'x' | 'y' | 't' | 'z' | 'zc'
//! rational := int ('/' uint)?
//! ```
//!
//! `zc` is the conjugate `z̄`. Multiplication is always explicit and powers
//! are non-negative integers. The argument of `exp` must reduce to a linear
//! form without constant term, e.g. `exp(x - i*y)` or `exp(-2*t)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    fmt_rational_explicit, Expression, GaussianRational, Term, TermKey, Var, DEFAULT_TERM_CAP,
};
use crate::geometry::Notation;

/// Largest exponent accepted after `^`.
pub const MAX_POWER: u32 = 4096;

/// Byte range `[start, end)` into the parsed string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    NonLinearExponent,
    UnknownVariable,
    NegativePower,
    Overflow,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} (at {}..{})", span.start, span.end)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, span: SourceSpan, message: impl Into<String>) -> Self {
        Self {
            kind,
            span,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
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
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, SourceSpan { start, end: i + 1 }));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("ascii digits");
            out.push((Tok::Int(n), SourceSpan { start, end: i }));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((
                Tok::Ident(src[start..i].to_string()),
                SourceSpan { start, end: i },
            ));
        } else {
            let ch = src[start..].chars().next().unwrap_or('?');
            let end = start + ch.len_utf8();
            return Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                SourceSpan { start, end },
                format!("unexpected character '{ch}'"),
            ));
        }
    }
    out.push((
        Tok::End,
        SourceSpan {
            start: src.len(),
            end: src.len(),
        },
    ));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    /// Fixed by the caller, or by the first coordinate seen when lenient.
    notation: Option<Notation>,
    fixed: bool,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::new(
            ParseErrorKind::UnexpectedToken,
            self.span(),
            format!("expected {expected}, found {}", self.peek()),
        )
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<SourceSpan> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn expr(&mut self) -> PResult<Expression> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Expression> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            let span = self.bump().1;
            let rhs = self.factor()?;
            acc = acc
                .checked_mul(&rhs, DEFAULT_TERM_CAP)
                .map_err(|e| ParseError::new(ParseErrorKind::Overflow, span, e.to_string()))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<Expression> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, span) = self.bump();
        let n = match tok {
            Tok::Int(n) => n,
            Tok::Minus => {
                return Err(ParseError::new(
                    ParseErrorKind::NegativePower,
                    span,
                    "negative powers are not supported",
                ))
            }
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::UnexpectedToken,
                    span,
                    format!("expected a non-negative integer exponent, found {other}"),
                ))
            }
        };
        let n = u32::try_from(&n)
            .ok()
            .filter(|n| *n <= MAX_POWER)
            .ok_or_else(|| {
                ParseError::new(
                    ParseErrorKind::Overflow,
                    span,
                    format!("exponent {n} exceeds {MAX_POWER}"),
                )
            })?;
        base.checked_pow(n, DEFAULT_TERM_CAP)
            .map_err(|e| ParseError::new(ParseErrorKind::Overflow, span, e.to_string()))
    }

    fn base(&mut self) -> PResult<Expression> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Int(num) => {
                let value = if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den, dspan) = self.bump();
                    let Tok::Int(den) = den else {
                        return Err(ParseError::new(
                            ParseErrorKind::UnexpectedToken,
                            dspan,
                            format!("expected a denominator, found {den}"),
                        ));
                    };
                    if den.is_zero() {
                        return Err(ParseError::new(
                            ParseErrorKind::UnexpectedToken,
                            dspan,
                            "zero denominator",
                        ));
                    }
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(num)
                };
                Ok(Expression::constant(value.into()))
            }
            Tok::Minus => Ok(-self.factor()?),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => self.ident(&name, span),
            other => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                span,
                format!("expected a number, coordinate, 'exp' or '(', found {other}"),
            )),
        }
    }

    fn ident(&mut self, name: &str, span: SourceSpan) -> PResult<Expression> {
        let (var, notation) = match name {
            "i" => return Ok(Expression::constant(GaussianRational::i())),
            "exp" => return self.exp_call(span),
            "t" => return Ok(Expression::var(Var::T)),
            "x" => (Var::U, Notation::Real),
            "y" => (Var::V, Notation::Real),
            "z" => (Var::U, Notation::Complex),
            "zc" => (Var::V, Notation::Complex),
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::UnknownVariable,
                    span,
                    format!("unknown identifier '{other}'"),
                ))
            }
        };
        match self.notation {
            Some(n) if n != notation => {
                let msg = if self.fixed {
                    format!("'{name}' is not a coordinate of this geometry")
                } else {
                    format!("'{name}' mixes real (x, y) and complex (z, zc) coordinates")
                };
                Err(ParseError::new(ParseErrorKind::UnknownVariable, span, msg))
            }
            _ => {
                self.notation = Some(notation);
                Ok(Expression::var(var))
            }
        }
    }

    fn exp_call(&mut self, name_span: SourceSpan) -> PResult<Expression> {
        self.expect(Tok::LParen, "'(' after exp")?;
        let arg = self.expr()?;
        let close = self.expect(Tok::RParen, "')'")?;
        let span = SourceSpan {
            start: name_span.start,
            end: close.end,
        };
        let mut w = [
            GaussianRational::zero(),
            GaussianRational::zero(),
            GaussianRational::zero(),
        ];
        for (key, c) in arg.iter() {
            let degree = key.a + key.b + key.d;
            if !key.is_polynomial() || degree != 1 {
                let what = if key.is_constant() {
                    "a constant offset"
                } else {
                    "a non-linear term"
                };
                return Err(ParseError::new(
                    ParseErrorKind::NonLinearExponent,
                    span,
                    format!("exp argument contains {what}; only linear forms in the coordinates are supported"),
                ));
            }
            let slot = if key.a == 1 {
                0
            } else if key.b == 1 {
                1
            } else {
                2
            };
            w[slot] = c.clone();
        }
        let [p, q, s] = w;
        Ok(Expression::exponential(p, q, s))
    }
}

fn run_parser(src: &str, notation: Option<Notation>) -> Result<Expression, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        notation,
        fixed: notation.is_some(),
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

/// Parses an expression, accepting either `x, y` or `z, zc` (not both).
pub fn parse(src: &str) -> Result<Expression, ParseError> {
    run_parser(src, None)
}

/// Parses an expression whose coordinates must match `notation`.
pub fn parse_with(src: &str, notation: Notation) -> Result<Expression, ParseError> {
    run_parser(src, Some(notation))
}

/// Output formats of [`render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Readable layout; not meant to be re-parsed.
    Human,
    /// Deterministic text that parses back to the identical expression.
    Canonical,
    /// `{"terms":[{"coeff":…,"pow":[a,b,d],"exp":[p,q,s]}]}`.
    Json,
}

pub fn render(f: &Expression, format: Format) -> String {
    render_with(f, format, Notation::Real)
}

pub fn render_with(f: &Expression, format: Format, notation: Notation) -> String {
    match format {
        Format::Canonical => render_canonical(f, notation),
        Format::Human => render_human(f, notation),
        Format::Json => serde_json::to_string(&JsonExpression::from(f)).expect("serializable"),
    }
}

fn var_name(v: Var, notation: Notation, human: bool) -> &'static str {
    match (v, notation) {
        (Var::T, _) => "t",
        (Var::U, Notation::Real) => "x",
        (Var::V, Notation::Real) => "y",
        (Var::U, Notation::Complex) => "z",
        (Var::V, Notation::Complex) => {
            if human {
                "z̄"
            } else {
                "zc"
            }
        }
    }
}

/// Joins signed pieces as `a + b - c`, folding a leading '-' into the operator.
fn join_signed(pieces: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for (k, p) in pieces.into_iter().enumerate() {
        if k == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

fn scaled(c: &GaussianRational, body: &str, sep: &str) -> String {
    if body.is_empty() {
        c.to_string()
    } else if c.is_one() {
        body.to_string()
    } else if *c == -GaussianRational::one() {
        format!("-{body}")
    } else {
        format!("{c}{sep}{body}")
    }
}

fn exp_argument(key: &TermKey, notation: Notation, human: bool) -> String {
    let sep = if human { "" } else { "*" };
    join_signed(
        Var::ALL
            .iter()
            .filter(|v| !key.weight(**v).is_zero())
            .map(|v| scaled(key.weight(*v), var_name(*v, notation, human), sep)),
    )
}

fn render_canonical(f: &Expression, notation: Notation) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    join_signed(f.iter().map(|(key, c)| {
        let mut factors = Vec::new();
        for v in Var::ALL {
            match key.power(v) {
                0 => {}
                1 => factors.push(var_name(v, notation, false).to_string()),
                n => factors.push(format!("{}^{n}", var_name(v, notation, false))),
            }
        }
        if !key.is_polynomial() {
            factors.push(format!("exp({})", exp_argument(key, notation, false)));
        }
        scaled(c, &factors.join("*"), "*")
    }))
}

fn render_human(f: &Expression, notation: Notation) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    join_signed(f.iter().map(|(key, c)| {
        let mut factors = Vec::new();
        for v in Var::ALL {
            match key.power(v) {
                0 => {}
                1 => factors.push(var_name(v, notation, true).to_string()),
                n => factors.push(format!("{}^{n}", var_name(v, notation, true))),
            }
        }
        if !key.is_polynomial() {
            factors.push(format!("e^({})", exp_argument(key, notation, true)));
        }
        scaled(c, &factors.join(" "), " ")
    }))
}

/// Rational pair used by the JSON format; both parts are spelled `num/den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGaussian {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: JsonGaussian,
    pub pow: [u32; 3],
    pub exp: [JsonGaussian; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonExpression {
    pub terms: Vec<JsonTerm>,
}

impl From<&GaussianRational> for JsonGaussian {
    fn from(c: &GaussianRational) -> Self {
        Self {
            re: fmt_rational_explicit(c.re()),
            im: fmt_rational_explicit(c.im()),
        }
    }
}

impl From<&Expression> for JsonExpression {
    fn from(f: &Expression) -> Self {
        Self {
            terms: f
                .iter()
                .map(|(k, c)| JsonTerm {
                    coeff: c.into(),
                    pow: [k.a, k.b, k.d],
                    exp: [(&k.p).into(), (&k.q).into(), (&k.s).into()],
                })
                .collect(),
        }
    }
}

fn parse_rational_str(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

impl JsonGaussian {
    fn to_gaussian(&self) -> Option<GaussianRational> {
        Some(GaussianRational::new(
            parse_rational_str(&self.re)?,
            parse_rational_str(&self.im)?,
        ))
    }
}

impl JsonExpression {
    pub fn to_expression(&self) -> Option<Expression> {
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let [p, q, s] = &t.exp;
            let key = TermKey::monomial(t.pow[0], t.pow[1], t.pow[2]).with_exp(
                p.to_gaussian()?,
                q.to_gaussian()?,
                s.to_gaussian()?,
            );
            raw.push(Term::new(t.coeff.to_gaussian()?, key));
        }
        Some(Expression::normalize(raw))
    }
}
