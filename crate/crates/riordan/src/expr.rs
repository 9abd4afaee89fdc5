//! A small expression language for stating `g(x)` and `f(x)` exactly.
//!
//! Grammar (whitespace insignificant, byte offsets reported in errors):
//!
//! ```text
//! expr   := term   (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' ('-')? integer)?
//! atom   := integer | 'x' | '(' expr ')' | func '(' expr ')'
//! func   := 'sqrt' | 'rev' | 'deriv' | 'catalan'
//! ```
//!
//! Rational constants are written as quotients (`1/2`), which the ordinary
//! division rule already handles. `rev` is compositional reversion, `deriv`
//! the derivative, and `catalan` the generating function of the Catalan
//! numbers `c(u) = (1 - sqrt(1 - 4u)) / (2u)` composed with its argument;
//! the removable singularity at `u = 0` is built in. Unary minus binds
//! looser than `^`, so `-x^2` is `-(x^2)`.
//!
//! Evaluation is at a caller-supplied precision; internal padding hides the
//! precision loss of `deriv` and of exact cancellations such as `x^2/x`, so
//! a successful evaluation always has exactly the requested precision.

use std::fmt;

use num::BigInt;

use crate::rational::{rat, Rat};
use crate::series::{Series, SeriesError};

/// Byte range of a subexpression within the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// Parsed expression; spans refer to the original source text.
#[derive(Debug, Clone)]
pub struct ExprAst {
    kind: AstKind,
    span: Span,
}

#[derive(Debug, Clone, PartialEq)]
enum AstKind {
    Number(Rat),
    X,
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Pow(Box<ExprAst>, i64),
    Sqrt(Box<ExprAst>),
    Rev(Box<ExprAst>),
    Deriv(Box<ExprAst>),
    Catalan(Box<ExprAst>),
}

/// Structural equality; spans are ignored so that reparsing printed output
/// compares equal to the original parse.
impl PartialEq for ExprAst {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl ExprAst {
    pub fn span(&self) -> Span {
        self.span
    }

    fn node(kind: AstKind, start: usize, end: usize) -> ExprAst {
        ExprAst { kind, span: Span { start, end } }
    }

    /// Static worst-case precision loss: one order per `deriv` node.
    fn deriv_count(&self) -> usize {
        match &self.kind {
            AstKind::Number(_) | AstKind::X => 0,
            AstKind::Add(a, b) | AstKind::Sub(a, b) | AstKind::Mul(a, b) | AstKind::Div(a, b) => {
                a.deriv_count() + b.deriv_count()
            }
            AstKind::Neg(a) | AstKind::Pow(a, _) | AstKind::Sqrt(a) | AstKind::Rev(a)
            | AstKind::Catalan(a) => a.deriv_count(),
            AstKind::Deriv(a) => a.deriv_count() + 1,
        }
    }
}

/// Parse or evaluation failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    /// Malformed input; `offset` is the byte position of the problem.
    Syntax { offset: usize, message: String },
    /// A series operation failed; `span` marks the offending subexpression.
    Eval { span: Span, source: SeriesError },
}

impl ExprError {
    /// Render the error with the offending snippet quoted from `text`.
    pub fn annotate(&self, text: &str) -> String {
        match self {
            ExprError::Syntax { .. } => self.to_string(),
            ExprError::Eval { span, source } => {
                let snippet = text.get(span.start..span.end).unwrap_or("?");
                format!("in `{snippet}`: {source}")
            }
        }
    }
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { offset, message } => {
                write!(f, "syntax error at offset {offset}: {message}")
            }
            ExprError::Eval { span, source } => {
                write!(f, "error in subexpression at bytes {}..{}: {source}", span.start, span.end)
            }
        }
    }
}

impl std::error::Error for ExprError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            ExprError::Syntax { .. } => None,
            ExprError::Eval { source, .. } => Some(source),
        }
    }
}

// ---------------------------------------------------------------- lexer ----

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ExprError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let tok = match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => { i += 1; Tok::Plus }
            b'-' => { i += 1; Tok::Minus }
            b'*' => { i += 1; Tok::Star }
            b'/' => { i += 1; Tok::Slash }
            b'^' => { i += 1; Tok::Caret }
            b'(' => { i += 1; Tok::LParen }
            b')' => { i += 1; Tok::RParen }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Num(text[start..i].parse().expect("digit run parses"))
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            _ => {
                return Err(ExprError::Syntax {
                    offset: i,
                    message: format!("unexpected character {:?}", text[i..].chars().next().unwrap()),
                });
            }
        };
        toks.push((tok, Span { start, end: i }));
    }
    Ok(toks)
}

// --------------------------------------------------------------- parser ----

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, s)| s.start)
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> ExprError {
        ExprError::Syntax { offset: self.here(), message: message.into() }
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), Tok::describe)
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => AstKind::Add as fn(_, _) -> _,
                Some(Tok::Minus) => AstKind::Sub as fn(_, _) -> _,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = Span { start: lhs.span.start, end: rhs.span.end };
            lhs = ExprAst { kind: op(Box::new(lhs), Box::new(rhs)), span };
        }
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => AstKind::Mul as fn(_, _) -> _,
                Some(Tok::Slash) => AstKind::Div as fn(_, _) -> _,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            let span = Span { start: lhs.span.start, end: rhs.span.end };
            lhs = ExprAst { kind: op(Box::new(lhs), Box::new(rhs)), span };
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ExprError> {
        if let Some(Tok::Minus) = self.peek() {
            let (_, sp) = self.bump();
            let inner = self.factor()?;
            let end = inner.span.end;
            return Ok(ExprAst::node(AstKind::Neg(Box::new(inner)), sp.start, end));
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let exponent = self.exponent()?;
            let span = Span { start: base.span.start, end: self.prev_end() };
            return Ok(ExprAst { kind: AstKind::Pow(Box::new(base), exponent), span });
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ExprError> {
        let negative = matches!(self.peek(), Some(Tok::Minus));
        if negative {
            self.bump();
        }
        match self.peek() {
            Some(Tok::Num(_)) => {
                let (Tok::Num(n), _) = self.bump() else { unreachable!() };
                let magnitude: i64 = n
                    .try_into()
                    .map_err(|_| self.err("exponent out of range"))?;
                Ok(if negative { -magnitude } else { magnitude })
            }
            _ => Err(self.err(format!("expected an integer exponent, found {}", self.found()))),
        }
    }

    fn atom(&mut self) -> Result<ExprAst, ExprError> {
        match self.peek() {
            Some(Tok::Num(_)) => {
                let (Tok::Num(n), sp) = self.bump() else { unreachable!() };
                Ok(ExprAst::node(AstKind::Number(Rat::from(n)), sp.start, sp.end))
            }
            Some(Tok::LParen) => {
                let (_, sp) = self.bump();
                let inner = self.expr()?;
                self.close_paren()?;
                Ok(ExprAst { kind: inner.kind, span: Span { start: sp.start, end: self.prev_end() } })
            }
            Some(Tok::Ident(name)) => {
                let ctor: fn(Box<ExprAst>) -> AstKind = match name.as_str() {
                    "x" => {
                        let (_, sp) = self.bump();
                        return Ok(ExprAst::node(AstKind::X, sp.start, sp.end));
                    }
                    "sqrt" => AstKind::Sqrt,
                    "rev" => AstKind::Rev,
                    "deriv" => AstKind::Deriv,
                    "catalan" => AstKind::Catalan,
                    other => {
                        let msg = format!(
                            "unknown function '{other}' (expected sqrt, rev, deriv, or catalan)"
                        );
                        return Err(self.err(msg));
                    }
                };
                let (_, sp) = self.bump();
                match self.peek() {
                    Some(Tok::LParen) => self.bump(),
                    _ => return Err(self.err(format!("expected '(', found {}", self.found()))),
                };
                let inner = self.expr()?;
                self.close_paren()?;
                Ok(ExprAst::node(ctor(Box::new(inner)), sp.start, self.prev_end()))
            }
            _ => Err(self.err(format!(
                "expected a number, 'x', '(', or a function name, found {}",
                self.found()
            ))),
        }
    }

    fn close_paren(&mut self) -> Result<(), ExprError> {
        match self.peek() {
            Some(Tok::RParen) => {
                self.bump();
                Ok(())
            }
            _ => Err(self.err(format!("expected ')', found {}", self.found()))),
        }
    }

    /// End offset (exclusive) of the most recently consumed token.
    fn prev_end(&self) -> usize {
        self.toks[self.pos - 1].1.end
    }
}

/// Parse `text` into an AST. Errors carry the byte offset of the problem.
pub fn parse(text: &str) -> Result<ExprAst, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err(format!("expected end of input, found {}", p.found())));
    }
    Ok(ast)
}

// ------------------------------------------------------------ evaluation ----

/// The Catalan number generating function at the given precision.
fn catalan_series(precision: usize) -> Series {
    let root = Series::from_ints(&[1, -4], precision + 1).sqrt().expect("1-4x has a square root");
    Series::one(precision + 1)
        .sub(&root)
        .shift_down(1)
        .expect("1 - sqrt(1-4x) vanishes at 0")
        .scale(&rat(1, 2))
}

fn eval_at(ast: &ExprAst, precision: usize) -> Result<Series, ExprError> {
    let fail = |source: SeriesError| ExprError::Eval { span: ast.span, source };
    match &ast.kind {
        AstKind::Number(r) => Ok(Series::constant(r.clone(), precision)),
        AstKind::X => Ok(Series::x(precision)),
        AstKind::Add(a, b) => Ok(eval_at(a, precision)?.add(&eval_at(b, precision)?)),
        AstKind::Sub(a, b) => Ok(eval_at(a, precision)?.sub(&eval_at(b, precision)?)),
        AstKind::Mul(a, b) => Ok(eval_at(a, precision)?.mul(&eval_at(b, precision)?)),
        AstKind::Div(a, b) => {
            eval_at(a, precision)?.div(&eval_at(b, precision)?).map_err(fail)
        }
        AstKind::Neg(a) => Ok(eval_at(a, precision)?.neg()),
        AstKind::Pow(a, e) => eval_at(a, precision)?.powi(*e).map_err(fail),
        AstKind::Sqrt(a) => eval_at(a, precision)?.sqrt().map_err(fail),
        AstKind::Rev(a) => eval_at(a, precision)?.revert().map_err(fail),
        AstKind::Deriv(a) => eval_at(a, precision)?.derive().map_err(fail),
        AstKind::Catalan(a) => {
            let inner = eval_at(a, precision)?;
            catalan_series(inner.precision()).compose(&inner).map_err(fail)
        }
    }
}

/// Evaluate to a series of exactly `precision` known coefficients.
///
/// The tree is evaluated with enough internal padding to absorb the one-order
/// loss of each `deriv`; data-dependent losses (cancelling divisions, square
/// roots of higher-order series) trigger a re-evaluation at higher padding.
pub fn eval(ast: &ExprAst, precision: usize) -> Result<Series, ExprError> {
    assert!(precision >= 1);
    let mut pad = ast.deriv_count();
    let mut last = 0;
    for _ in 0..4 {
        let s = eval_at(ast, precision + pad)?;
        last = s.precision();
        if last >= precision {
            return Ok(s.truncate(precision));
        }
        pad += precision - last;
    }
    Err(ExprError::Eval {
        span: ast.span,
        source: SeriesError::InsufficientPrecision { needed: precision, available: last },
    })
}

/// Parse and evaluate in one step.
pub fn parse_eval(text: &str, precision: usize) -> Result<Series, ExprError> {
    eval(&parse(text)?, precision)
}

// -------------------------------------------------------------- printing ----

impl fmt::Display for ExprAst {
    /// Reparseable form; binary operations are fully parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AstKind::Number(r) => write!(f, "{}", crate::rational::render(r)),
            AstKind::X => write!(f, "x"),
            AstKind::Add(a, b) => write!(f, "({a}+{b})"),
            AstKind::Sub(a, b) => write!(f, "({a}-{b})"),
            AstKind::Mul(a, b) => write!(f, "({a}*{b})"),
            AstKind::Div(a, b) => write!(f, "({a}/{b})"),
            AstKind::Neg(a) => write!(f, "(-{a})"),
            AstKind::Pow(a, e) => {
                match a.kind {
                    AstKind::Pow(..) | AstKind::Number(_) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                if *e < 0 {
                    write!(f, "^-{}", -e)
                } else {
                    write!(f, "^{e}")
                }
            }
            AstKind::Sqrt(a) => write!(f, "sqrt({a})"),
            AstKind::Rev(a) => write!(f, "rev({a})"),
            AstKind::Deriv(a) => write!(f, "deriv({a})"),
            AstKind::Catalan(a) => write!(f, "catalan({a})"),
        }
    }
}
