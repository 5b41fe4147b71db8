//! Expression language: literals, `w` for ω, names `{X | Y}` and the four
//! arithmetic operators.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom | "w" "^" unary
//! atom  := rational | "w" | "(" expr ")" | "{" list "|" list "}"
//! list  := (expr ("," expr)*)?
//! ```
//!
//! A rational literal `k/d` is written without blanks around the slash;
//! with blanks it is an ordinary division, which has the same value except
//! under `^`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::names::{self, GeneticEngine, Name, NameError};
use crate::normalform::{omega_pow, FormError, Surreal};

const MAX_DEPTH: usize = 200;

/// Byte range `start..end` into the parsed input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Literal(Surreal),
    Name(Vec<Expr>, Vec<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    OmegaPow(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    EmptyInput,
    UnbalancedBrace,
    Syntax {
        expected: Vec<&'static str>,
        found: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::EmptyInput => write!(f, "empty input"),
            ParseErrorKind::UnbalancedBrace => write!(f, "unbalanced bracket at {}", self.span),
            ParseErrorKind::Syntax { expected, found } => write!(
                f,
                "syntax error at {}: expected {}, found {}",
                self.span,
                expected.join(" or "),
                found
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalErrorKind {
    #[error(transparent)]
    Name(#[from] NameError),
    #[error(transparent)]
    Form(#[from] FormError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {span}")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Omega,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Bar,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Omega => "'w'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::Bar => "'|'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let single = |t: Tok| (t, SourceSpan::new(i, i + c.len_utf8()));
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = j + 1;
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: BigInt = input[i..end].parse().expect("digits");
                out.push((Tok::Int(n), SourceSpan::new(i, end)));
            }
            _ => {
                let tok = match c {
                    'w' | 'ω' => Tok::Omega,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '|' => Tok::Bar,
                    ',' => Tok::Comma,
                    other => {
                        return Err(ParseError {
                            kind: ParseErrorKind::Syntax {
                                expected: vec!["a number", "'w'", "an operator", "a bracket"],
                                found: format!("{other:?}"),
                            },
                            span: SourceSpan::new(i, i + other.len_utf8()),
                        })
                    }
                };
                out.push(single(tok));
                chars.next();
            }
        }
    }
    out.push((Tok::End, SourceSpan::new(input.len(), input.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    depth: usize,
}

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

    fn unexpected(&self, expected: Vec<&'static str>) -> ParseError {
        let kind = match self.peek() {
            Tok::RParen | Tok::RBrace => ParseErrorKind::UnbalancedBrace,
            t => ParseErrorKind::Syntax {
                expected,
                found: t.describe(),
            },
        };
        ParseError {
            kind,
            span: self.span(),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax {
                    expected: vec!["shallower nesting"],
                    found: format!("more than {MAX_DEPTH} nested levels"),
                },
                span: self.span(),
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let build: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek() {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr {
                kind: build(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let build: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek() {
                Tok::Star => ExprKind::Mul,
                Tok::Slash => ExprKind::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr {
                kind: build(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let out = if *self.peek() == Tok::Minus {
            let (_, start) = self.bump();
            let inner = self.unary()?;
            let span = start.join(inner.span);
            Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            }
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(out)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Omega && self.toks[self.pos + 1].0 == Tok::Caret {
            let (_, start) = self.bump();
            self.bump();
            let exponent = self.unary()?;
            let span = start.join(exponent.span);
            return Ok(Expr {
                kind: ExprKind::OmegaPow(Box::new(exponent)),
                span,
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let (_, span) = self.bump();
                self.rational_tail(n, span)
            }
            Tok::Omega => {
                let (_, span) = self.bump();
                Ok(Expr {
                    kind: ExprKind::Literal(Surreal::omega()),
                    span,
                })
            }
            Tok::LParen => {
                let (_, open) = self.bump();
                let mut inner = self.expr()?;
                let end = self.close(Tok::RParen, open)?;
                inner.span = open.join(end);
                Ok(inner)
            }
            Tok::LBrace => {
                let (_, open) = self.bump();
                let left = self.list(Tok::Bar, open)?;
                self.close(Tok::Bar, open)?;
                let right = self.list(Tok::RBrace, open)?;
                let end = self.close(Tok::RBrace, open)?;
                Ok(Expr {
                    kind: ExprKind::Name(left, right),
                    span: open.join(end),
                })
            }
            Tok::End => Err(ParseError {
                kind: ParseErrorKind::Syntax {
                    expected: vec!["a number", "'w'", "'('", "'{'"],
                    found: Tok::End.describe(),
                },
                span: self.span(),
            }),
            _ => Err(self.unexpected(vec!["a number", "'w'", "'('", "'{'"])),
        }
    }

    /// `k/d` with both parts glued to the slash is a single literal.
    fn rational_tail(&mut self, num: BigInt, span: SourceSpan) -> Result<Expr, ParseError> {
        let glued = matches!(
            (&self.toks[self.pos], self.toks.get(self.pos + 1)),
            ((Tok::Slash, s), Some((Tok::Int(_), d))) if s.start == span.end && d.start == s.end
        );
        if !glued {
            return Ok(Expr {
                kind: ExprKind::Literal(Surreal::integer(num)),
                span,
            });
        }
        self.bump();
        let (den, dspan) = match self.bump() {
            (Tok::Int(d), s) => (d, s),
            _ => unreachable!("checked above"),
        };
        let span = span.join(dspan);
        if den.is_zero() {
            return Err(ParseError {
                kind: ParseErrorKind::Syntax {
                    expected: vec!["a nonzero denominator"],
                    found: "0".into(),
                },
                span: dspan,
            });
        }
        let value = Surreal::from_rational(BigRational::new(num, den));
        Ok(Expr {
            kind: ExprKind::Literal(value),
            span,
        })
    }

    fn list(&mut self, terminator: Tok, open: SourceSpan) -> Result<Vec<Expr>, ParseError> {
        let mut items = Vec::new();
        if *self.peek() == terminator {
            return Ok(items);
        }
        loop {
            if *self.peek() == Tok::End {
                return Err(ParseError {
                    kind: ParseErrorKind::UnbalancedBrace,
                    span: open,
                });
            }
            items.push(self.expr()?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(items);
            }
        }
    }

    fn close(&mut self, want: Tok, open: SourceSpan) -> Result<SourceSpan, ParseError> {
        if *self.peek() == want {
            return Ok(self.bump().1);
        }
        if *self.peek() == Tok::End {
            return Err(ParseError {
                kind: ParseErrorKind::UnbalancedBrace,
                span: open,
            });
        }
        let expected = match want {
            Tok::RParen => vec!["')'", "an operator"],
            Tok::Bar => vec!["'|'", "','", "an operator"],
            _ => vec!["'}'", "','", "an operator"],
        };
        Err(ParseError {
            kind: ParseErrorKind::Syntax {
                expected,
                found: self.peek().describe(),
            },
            span: self.span(),
        })
    }
}

/// Parses one expression.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let toks = lex(input)?;
    if toks.len() == 1 {
        return Err(ParseError {
            kind: ParseErrorKind::EmptyInput,
            span: SourceSpan::new(0, input.len()),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(vec!["an operator", "end of input"]));
    }
    Ok(e)
}

/// Evaluates an expression tree with closed-form arithmetic.
pub fn eval(e: &Expr) -> Result<Surreal, EvalError> {
    Evaluator::default().eval(e)
}

/// Canonical text of a value; `parse` reads it back to the same value.
pub fn print(v: &Surreal) -> String {
    v.to_string()
}

/// Expression evaluator. With a genetic engine attached, sums, differences,
/// products and negations of dyadics are computed through the genetic
/// recursion instead of closed-form arithmetic.
#[derive(Debug, Default)]
pub struct Evaluator {
    genetic: Option<GeneticEngine>,
}

impl Evaluator {
    pub fn genetic(engine: GeneticEngine) -> Self {
        Evaluator {
            genetic: Some(engine),
        }
    }

    pub fn eval(&mut self, e: &Expr) -> Result<Surreal, EvalError> {
        let at = |span: SourceSpan| move |k: EvalErrorKind| EvalError { kind: k, span };
        match &e.kind {
            ExprKind::Literal(v) => Ok(v.clone()),
            ExprKind::Name(l, r) => {
                let left = l
                    .iter()
                    .map(|x| self.eval(x))
                    .collect::<Result<Vec<_>, _>>()?;
                let right = r
                    .iter()
                    .map(|x| self.eval(x))
                    .collect::<Result<Vec<_>, _>>()?;
                let name = Name::new(left, right).map_err(|k| at(e.span)(k.into()))?;
                names::resolve(&name).map_err(|k| at(e.span)(k.into()))
            }
            ExprKind::Neg(x) => {
                let v = self.eval(x)?;
                if let (Some(g), Surreal::Dyadic(d)) = (self.genetic.as_mut(), &v) {
                    return g
                        .neg(d)
                        .map(Surreal::Dyadic)
                        .map_err(|k| at(e.span)(k.into()));
                }
                Ok(-v)
            }
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
                let x = self.eval(a)?;
                let y = self.eval(b)?;
                if let (Some(g), Surreal::Dyadic(p), Surreal::Dyadic(q)) =
                    (self.genetic.as_mut(), &x, &y)
                {
                    let r = match &e.kind {
                        ExprKind::Add(..) => g.add(p, q),
                        ExprKind::Sub(..) => g.sub(p, q),
                        _ => g.mul(p, q),
                    };
                    return r.map(Surreal::Dyadic).map_err(|k| at(e.span)(k.into()));
                }
                Ok(match &e.kind {
                    ExprKind::Add(..) => &x + &y,
                    ExprKind::Sub(..) => &x - &y,
                    _ => &x * &y,
                })
            }
            ExprKind::Div(a, b) => {
                let x = self.eval(a)?;
                let y = self.eval(b)?;
                x.checked_div(&y).map_err(|k| at(b.span)(k.into()))
            }
            ExprKind::OmegaPow(x) => Ok(omega_pow(&self.eval(x)?)),
        }
    }
}
