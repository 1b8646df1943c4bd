//! Recursive-descent parser for the integrand grammar:
//!
//! ```text
//! expr   := term (('+' | '−') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '−'? base ('^' '−'? integer)?
//! base   := integer | 'x' | func '(' expr ')' | '(' expr ')'
//! func   := sin | cos | tan | sec | csc | cot
//! ```
//!
//! Both ASCII `-` and U+2212 are accepted as minus. Positions are character
//! offsets into the source.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{TrigError, TrigRational};
use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sec,
    Csc,
    Cot,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sec" => Func::Sec,
            "csc" => Func::Csc,
            "cot" => Func::Cot,
            _ => return None,
        })
    }

    fn eval(self, x: f64) -> f64 {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Sec => 1.0 / x.cos(),
            Func::Csc => 1.0 / x.sin(),
            Func::Cot => 1.0 / x.tan(),
        }
    }

    fn canonical(self) -> TrigRational {
        match self {
            Func::Sin => TrigRational::sin(),
            Func::Cos => TrigRational::cos(),
            Func::Tan => TrigRational::tan(),
            Func::Sec => TrigRational::sec(),
            Func::Csc => TrigRational::csc(),
            Func::Cot => TrigRational::cot(),
        }
    }
}

/// Parsed expression tree, before canonicalization.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprNode {
    Int(BigInt),
    Var { position: usize },
    Call { func: Func, arg: Box<ExprNode>, position: usize },
    Neg(Box<ExprNode>),
    Add(Box<ExprNode>, Box<ExprNode>),
    Sub(Box<ExprNode>, Box<ExprNode>),
    Mul(Box<ExprNode>, Box<ExprNode>),
    Div(Box<ExprNode>, Box<ExprNode>),
    Pow(Box<ExprNode>, i32),
}

impl ExprNode {
    /// Direct floating-point evaluation, without canonicalization.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ExprNode::Int(n) => n.to_f64().unwrap_or(f64::NAN),
            ExprNode::Var { .. } => x,
            ExprNode::Call { func, arg, .. } => func.eval(arg.eval(x)),
            ExprNode::Neg(a) => -a.eval(x),
            ExprNode::Add(a, b) => a.eval(x) + b.eval(x),
            ExprNode::Sub(a, b) => a.eval(x) - b.eval(x),
            ExprNode::Mul(a, b) => a.eval(x) * b.eval(x),
            ExprNode::Div(a, b) => a.eval(x) / b.eval(x),
            ExprNode::Pow(a, e) => a.eval(x).powi(*e),
        }
    }

    /// Canonical value. Trig functions must be applied to `x` itself.
    pub fn to_trig(&self) -> Result<TrigRational, TrigError> {
        Ok(match self {
            ExprNode::Int(n) => TrigRational::constant(Rational::from_integer(n.clone())),
            ExprNode::Var { position } => {
                return Err(TrigError::Syntax {
                    position: *position,
                    message: "x may only appear as the argument of a trigonometric function".into(),
                })
            }
            ExprNode::Call { func, arg, position } => {
                if !matches!(**arg, ExprNode::Var { .. }) {
                    return Err(TrigError::Syntax {
                        position: *position,
                        message: "trigonometric functions accept only the bare argument x".into(),
                    });
                }
                func.canonical()
            }
            ExprNode::Neg(a) => -a.to_trig()?,
            ExprNode::Add(a, b) => a.to_trig()? + b.to_trig()?,
            ExprNode::Sub(a, b) => a.to_trig()? - b.to_trig()?,
            ExprNode::Mul(a, b) => a.to_trig()? * b.to_trig()?,
            ExprNode::Div(a, b) => a.to_trig()?.checked_div(&b.to_trig()?)?,
            ExprNode::Pow(a, e) => a.to_trig()?.pow(*e)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
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

fn lex(src: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let start = i;
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            '-' | '\u{2212}' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push((Token::Int(text.parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((Token::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => return Err(ParseError { position: start, message: format!("unexpected character '{other}'") }),
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.position(), message: message.into() })
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = ExprNode::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = ExprNode::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    lhs = ExprNode::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    lhs = ExprNode::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprNode, ParseError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(ExprNode::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.bump() {
            Some(Token::Int(n)) => {
                let Some(e) = n.to_i32() else {
                    self.pos -= 1;
                    return self.error("exponent too large");
                };
                Ok(ExprNode::Pow(Box::new(base), if negative { -e } else { e }))
            }
            _ => {
                self.pos -= 1;
                self.error("expected integer exponent")
            }
        }
    }

    fn base(&mut self) -> Result<ExprNode, ParseError> {
        let position = self.position();
        match self.bump() {
            Some(Token::Int(n)) => Ok(ExprNode::Int(n)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(e)
            }
            Some(Token::Ident(name)) if name == "x" => Ok(ExprNode::Var { position }),
            Some(Token::Ident(name)) => {
                let Some(func) = Func::from_name(&name) else {
                    self.pos -= 1;
                    return self.error(format!("unknown function '{name}'"));
                };
                self.expect(Token::LParen, "'(' after function name")?;
                let arg = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(ExprNode::Call { func, arg: Box::new(arg), position })
            }
            Some(_) => {
                self.pos -= 1;
                self.error("expected a number, x, a function call or '('")
            }
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse_expression(src: &str) -> Result<ExprNode, ParseError> {
    let tokens = lex(src)?;
    let mut parser = Parser { tokens, pos: 0, end: src.chars().count() };
    let e = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return parser.error("unexpected trailing input");
    }
    Ok(e)
}
