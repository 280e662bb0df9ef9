use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::lexer::{Tok, Token};
use super::{ParseError, ParseErrorKind, SourceSpan};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone)]
pub(crate) enum Expr {
    Num(Rational, SourceSpan),
    Ident(String, SourceSpan),
    Neg(Box<Expr>, SourceSpan),
    Bin(BinOp, Box<Expr>, Box<Expr>, SourceSpan),
    /// Base and signed integer exponent.
    Pow(Box<Expr>, i64, SourceSpan),
}

impl Expr {
    pub(crate) fn span(&self) -> SourceSpan {
        match self {
            Expr::Num(_, s) | Expr::Ident(_, s) | Expr::Neg(_, s) | Expr::Bin(_, _, _, s) | Expr::Pow(_, _, s) => *s,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Stmt {
    Field {
        symbol: String,
        poly: Expr,
        span: SourceSpan,
    },
    List {
        key: String,
        items: Vec<Expr>,
        span: SourceSpan,
    },
    Hint {
        re: Rational,
        im: Rational,
        span: SourceSpan,
    },
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

fn syntax(span: SourceSpan, msg: impl Into<String>) -> ParseError {
    ParseError::new(span, ParseErrorKind::SyntaxError, msg)
}

fn int_value(s: &str) -> BigInt {
    BigInt::from_str(s).expect("lexer yields digits only")
}

fn decimal_value(s: &str) -> Rational {
    match s.split_once('.') {
        Some((int, frac)) => {
            let den = BigInt::from(10u32).pow(frac.len() as u32);
            Rational::new(int_value(&format!("{int}{frac}")), den)
        }
        None => Rational::from_integer(int_value(s)),
    }
}

impl Parser {
    pub(crate) fn new(toks: Vec<Token>) -> Self {
        Parser { toks, pos: 0, depth: 0 }
    }

    fn skip_inner_newlines(&mut self) {
        if self.depth > 0 {
            while self.toks[self.pos].tok == Tok::Newline {
                self.pos += 1;
            }
        }
    }

    fn peek(&mut self) -> &Token {
        self.skip_inner_newlines();
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        self.skip_inner_newlines();
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, ParseError> {
        let t = self.bump();
        if t.tok == want {
            Ok(t)
        } else {
            Err(syntax(t.span, format!("expected {what}, found {}", t.tok.describe())))
        }
    }

    pub(crate) fn statements(&mut self) -> Result<Vec<Stmt>, ParseError> {
        let mut out = Vec::new();
        loop {
            let t = self.bump();
            match t.tok {
                Tok::Eof => return Ok(out),
                Tok::Newline => continue,
                Tok::Ident(ref name) if name == "field" => out.push(self.field_decl(t.span)?),
                Tok::Ident(ref name) if name == "root_hint" => out.push(self.hint(t.span)?),
                Tok::Ident(name) => out.push(self.assign(name, t.span)?),
                other => return Err(syntax(t.span, format!("expected a declaration, found {}", other.describe()))),
            }
            let end = self.bump();
            if !matches!(end.tok, Tok::Newline | Tok::Eof) {
                return Err(syntax(end.span, format!("expected end of line, found {}", end.tok.describe())));
            }
            if end.tok == Tok::Eof {
                return Ok(out);
            }
        }
    }

    fn field_decl(&mut self, span: SourceSpan) -> Result<Stmt, ParseError> {
        let t = self.bump();
        let symbol = match t.tok {
            Tok::Ident(s) => s,
            other => return Err(syntax(t.span, format!("expected field symbol, found {}", other.describe()))),
        };
        self.expect(Tok::Colon, "`:`")?;
        let poly = self.expr()?;
        Ok(Stmt::Field { symbol, poly, span })
    }

    fn signed_number(&mut self) -> Result<Rational, ParseError> {
        let neg = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.bump();
        let v = match &t.tok {
            Tok::Int(s) | Tok::Decimal(s) => decimal_value(s),
            other => return Err(syntax(t.span, format!("expected a decimal number, found {}", other.describe()))),
        };
        Ok(if neg { -v } else { v })
    }

    fn hint(&mut self, span: SourceSpan) -> Result<Stmt, ParseError> {
        self.expect(Tok::Eq, "`=`")?;
        let re = self.signed_number()?;
        let im = match self.peek().tok {
            Tok::Plus | Tok::Minus => {
                let neg = self.bump().tok == Tok::Minus;
                let v = self.signed_number()?;
                let t = self.bump();
                if t.tok != Tok::Ident("i".into()) {
                    return Err(syntax(t.span, "expected `i` after the imaginary part"));
                }
                if neg {
                    -v
                } else {
                    v
                }
            }
            _ => Rational::zero(),
        };
        Ok(Stmt::Hint { re, im, span })
    }

    fn assign(&mut self, key: String, span: SourceSpan) -> Result<Stmt, ParseError> {
        self.expect(Tok::Eq, "`=`")?;
        self.expect(Tok::LBracket, "`[`")?;
        self.depth += 1;
        let mut items = vec![self.expr()?];
        loop {
            let t = self.bump();
            match t.tok {
                Tok::Comma => items.push(self.expr()?),
                Tok::RBracket => break,
                other => {
                    return Err(syntax(t.span, format!("expected `,` or `]`, found {}", other.describe())));
                }
            }
        }
        self.depth -= 1;
        Ok(Stmt::List { key, items, span })
    }

    pub(crate) fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let t = self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), t.span);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            let t = self.bump();
            let rhs = self.factor()?;
            if op == BinOp::Div {
                if let Expr::Num(q, s) = &rhs {
                    if q.is_zero() {
                        return Err(ParseError::new(*s, ParseErrorKind::DivisionByZeroLiteral, "division by zero"));
                    }
                }
            }
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), t.span);
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            let t = self.bump();
            let inner = self.factor_body()?;
            return Ok(Expr::Neg(Box::new(inner), t.span));
        }
        self.factor_body()
    }

    fn factor_body(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let neg = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.bump();
        let k = match &t.tok {
            Tok::Int(s) => s.parse::<i64>().map_err(|_| {
                ParseError::new(t.span, ParseErrorKind::NonIntegerExponent, "exponent too large")
            })?,
            Tok::Eof | Tok::Newline => return Err(syntax(t.span, "expected an exponent")),
            other => {
                return Err(ParseError::new(
                    t.span,
                    ParseErrorKind::NonIntegerExponent,
                    format!("exponent must be an integer literal, found {}", other.describe()),
                ))
            }
        };
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }, caret.span))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Int(s) => Ok(Expr::Num(Rational::from_integer(int_value(&s)), t.span)),
            Tok::Decimal(s) => Err(syntax(
                t.span,
                format!("decimal literal `{s}` is not allowed here; write it as a fraction"),
            )),
            Tok::Ident(s) => Ok(Expr::Ident(s, t.span)),
            Tok::LParen => {
                self.depth += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                self.depth -= 1;
                Ok(e)
            }
            other => Err(syntax(t.span, format!("expected a value, found {}", other.describe()))),
        }
    }
}
