//! Line-oriented description format for equation parameters.
//!
//! ```text
//! # nodes (3 +- sqrt 3)/6
//! field u: t^2 - 3
//! a = [1/2, 1/2]
//! alpha = [(3+u)/6, (3-u)/6]
//! beta = [(3-u)/6, (3+u)/6]
//! ```
//!
//! `root_hint = 1.73+0i` picks the complex root denoted by the field
//! symbol. For `verify`, lists `f = [...]` and `F = [...]` give polynomial
//! coefficients, lowest degree first.

mod lexer;
mod syntax;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::equation::EquationSpec;
use crate::error::Result;
use crate::number_field::{nf_create_named, FieldElement, NumberField};
use crate::{QPoly, Rational};

use syntax::{BinOp, Expr, Parser, Stmt};

/// 1-based position and length (in characters) of a piece of input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize, length: usize) -> Self {
        SourceSpan { line, column, length }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    LexError,
    SyntaxError,
    UnknownSymbol,
    ArityMismatch,
    DivisionByZeroLiteral,
    NonIntegerExponent,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub fn new(span: SourceSpan, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            span,
            kind,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.span, self.kind, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed file: the equation and, when present, the `f` and `F` lists.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub spec: EquationSpec,
    pub f: Option<Vec<FieldElement>>,
    pub big_f: Option<Vec<FieldElement>>,
}

/// Parse an equation description.
pub fn parse(text: &str) -> Result<EquationSpec> {
    parse_document(text).map(|d| d.spec)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let toks = lexer::tokenize(text)?;
    let eof = toks.last().expect("token stream ends with Eof").span;
    let stmts = Parser::new(toks).statements()?;

    let mut field_decl = None;
    let mut hint = None;
    let mut lists: BTreeMap<String, (Vec<Expr>, SourceSpan)> = BTreeMap::new();
    for st in stmts {
        match st {
            Stmt::Field { symbol, poly, span } => {
                if field_decl.is_some() {
                    return Err(syntax(span, "duplicate field declaration").into());
                }
                field_decl = Some((symbol, poly));
            }
            Stmt::Hint { re, im, span } => {
                if hint.is_some() {
                    return Err(syntax(span, "duplicate root_hint").into());
                }
                hint = Some((re, im));
            }
            Stmt::List { key, items, span } => {
                if !matches!(key.as_str(), "a" | "alpha" | "beta" | "f" | "F") {
                    return Err(syntax(
                        span,
                        format!("unknown key `{key}` (expected a, alpha, beta, f or F)"),
                    )
                    .into());
                }
                if lists.contains_key(&key) {
                    return Err(syntax(span, format!("duplicate key `{key}`")).into());
                }
                lists.insert(key, (items, span));
            }
        }
    }

    let field = match field_decl {
        None => NumberField::rational(),
        Some((symbol, poly)) => {
            let m = eval(&poly, &|name: &str, span| {
                if name == "t" {
                    Ok(QPoly::x())
                } else {
                    Err(unknown(span, name, "the field polynomial is written in `t`"))
                }
            })?;
            let ok = m.degree().is_some_and(|d| d >= 1)
                && m.leading().is_some_and(|c| c.is_one())
                && m.coeffs().iter().all(|c| c.is_integer());
            if !ok {
                return Err(syntax(
                    poly.span(),
                    format!("field polynomial `{m}` must be monic of degree >= 1 with integer coefficients"),
                )
                .into());
            }
            nf_create_named(m, &symbol, hint)?
        }
    };

    let mut values = BTreeMap::new();
    for (key, (items, span)) in &lists {
        let v = items
            .iter()
            .map(|e| eval_element(e, &field))
            .collect::<std::result::Result<Vec<_>, ParseError>>()?;
        values.insert(key.as_str(), (v, *span));
    }
    let mut take = |key: &str| -> std::result::Result<(Vec<FieldElement>, SourceSpan), ParseError> {
        values
            .remove(key)
            .ok_or_else(|| syntax(eof, format!("missing required key `{key}`")))
    };
    let (a, _) = take("a")?;
    let (alpha, alpha_span) = take("alpha")?;
    let (beta, beta_span) = take("beta")?;
    for (list, span, key) in [(&alpha, alpha_span, "alpha"), (&beta, beta_span, "beta")] {
        if list.len() != a.len() {
            return Err(ParseError::new(
                span,
                ParseErrorKind::ArityMismatch,
                format!("`{key}` has {} entries but `a` has {}", list.len(), a.len()),
            )
            .into());
        }
    }
    let spec = EquationSpec::new(field, a, alpha, beta)?;
    Ok(Document {
        spec,
        f: values.remove("f").map(|v| v.0),
        big_f: values.remove("F").map(|v| v.0),
    })
}

/// Canonical text for `spec`; `parse(&serialize(spec))` reproduces it.
pub fn serialize(spec: &EquationSpec) -> String {
    let field = spec.field();
    let mut out = String::new();
    if !field.is_rational() {
        out.push_str(&format!("field {}: {}\n", field.symbol(), field.min_poly()));
        if field.distinguished_root_index() != 0 {
            out.push_str(&format!("root_hint = {}\n", field.distinguished_root_string()));
        }
    }
    for (key, list) in [("a", spec.a()), ("alpha", spec.alpha()), ("beta", spec.beta())] {
        let items: Vec<String> = list.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("{key} = [{}]\n", items.join(", ")));
    }
    out
}

fn syntax(span: SourceSpan, msg: impl Into<String>) -> ParseError {
    ParseError::new(span, ParseErrorKind::SyntaxError, msg)
}

fn unknown(span: SourceSpan, name: &str, hint: &str) -> ParseError {
    ParseError::new(span, ParseErrorKind::UnknownSymbol, format!("unknown symbol `{name}`; {hint}"))
}

fn eval_element(e: &Expr, field: &Arc<NumberField>) -> std::result::Result<FieldElement, ParseError> {
    eval(e, &|name: &str, span| {
        if !field.is_rational() && name == field.symbol() {
            Ok(FieldElement::generator(field))
        } else if field.is_rational() {
            Err(unknown(span, name, "declare a field to use a symbol"))
        } else {
            Err(unknown(span, name, &format!("the field symbol is `{}`", field.symbol())))
        }
    })
    .and_then(|x| {
        x.in_field(field)
            .map_err(|_| syntax(e.span(), "value outside the declared field"))
    })
}

/// Values an expression can evaluate to.
trait Value: Sized + Clone {
    fn rational(q: Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// `None` when the quotient is not representable.
    fn div(&self, o: &Self) -> Option<Self>;
    fn allows_inverse() -> bool;
}

impl Value for FieldElement {
    fn rational(q: Rational) -> Self {
        FieldElement::rational(q)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.try_div(o).ok()
    }
    fn allows_inverse() -> bool {
        true
    }
}

impl Value for QPoly {
    fn rational(q: Rational) -> Self {
        QPoly::constant(q)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        o.is_constant().then(|| self.scale(&o.coeff(0).recip()))
    }
    fn allows_inverse() -> bool {
        false
    }
}

const MAX_EXPONENT: i64 = 4096;

fn eval<V: Value>(
    e: &Expr,
    lookup: &dyn Fn(&str, SourceSpan) -> std::result::Result<V, ParseError>,
) -> std::result::Result<V, ParseError> {
    match e {
        Expr::Num(q, _) => Ok(V::rational(q.clone())),
        Expr::Ident(name, span) => lookup(name, *span),
        Expr::Neg(x, _) => Ok(eval(x, lookup)?.neg()),
        Expr::Bin(op, l, r, span) => {
            let a = eval(l, lookup)?;
            let b = eval(r, lookup)?;
            Ok(match op {
                BinOp::Add => a.add(&b),
                BinOp::Sub => a.sub(&b),
                BinOp::Mul => a.mul(&b),
                BinOp::Div => {
                    if b.is_zero() {
                        return Err(ParseError::new(
                            r.span(),
                            ParseErrorKind::DivisionByZeroLiteral,
                            "division by an expression equal to zero",
                        ));
                    }
                    a.div(&b).ok_or_else(|| syntax(*span, "division by a non-constant polynomial"))?
                }
            })
        }
        Expr::Pow(base, k, span) => {
            if k.abs() > MAX_EXPONENT {
                return Err(ParseError::new(
                    *span,
                    ParseErrorKind::NonIntegerExponent,
                    format!("exponent {k} exceeds {MAX_EXPONENT} in magnitude"),
                ));
            }
            if *k < 0 && !V::allows_inverse() {
                return Err(ParseError::new(
                    *span,
                    ParseErrorKind::NonIntegerExponent,
                    "negative exponent in a polynomial",
                ));
            }
            let b = eval(base, lookup)?;
            let mut acc = V::rational(Rational::one());
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(&b);
            }
            if *k < 0 {
                if b.is_zero() {
                    return Err(ParseError::new(
                        base.span(),
                        ParseErrorKind::DivisionByZeroLiteral,
                        "negative power of zero",
                    ));
                }
                acc = V::rational(Rational::one()).div(&acc).expect("nonzero field element");
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn perr(text: &str) -> ParseError {
        match parse(text) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    const S55: &str = "field u: t^2 - 3\na = [1/2, 1/2]\nalpha = [(3+u)/6, (3-u)/6]\nbeta = [(3-u)/6, (3+u)/6]\n";

    #[test]
    fn parses_sqrt3_example() {
        let s = parse(S55).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.field().degree(), 2);
        assert_eq!(s.alpha()[0].to_string(), "(1/6)*u + 1/2");
        assert_eq!(s.beta()[0].to_string(), "-(1/6)*u + 1/2");
    }

    #[test]
    fn parses_rational_example() {
        let s = parse("a = [1/4, 3/4]\nalpha = [1, 1/3]\nbeta = [0, 2/3]").unwrap();
        assert!(s.field().is_rational());
        assert_eq!(s.beta()[1].as_rational(), Some(q(2, 3)));
    }

    #[test]
    fn unknown_symbol_span() {
        let e = perr("a = [1, 1]\nalpha = [1, u]\nbeta = [2, 3]\n");
        assert_eq!(e.kind, ParseErrorKind::UnknownSymbol);
        assert_eq!(e.span, SourceSpan::new(2, 13, 1));
    }

    #[test]
    fn arity_mismatch() {
        let e = perr("a = [1, 1]\nalpha = [1, 2, 3]\nbeta = [2, 3]\n");
        assert_eq!(e.kind, ParseErrorKind::ArityMismatch);
        assert_eq!(e.span.line, 2);
    }

    #[test]
    fn division_by_zero_literal() {
        let e = perr("a = [1/0]\nalpha = [1]\nbeta = [2]");
        assert_eq!(e.kind, ParseErrorKind::DivisionByZeroLiteral);
        assert_eq!(e.span, SourceSpan::new(1, 8, 1));
        let e = perr("a = [1/(2-2)]\nalpha = [1]\nbeta = [2]");
        assert_eq!(e.kind, ParseErrorKind::DivisionByZeroLiteral);
    }

    #[test]
    fn non_integer_exponent() {
        for text in ["a = [2^u]", "a = [2^(1/2)]", "a = [2^1.5]"] {
            let e = perr(&format!("field u: t^2 - 2\n{text}\nalpha = [1]\nbeta = [2]"));
            assert_eq!(e.kind, ParseErrorKind::NonIntegerExponent, "{text}");
        }
    }

    #[test]
    fn decimals_rejected_outside_hint() {
        assert_eq!(perr("a = [0.5]\nalpha = [1]\nbeta = [2]").kind, ParseErrorKind::SyntaxError);
    }

    #[test]
    fn lex_error() {
        assert_eq!(perr("a = [1] ; b").kind, ParseErrorKind::LexError);
    }

    #[test]
    fn root_hint_selects_conjugate() {
        let s = parse(&format!("root_hint = -1.7+0i\n{S55}")).unwrap();
        assert_eq!(s.field().distinguished_root_index(), 1);
        assert_eq!(parse(&serialize(&s)).unwrap(), s);
    }

    #[test]
    fn reducible_field_propagates() {
        assert!(matches!(
            parse("field u: t^2 - 4\na = [1]\nalpha = [u]\nbeta = [1]"),
            Err(Error::Reducible { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let s = parse(S55).unwrap();
        let text = serialize(&s);
        assert_eq!(parse(&text).unwrap(), s);
    }

    #[test]
    fn comments_crlf_and_multiline_lists() {
        let noisy = "# header\r\n\r\nfield u: t^2 - 3 # generator\r\na = [1/2,\r\n  1/2]\r\n\r\nalpha = [(3+u)/6, (3-u)/6]\r\n# x\r\nbeta = [(3-u)/6, (3+u)/6]";
        assert_eq!(parse(noisy).unwrap(), parse(S55).unwrap());
    }

    #[test]
    fn verify_lists() {
        let d = parse_document(&format!("{S55}f = [0, 0, 1]\nF = [0, 0, 0, 1/3]\n")).unwrap();
        assert_eq!(d.f.unwrap().len(), 3);
        assert_eq!(d.big_f.unwrap()[3].as_rational(), Some(q(1, 3)));
    }

    #[test]
    fn precedence() {
        let s = parse("a = [-2^2 + 3*4/2 - (1 - 1/2)]\nalpha = [1]\nbeta = [2]").unwrap();
        // -(2^2) + 6 - 1/2
        assert_eq!(s.a()[0].as_rational(), Some(q(3, 2)));
    }

    #[test]
    fn missing_key() {
        let e = perr("a = [1]\nalpha = [2]\n");
        assert_eq!(e.kind, ParseErrorKind::SyntaxError);
        assert!(e.message.contains("beta"));
    }

    #[test]
    fn non_monic_field_rejected() {
        assert_eq!(perr("field u: 2*t^2 - 3\na = [1]\nalpha = [u]\nbeta = [1]").kind, ParseErrorKind::SyntaxError);
    }
}
