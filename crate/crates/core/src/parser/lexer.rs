use super::{ParseError, ParseErrorKind, SourceSpan};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    /// Unsigned integer literal, digits kept verbatim.
    Int(String),
    /// Unsigned decimal literal with a point, e.g. `1.73`.
    Decimal(String),
    Eq,
    Colon,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Newline,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) | Tok::Decimal(s) => format!("number `{s}`"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
            Tok::Eq => "`=`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start_col = col;
        let span = |len: usize| SourceSpan::new(line, start_col, len.max(1));
        match c {
            '\n' => {
                out.push(Token {
                    tok: Tok::Newline,
                    span: span(1),
                });
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            '\r' if chars.get(i + 1) == Some(&'\n') => {
                i += 1;
                col += 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                    col += 1;
                }
                continue;
            }
            _ => {}
        }
        let single = match c {
            '=' => Some(Tok::Eq),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, span: span(1) });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut decimal = false;
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                decimal = true;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let s: String = chars[start..i].iter().collect();
            let len = i - start;
            out.push(Token {
                tok: if decimal { Tok::Decimal(s) } else { Tok::Int(s) },
                span: span(len),
            });
            col += len;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let len = i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                span: span(len),
            });
            col += len;
            continue;
        }
        return Err(ParseError::new(
            span(1),
            ParseErrorKind::LexError,
            format!("unexpected character `{c}`"),
        ));
    }
    out.push(Token {
        tok: Tok::Eof,
        span: SourceSpan::new(line, col, 1),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            kinds("a = [1/2, -u^2] # note\r\n"),
            vec![
                Tok::Ident("a".into()),
                Tok::Eq,
                Tok::LBracket,
                Tok::Int("1".into()),
                Tok::Slash,
                Tok::Int("2".into()),
                Tok::Comma,
                Tok::Minus,
                Tok::Ident("u".into()),
                Tok::Caret,
                Tok::Int("2".into()),
                Tok::RBracket,
                Tok::Newline,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn decimals_and_spans() {
        let toks = tokenize("x\n  1.75+0i").unwrap();
        assert_eq!(toks[2].tok, Tok::Decimal("1.75".into()));
        assert_eq!(toks[2].span, SourceSpan::new(2, 3, 4));
        assert_eq!(toks[4].tok, Tok::Int("0".into()));
        assert_eq!(toks[5].tok, Tok::Ident("i".into()));
    }

    #[test]
    fn bad_character() {
        let e = tokenize("a = [1;]").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::LexError);
        assert_eq!(e.span, SourceSpan::new(1, 7, 1));
    }
}
