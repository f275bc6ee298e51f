use std::fmt;

/// 1-based line/column position of a character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Ident(String),
    Str(String),
    Int(i64),
    Float(f64),
    Colon,
    Dot,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Assign,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    Arrow,
    BiArrow,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "`{s}`"),
            TokenKind::Str(_) => f.write_str("string literal"),
            TokenKind::Int(_) => f.write_str("integer literal"),
            TokenKind::Float(_) => f.write_str("float literal"),
            TokenKind::Eof => f.write_str("end of file"),
            other => write!(f, "`{}`", punct_text(other)),
        }
    }
}

pub(crate) fn punct_text(kind: &TokenKind) -> &'static str {
    match kind {
        TokenKind::Colon => ":",
        TokenKind::Dot => ".",
        TokenKind::Comma => ",",
        TokenKind::LParen => "(",
        TokenKind::RParen => ")",
        TokenKind::LBrace => "{",
        TokenKind::RBrace => "}",
        TokenKind::LBracket => "[",
        TokenKind::RBracket => "]",
        TokenKind::Assign => "=",
        TokenKind::EqEq => "==",
        TokenKind::NotEq => "!=",
        TokenKind::Lt => "<",
        TokenKind::Le => "<=",
        TokenKind::Gt => ">",
        TokenKind::Ge => ">=",
        TokenKind::Arrow => "->",
        TokenKind::BiArrow => "<->",
        _ => "",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub code: &'static str,
    pub message: String,
    pub span: Span,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
    last: Pos,
}

impl<'a> Lexer<'a> {
    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        self.last = self.pos();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }
}

/// Splits `text` into tokens. Errors are collected and lexing continues, so
/// the token list always ends with `Eof`.
pub fn tokenize(text: &str) -> (Vec<Token>, Vec<LexError>) {
    let mut lx = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
        last: Pos { line: 1, col: 1 },
    };
    let mut tokens = Vec::new();
    let mut errors = Vec::new();

    loop {
        let start = lx.pos();
        let Some(c) = lx.peek() else { break };
        if c.is_whitespace() {
            lx.bump();
            continue;
        }
        if c == '/' && lx.peek2() == Some('/') {
            while let Some(c) = lx.peek() {
                if c == '\n' {
                    break;
                }
                lx.bump();
            }
            continue;
        }
        if c == '/' && lx.peek2() == Some('*') {
            lx.bump();
            lx.bump();
            let mut closed = false;
            while let Some(c) = lx.bump() {
                if c == '*' && lx.peek() == Some('/') {
                    lx.bump();
                    closed = true;
                    break;
                }
            }
            if !closed {
                errors.push(LexError {
                    code: "PAR002",
                    message: "unterminated block comment".into(),
                    span: Span {
                        start,
                        end: lx.last,
                    },
                });
            }
            continue;
        }

        let kind = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(c) = lx.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    lx.bump();
                } else {
                    break;
                }
            }
            TokenKind::Ident(s)
        } else if c.is_ascii_digit() || (c == '-' && lx.peek2().is_some_and(|d| d.is_ascii_digit()))
        {
            match lex_number(&mut lx) {
                Ok(k) => k,
                Err(msg) => {
                    errors.push(LexError {
                        code: "PAR004",
                        message: msg,
                        span: Span {
                            start,
                            end: lx.last,
                        },
                    });
                    continue;
                }
            }
        } else if c == '"' {
            match lex_string(&mut lx) {
                Ok(s) => TokenKind::Str(s),
                Err((code, msg)) => {
                    errors.push(LexError {
                        code,
                        message: msg,
                        span: Span {
                            start,
                            end: lx.last,
                        },
                    });
                    continue;
                }
            }
        } else {
            lx.bump();
            match c {
                ':' => TokenKind::Colon,
                '.' => TokenKind::Dot,
                ',' => TokenKind::Comma,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '{' => TokenKind::LBrace,
                '}' => TokenKind::RBrace,
                '[' => TokenKind::LBracket,
                ']' => TokenKind::RBracket,
                '=' if lx.peek() == Some('=') => {
                    lx.bump();
                    TokenKind::EqEq
                }
                '=' => TokenKind::Assign,
                '!' if lx.peek() == Some('=') => {
                    lx.bump();
                    TokenKind::NotEq
                }
                '<' if lx.peek() == Some('=') => {
                    lx.bump();
                    TokenKind::Le
                }
                '<' if lx.peek() == Some('-') && lx.peek2() == Some('>') => {
                    lx.bump();
                    lx.bump();
                    TokenKind::BiArrow
                }
                '<' => TokenKind::Lt,
                '>' if lx.peek() == Some('=') => {
                    lx.bump();
                    TokenKind::Ge
                }
                '>' => TokenKind::Gt,
                '-' if lx.peek() == Some('>') => {
                    lx.bump();
                    TokenKind::Arrow
                }
                other => {
                    errors.push(LexError {
                        code: "PAR003",
                        message: format!("invalid character {other:?}"),
                        span: Span { start, end: start },
                    });
                    continue;
                }
            }
        };
        tokens.push(Token {
            kind,
            span: Span {
                start,
                end: lx.last,
            },
        });
    }
    let eof = lx.pos();
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: Span {
            start: eof,
            end: eof,
        },
    });
    (tokens, errors)
}

fn lex_number(lx: &mut Lexer<'_>) -> Result<TokenKind, String> {
    let mut s = String::new();
    if lx.peek() == Some('-') {
        s.push('-');
        lx.bump();
    }
    let digits = |lx: &mut Lexer<'_>, s: &mut String| {
        let mut n = 0;
        while let Some(c) = lx.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                lx.bump();
                n += 1;
            } else {
                break;
            }
        }
        n
    };
    digits(lx, &mut s);
    let mut is_float = false;
    if lx.peek() == Some('.') && lx.peek2().is_some_and(|c| c.is_ascii_digit()) {
        is_float = true;
        s.push('.');
        lx.bump();
        digits(lx, &mut s);
    }
    if matches!(lx.peek(), Some('e' | 'E')) {
        is_float = true;
        s.push('e');
        lx.bump();
        if let Some(sign @ ('+' | '-')) = lx.peek() {
            s.push(sign);
            lx.bump();
        }
        if digits(lx, &mut s) == 0 {
            return Err(format!("malformed exponent in {s:?}"));
        }
    }
    if lx
        .peek()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
    {
        while lx
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            s.push(lx.bump().unwrap_or_default());
        }
        return Err(format!("malformed number {s:?}"));
    }
    if is_float {
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(TokenKind::Float)
            .ok_or_else(|| format!("float literal {s} out of range"))
    } else {
        s.parse::<i64>()
            .map(TokenKind::Int)
            .map_err(|_| format!("integer literal {s} out of range"))
    }
}

fn lex_string(lx: &mut Lexer<'_>) -> Result<String, (&'static str, String)> {
    lx.bump();
    let mut s = String::new();
    loop {
        match lx.peek() {
            None | Some('\n') => {
                return Err(("PAR002", "unterminated string literal".into()));
            }
            Some('"') => {
                lx.bump();
                return Ok(s);
            }
            Some('\\') => {
                lx.bump();
                let esc = lx.bump();
                match esc {
                    Some('"') => s.push('"'),
                    Some('\\') => s.push('\\'),
                    Some('n') => s.push('\n'),
                    Some('t') => s.push('\t'),
                    Some('r') => s.push('\r'),
                    other => {
                        // skip to the closing quote so lexing resumes after the literal
                        while let Some(c) = lx.peek() {
                            if c == '\n' {
                                break;
                            }
                            lx.bump();
                            if c == '"' {
                                break;
                            }
                        }
                        return Err((
                            "PAR008",
                            format!("invalid escape sequence \\{}", other.unwrap_or(' ')),
                        ));
                    }
                }
            }
            Some(c) => {
                s.push(c);
                lx.bump();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        let (toks, errs) = tokenize(text);
        assert!(errs.is_empty(), "{errs:?}");
        toks.into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn punctuation_and_arrows() {
        use TokenKind::*;
        assert_eq!(
            kinds("a->b <-> <= < -1 == != >= > = ."),
            vec![
                Ident("a".into()),
                Arrow,
                Ident("b".into()),
                BiArrow,
                Le,
                Lt,
                Int(-1),
                EqEq,
                NotEq,
                Ge,
                Gt,
                Assign,
                Dot,
                Eof
            ]
        );
    }

    #[test]
    fn numbers() {
        use TokenKind::*;
        assert_eq!(
            kinds("12 1.5 -0.25 1e20 2.5e-3"),
            vec![
                Int(12),
                Float(1.5),
                Float(-0.25),
                Float(1e20),
                Float(2.5e-3),
                Eof
            ]
        );
        let (_, errs) = tokenize("99999999999999999999");
        assert_eq!(errs[0].code, "PAR004");
        let (_, errs) = tokenize("12abc");
        assert_eq!(errs[0].code, "PAR004");
    }

    #[test]
    fn strings_and_escapes() {
        assert_eq!(
            kinds(r#""a\"b\\c\n""#),
            vec![TokenKind::Str("a\"b\\c\n".into()), TokenKind::Eof]
        );
        let (_, errs) = tokenize("\"open");
        assert_eq!(errs[0].code, "PAR002");
        let (_, errs) = tokenize(r#""bad\q" x"#);
        assert_eq!(errs[0].code, "PAR008");
    }

    #[test]
    fn comments_and_positions() {
        let (toks, errs) = tokenize("// line\n  /* block\n */ view");
        assert!(errs.is_empty());
        assert_eq!(toks[0].kind, TokenKind::Ident("view".into()));
        assert_eq!(toks[0].span.start, Pos { line: 3, col: 5 });
        assert_eq!(toks[0].span.end, Pos { line: 3, col: 8 });
        let (_, errs) = tokenize("/* never closed");
        assert_eq!(errs[0].code, "PAR002");
    }

    #[test]
    fn invalid_character() {
        let (toks, errs) = tokenize("a # b");
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].code, "PAR003");
        assert_eq!(toks.len(), 3);
    }
}
