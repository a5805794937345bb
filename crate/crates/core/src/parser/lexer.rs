use super::{ParseError, SourceSpan, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Bare identifier (constant, predicate, keyword, label).
    Ident(String),
    /// `?x`
    IVar(String),
    /// `?X`
    PVar(String),
    Nat(usize),
    Str(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    Arrow,
    FatArrow,
    Tilde,
    Amp,
    Bar,
    Star,
    /// `∀`: first- or second-order depending on the variable that follows.
    Forall,
    /// `Π`
    Pi,
    /// `∃`
    Exists,
    Bot,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::IVar(s) => format!("variable `?{s}`"),
            Tok::PVar(s) => format!("predicate variable `?{s}`"),
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::Str(_) => "string".into(),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Colon => ":",
            Tok::Arrow => "->",
            Tok::FatArrow => "=>",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Star => "*",
            Tok::Forall => "∀",
            Tok::Pi => "Π",
            Tok::Exists => "∃",
            Tok::Bot => "⊥",
            _ => "?",
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub start: usize,
    pub end: usize,
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '$'
}

/// Splits `src` into tokens. Byte offsets are shifted by `offset` so that a
/// quoted formula inside a script reports positions in the whole file.
pub(crate) fn lex(src: &str, file: &str, offset: usize) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    let err = |start: usize, end: usize, found: String| {
        SyntaxError::Parse(ParseError {
            span: SourceSpan { file: file.to_string(), start: start + offset, end: end + offset },
            expected: "a token".into(),
            found,
        })
    };
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = it.peek() {
                if c == '\n' {
                    break;
                }
                it.next();
            }
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            '~' | '¬' => Some(Tok::Tilde),
            '&' | '∧' => Some(Tok::Amp),
            '|' | '∨' => Some(Tok::Bar),
            '*' => Some(Tok::Star),
            '→' => Some(Tok::Arrow),
            '⇒' => Some(Tok::FatArrow),
            '∀' => Some(Tok::Forall),
            'Π' => Some(Tok::Pi),
            '∃' => Some(Tok::Exists),
            '⊥' => Some(Tok::Bot),
            _ => None,
        };
        if let Some(tok) = single {
            it.next();
            out.push(Token { tok, start: i + offset, end: i + c.len_utf8() + offset });
            continue;
        }
        if c == '-' || c == '=' {
            it.next();
            match it.peek() {
                Some(&(_, '>')) => {
                    it.next();
                    let tok = if c == '-' { Tok::Arrow } else { Tok::FatArrow };
                    out.push(Token { tok, start: i + offset, end: i + 2 + offset });
                    continue;
                }
                _ => return Err(err(i, i + 1, format!("`{c}`"))),
            }
        }
        if c == '"' {
            it.next();
            let mut s = String::new();
            let mut closed = false;
            let mut end = i + 1;
            for (j, d) in it.by_ref() {
                end = j + d.len_utf8();
                if d == '"' {
                    closed = true;
                    break;
                }
                s.push(d);
            }
            if !closed {
                return Err(err(i, end, "unterminated string".into()));
            }
            out.push(Token { tok: Tok::Str(s), start: i + offset, end: end + offset });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = i;
            let mut s = String::new();
            while let Some(&(j, d)) = it.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    end = j + 1;
                    it.next();
                } else {
                    break;
                }
            }
            let n = s.parse().map_err(|_| err(i, end, format!("number `{s}`")))?;
            out.push(Token { tok: Tok::Nat(n), start: i + offset, end: end + offset });
            continue;
        }
        let is_var = c == '?';
        if is_var || ident_char(c) {
            it.next();
            let mut s = String::new();
            if !is_var {
                s.push(c);
            }
            let mut end = i + c.len_utf8();
            while let Some(&(j, d)) = it.peek() {
                if ident_char(d) {
                    s.push(d);
                    end = j + 1;
                    it.next();
                } else {
                    break;
                }
            }
            let tok = if is_var {
                if s.is_empty() {
                    return Err(err(i, end, "`?` without a name".into()));
                }
                if is_upper(&s) {
                    Tok::PVar(s)
                } else {
                    Tok::IVar(s)
                }
            } else {
                Tok::Ident(s)
            };
            out.push(Token { tok, start: i + offset, end: end + offset });
            continue;
        }
        return Err(err(i, i + c.len_utf8(), format!("`{c}`")));
    }
    let end = src.len() + offset;
    out.push(Token { tok: Tok::Eof, start: end, end });
    Ok(out)
}

/// Case of an identifier, ignoring the reserved prefix.
pub(crate) fn is_upper(s: &str) -> bool {
    s.trim_start_matches(crate::syntax::RESERVED_PREFIX)
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_uppercase())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_arrows_and_vars() {
        let t = lex("all ?x. P(?x) -> ?Y", "t", 0).unwrap();
        let toks: Vec<Tok> = t.into_iter().map(|t| t.tok).collect();
        assert_eq!(
            toks,
            vec![
                Tok::Ident("all".into()),
                Tok::IVar("x".into()),
                Tok::Dot,
                Tok::Ident("P".into()),
                Tok::LParen,
                Tok::IVar("x".into()),
                Tok::RParen,
                Tok::Arrow,
                Tok::PVar("Y".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn offsets_are_shifted() {
        let t = lex("A", "t", 10).unwrap();
        assert_eq!((t[0].start, t[0].end), (10, 11));
        assert_eq!(t[1].start, 11);
    }

    #[test]
    fn stray_dash_is_an_error() {
        assert!(lex("A - B", "t", 0).is_err());
    }
}
