use crate::syntax::{Formula, PVar, Pred, Surface, Term};

use super::lexer::{is_upper, lex, Tok, Token};
use super::{ParseError, Signature, SourceSpan, SyntaxError};

/// A token stream with the signature it populates.
pub(crate) struct Cursor<'s> {
    toks: Vec<Token>,
    pos: usize,
    pub file: String,
    pub sig: &'s mut Signature,
}

impl<'s> Cursor<'s> {
    pub fn new(src: &str, file: &str, offset: usize, sig: &'s mut Signature) -> Result<Self, SyntaxError> {
        Ok(Cursor { toks: lex(src, file, offset)?, pos: 0, file: file.to_string(), sig })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub fn token(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn span(&self) -> SourceSpan {
        let t = self.token();
        SourceSpan { file: self.file.clone(), start: t.start, end: t.end }
    }

    pub fn fail<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse(ParseError {
            span: self.span(),
            expected: expected.to_string(),
            found: self.peek().describe(),
        }))
    }

    pub fn expect(&mut self, tok: Tok, expected: &str) -> Result<Token, SyntaxError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            self.fail(expected)
        }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("`{kw}`"))
        }
    }

    pub fn expect_eof(&mut self) -> Result<(), SyntaxError> {
        if self.at_eof() {
            Ok(())
        } else {
            self.fail("end of input")
        }
    }

    fn check_reserved(&self, name: &str) -> Result<(), SyntaxError> {
        if !self.sig.allow_reserved && name.starts_with(crate::syntax::RESERVED_PREFIX) {
            Err(SyntaxError::Reserved { span: self.span(), name: name.to_string() })
        } else {
            Ok(())
        }
    }

    pub fn ident(&mut self, expected: &str) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.check_reserved(&s)?;
                self.bump();
                Ok(s)
            }
            _ => self.fail(expected),
        }
    }

    pub fn nat(&mut self, expected: &str) -> Result<usize, SyntaxError> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(expected),
        }
    }

    /// A quoted string and the byte offset of its contents.
    pub fn string(&mut self, expected: &str) -> Result<(String, usize), SyntaxError> {
        match self.peek().clone() {
            Tok::Str(s) => {
                let t = self.bump();
                Ok((s, t.start + 1))
            }
            _ => self.fail(expected),
        }
    }

    pub fn ivar(&mut self) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::IVar(s) => {
                self.check_reserved(&s)?;
                self.bump();
                Ok(s)
            }
            _ => self.fail("an individual variable `?x`"),
        }
    }

    /// `?X:n`
    pub fn pvar_decl(&mut self) -> Result<PVar, SyntaxError> {
        let name = match self.peek().clone() {
            Tok::PVar(s) => {
                self.check_reserved(&s)?;
                self.bump();
                s
            }
            _ => return self.fail("a predicate variable `?X`"),
        };
        self.expect(Tok::Colon, "`:` and an arity")?;
        let n = self.nat("an arity")?;
        Ok(PVar::new(name, n))
    }

    pub fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::IVar(s) => {
                self.check_reserved(&s)?;
                self.bump();
                Ok(Term::Var(s))
            }
            Tok::Ident(s) if !is_upper(&s) => {
                self.check_reserved(&s)?;
                self.bump();
                Ok(Term::Const(s))
            }
            _ => self.fail("a term"),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, SyntaxError> {
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.term()?);
                if self.eat(&Tok::Comma) {
                    continue;
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                break;
            }
        }
        Ok(args)
    }

    pub fn surface(&mut self) -> Result<Surface, SyntaxError> {
        let a = self.or()?;
        if self.eat(&Tok::Arrow) {
            let b = self.surface()?;
            Ok(Surface::imp(a, b))
        } else {
            Ok(a)
        }
    }

    fn or(&mut self) -> Result<Surface, SyntaxError> {
        let a = self.and()?;
        if self.eat(&Tok::Bar) {
            Ok(Surface::or(a, self.or()?))
        } else {
            Ok(a)
        }
    }

    fn and(&mut self) -> Result<Surface, SyntaxError> {
        let a = self.unary()?;
        if self.eat(&Tok::Amp) {
            Ok(Surface::and(a, self.and()?))
        } else {
            Ok(a)
        }
    }

    fn unary(&mut self) -> Result<Surface, SyntaxError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Surface::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.surface()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Bot => {
                self.bump();
                Ok(Surface::Bot)
            }
            Tok::Ident(k) if k == "bot" => {
                self.bump();
                Ok(Surface::Bot)
            }
            Tok::Ident(k) if k == "all" || k == "ex" => {
                self.bump();
                let x = self.ivar()?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.surface()?;
                Ok(if k == "all" {
                    Surface::ForallI(x, Box::new(body))
                } else {
                    Surface::exists_i(x, body)
                })
            }
            Tok::Ident(k) if k == "ALL" || k == "EX" => {
                self.bump();
                let x = self.pvar_decl()?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.surface()?;
                Ok(if k == "ALL" {
                    Surface::ForallP(x, Box::new(body))
                } else {
                    Surface::exists_p(x, body)
                })
            }
            Tok::Forall | Tok::Pi | Tok::Exists => {
                let q = self.bump().tok;
                let second = matches!(self.peek(), Tok::PVar(_));
                if second {
                    let x = self.pvar_decl()?;
                    self.expect(Tok::Dot, "`.`")?;
                    let body = self.surface()?;
                    Ok(if q == Tok::Exists {
                        Surface::exists_p(x, body)
                    } else {
                        Surface::ForallP(x, Box::new(body))
                    })
                } else {
                    if q == Tok::Pi {
                        return self.fail("a predicate variable after `Π`");
                    }
                    let x = self.ivar()?;
                    self.expect(Tok::Dot, "`.`")?;
                    let body = self.surface()?;
                    Ok(if q == Tok::Exists {
                        Surface::exists_i(x, body)
                    } else {
                        Surface::ForallI(x, Box::new(body))
                    })
                }
            }
            Tok::PVar(name) => {
                self.check_reserved(&name)?;
                self.bump();
                let args = self.args()?;
                Ok(Surface::Atom(Pred::Var(name), args))
            }
            Tok::Ident(name) if is_upper(&name) => {
                self.check_reserved(&name)?;
                let span = self.span();
                self.bump();
                let args = self.args()?;
                self.sig.use_pred(&name, args.len(), &span)?;
                Ok(Surface::Atom(Pred::Const(name), args))
            }
            _ => self.fail("a formula"),
        }
    }
}

/// Parses a formula, keeping derived connectives.
pub fn parse_surface(text: &str, sig: &mut Signature) -> Result<Surface, SyntaxError> {
    let mut c = Cursor::new(text, "<input>", 0, sig)?;
    let f = c.surface()?;
    c.expect_eof()?;
    Ok(f)
}

/// Parses a formula and expands derived connectives with the default
/// encodings.
pub fn parse_formula(text: &str, sig: &mut Signature) -> Result<Formula, SyntaxError> {
    parse_surface(text, sig).map(|s| s.expand())
}

/// A comma-separated list of formulas (possibly empty).
pub fn parse_formula_list(text: &str, sig: &mut Signature) -> Result<Vec<Formula>, SyntaxError> {
    let mut c = Cursor::new(text, "<input>", 0, sig)?;
    let out = formula_list(&mut c)?;
    c.expect_eof()?;
    Ok(out)
}

pub(crate) fn formula_list(c: &mut Cursor<'_>) -> Result<Vec<Formula>, SyntaxError> {
    let mut out = Vec::new();
    if c.at_eof() {
        return Ok(out);
    }
    loop {
        out.push(c.surface()?.expand());
        if !c.eat(&Tok::Comma) {
            break;
        }
    }
    Ok(out)
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut sig = Signature::permissive();
    let mut c = Cursor::new(text, "<input>", 0, &mut sig)?;
    let t = c.term()?;
    c.expect_eof()?;
    Ok(t)
}
