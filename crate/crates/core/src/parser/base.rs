use std::collections::BTreeSet;

use crate::atomic::{Atom, AtomPattern, AtomicRule, Base, Rule, RuleTemplate};

use super::lexer::{is_upper, Tok};
use super::{Cursor, Signature, SyntaxError};

/// A parsed rule: concrete, or a template when `*` occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleItem {
    Rule(AtomicRule),
    Template(RuleTemplate),
}

/// `base NAME { rule* [slice atom, …] }`
pub fn parse_base(text: &str) -> Result<Base, SyntaxError> {
    let mut sig = Signature::permissive();
    let mut c = Cursor::new(text, "<input>", 0, &mut sig)?;
    let b = parse_base_at(&mut c)?;
    c.expect_eof()?;
    Ok(b)
}

/// A single rule such as `([A] => B) => B`.
pub fn parse_rule(text: &str) -> Result<RuleItem, SyntaxError> {
    let mut sig = Signature::permissive();
    let mut c = Cursor::new(text, "<input>", 0, &mut sig)?;
    let r = parse_rule_at(&mut c)?;
    c.expect_eof()?;
    Ok(r)
}

pub(crate) fn parse_base_at(c: &mut Cursor<'_>) -> Result<Base, SyntaxError> {
    c.expect_keyword("base")?;
    let name = c.ident("a base name")?;
    c.expect(Tok::LBrace, "`{`")?;
    let mut base = Base::new(name);
    loop {
        if c.eat(&Tok::RBrace) {
            break;
        }
        if c.is_keyword("slice") {
            c.bump();
            loop {
                base.slice.insert(parse_atom_at(c)?);
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
            continue;
        }
        match parse_rule_at(c)? {
            RuleItem::Rule(r) => {
                base.rules.insert(r);
            }
            RuleItem::Template(t) => {
                base.templates.insert(t);
            }
        }
    }
    Ok(base)
}

/// A closed atom `P` or `P(a,b)`.
pub(crate) fn parse_atom_at(c: &mut Cursor<'_>) -> Result<Atom, SyntaxError> {
    match pattern(c)? {
        AtomPattern::Atom(a) => Ok(a),
        AtomPattern::Any => c.fail("a closed atom (wildcard not allowed here)"),
    }
}

fn pattern(c: &mut Cursor<'_>) -> Result<AtomPattern, SyntaxError> {
    if c.eat(&Tok::Star) {
        return Ok(AtomPattern::Any);
    }
    let span = c.span();
    let pred = match c.peek().clone() {
        Tok::Ident(s) if is_upper(&s) => c.ident("a predicate")?,
        _ => return c.fail("a closed atom or `*`"),
    };
    let mut args = Vec::new();
    // `P ( [` opens a premise of the next rule, not an argument list.
    if *c.peek() == Tok::LParen && *c.peek_at(1) != Tok::LBrack {
        c.bump();
        loop {
            match c.peek().clone() {
                Tok::Ident(s) if !is_upper(&s) => args.push(c.ident("a constant")?),
                _ => return c.fail("an individual constant"),
            }
            if c.eat(&Tok::Comma) {
                continue;
            }
            c.expect(Tok::RParen, "`,` or `)`")?;
            break;
        }
    }
    c.sig.use_pred(&pred, args.len(), &span)?;
    Ok(AtomPattern::Atom(Atom { pred, args }))
}

pub(crate) fn parse_rule_at(c: &mut Cursor<'_>) -> Result<RuleItem, SyntaxError> {
    let mut premises: Vec<(BTreeSet<AtomPattern>, AtomPattern)> = Vec::new();
    if *c.peek() != Tok::FatArrow {
        loop {
            if *c.peek() == Tok::LParen {
                c.bump();
                c.expect(Tok::LBrack, "`[`")?;
                let mut hyps = BTreeSet::new();
                if *c.peek() != Tok::RBrack {
                    loop {
                        hyps.insert(pattern(c)?);
                        if !c.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                c.expect(Tok::RBrack, "`,` or `]`")?;
                c.expect(Tok::FatArrow, "`=>`")?;
                let concl = pattern(c)?;
                c.expect(Tok::RParen, "`)`")?;
                premises.push((hyps, concl));
            } else {
                premises.push((BTreeSet::new(), pattern(c)?));
            }
            if !c.eat(&Tok::Comma) {
                break;
            }
        }
    }
    c.expect(Tok::FatArrow, "`=>`")?;
    let conclusion = pattern(c)?;
    let t: RuleTemplate = Rule { premises, conclusion };
    if t.has_wildcard() {
        Ok(RuleItem::Template(t))
    } else {
        let any = Atom::prop("");
        Ok(RuleItem::Rule(t.instantiate(&any)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aristotle_base() {
        let b = parse_base("base a { => H(s)  H(s) => M(s) }").unwrap();
        assert_eq!(b.rules.len(), 2);
        assert!(b.rules.contains(&AtomicRule::axiom(Atom::new("H", &["s"]))));
        assert!(b
            .rules
            .contains(&AtomicRule::simple(vec![Atom::new("H", &["s"])], Atom::new("M", &["s"]))));
    }

    #[test]
    fn second_level_rule() {
        let RuleItem::Rule(r) = parse_rule("( [A] => B ) => B").unwrap() else {
            panic!("expected a concrete rule");
        };
        assert_eq!(r.level(), 2);
        assert_eq!(r.premises[0].0, [Atom::prop("A")].into_iter().collect());
    }

    #[test]
    fn templates_and_slices() {
        let b = parse_base("base c { ([A] => B) => B  B => *  slice A, B, C }").unwrap();
        assert_eq!(b.templates.len(), 1);
        assert_eq!(b.slice.len(), 3);
    }

    #[test]
    fn display_round_trips() {
        let b = parse_base("base c { ([A, D] => B), C => B  => B  ([A] => B) => B  B => *  slice A }").unwrap();
        let again = parse_base(&b.to_string()).unwrap();
        assert_eq!(b, again);
    }

    #[test]
    fn wildcard_in_slice_rejected() {
        assert!(parse_base("base c { slice * }").is_err());
    }
}
