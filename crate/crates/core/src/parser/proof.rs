use crate::hilbert::{AxiomInstance, AxiomTag, HilbertProof, Justification, SystemId, Witness};
use crate::natded::{NdProof, NdRule};
use crate::syntax::{Formula, PVar, PredRef};
#[cfg(test)]
use crate::syntax::Term;

use super::formula::formula_list;
use super::lexer::{is_upper, Tok};
use super::{print_formula, Cursor, Signature, SyntaxError};

fn quoted(s: &str) -> String {
    format!("\"{s}\"")
}

/// The script form read by [`parse_hilbert_proof`]. Every step states its
/// formula, and elimination axioms state their instantiand.
pub fn print_hilbert_proof(p: &HilbertProof) -> String {
    let hyps: Vec<String> = p.hyps.iter().map(print_formula).collect();
    let mut out = format!(
        "hilbert {} proof of {} from {}\n",
        p.system,
        quoted(&print_formula(&p.conclusion)),
        quoted(&hyps.join(", "))
    );
    for (k, s) in p.steps.iter().enumerate() {
        let f = quoted(&print_formula(&s.formula));
        let line = match &s.just {
            Justification::Axiom(inst) => match inst.witness() {
                Some(w) => format!("axiom {} {f} with {w}", inst.tag().name()),
                None => format!("axiom {} {f}", inst.tag().name()),
            },
            Justification::Hyp => format!("hyp {f}"),
            Justification::Mp(i, j) => format!("mp {} {} {f}", i + 1, j + 1),
            Justification::Gen1(i, x) => format!("gen1 {} ?{x} {f}", i + 1),
            Justification::Gen2(i, x) => format!("gen2 {} {x} {f}", i + 1),
        };
        out.push_str(&format!("{}. {line}\n", k + 1));
    }
    out
}

fn formula_at(s: &str, offset: usize, sig: &mut Signature) -> Result<Formula, SyntaxError> {
    let mut c = Cursor::new(s, "<input>", offset, sig)?;
    let f = c.surface()?.expand();
    c.expect_eof()?;
    Ok(f)
}

enum RawJust {
    Axiom(AxiomTag, Option<Witness>),
    Hyp,
    Mp(usize, usize),
    Gen1(usize, String),
    Gen2(usize, PVar),
}

fn witness(c: &mut Cursor<'_>) -> Result<Witness, SyntaxError> {
    match c.peek().clone() {
        Tok::PVar(_) => Ok(Witness::Pred(PredRef::Var(c.pvar_decl()?))),
        Tok::Ident(s) if is_upper(&s) => {
            let name = c.ident("a predicate")?;
            // The arity is taken from the quantified variable when the
            // instance is recognized.
            Ok(Witness::Pred(PredRef::constant(name, 0)))
        }
        _ => Ok(Witness::Term(c.term()?)),
    }
}

/// Reads a Hilbert proof script; step numbers are 1-based.
pub fn parse_hilbert_proof(text: &str) -> Result<HilbertProof, SyntaxError> {
    let mut outer = Signature::permissive();
    let mut sig = Signature::new();
    let mut c = Cursor::new(text, "<input>", 0, &mut outer)?;
    c.expect_keyword("hilbert")?;
    let system = match c.ident("HI or HC")?.as_str() {
        "HI" => SystemId::HI,
        "HC" => SystemId::HC,
        _ => return c.fail("HI or HC"),
    };
    c.expect_keyword("proof")?;
    c.expect_keyword("of")?;
    let (concl, off) = c.string("a quoted formula")?;
    let conclusion = formula_at(&concl, off, &mut sig)?;
    let mut hyps = Vec::new();
    if c.is_keyword("from") {
        c.bump();
        let (list, off) = c.string("a quoted list of formulas")?;
        let mut fc = Cursor::new(&list, "<input>", off, &mut sig)?;
        hyps = formula_list(&mut fc)?;
        fc.expect_eof()?;
    }
    let mut raw: Vec<(RawJust, Option<(String, usize)>)> = Vec::new();
    while !c.at_eof() {
        let n = c.nat("a step number")?;
        if n != raw.len() + 1 {
            return Err(SyntaxError::Invalid(format!("step numbered {n} where {} was expected", raw.len() + 1)));
        }
        c.expect(Tok::Dot, "`.` after the step number")?;
        let kw = c.ident("a justification")?;
        let just = match kw.as_str() {
            "axiom" => {
                let name = c.ident("an axiom name")?;
                let tag = AxiomTag::from_name(&name)
                    .ok_or_else(|| SyntaxError::Invalid(format!("step {n}: unknown axiom {name}")))?;
                let f = c.string("a quoted axiom instance")?;
                let w = if c.is_keyword("with") {
                    c.bump();
                    Some(witness(&mut c)?)
                } else {
                    None
                };
                raw.push((RawJust::Axiom(tag, w), Some(f)));
                continue;
            }
            "hyp" => {
                let f = c.string("a quoted formula")?;
                raw.push((RawJust::Hyp, Some(f)));
                continue;
            }
            "mp" => {
                let i = c.nat("a step number")?;
                let j = c.nat("a step number")?;
                RawJust::Mp(i, j)
            }
            "gen1" => {
                let i = c.nat("a step number")?;
                RawJust::Gen1(i, c.ivar()?)
            }
            "gen2" => {
                let i = c.nat("a step number")?;
                RawJust::Gen2(i, c.pvar_decl()?)
            }
            _ => return Err(SyntaxError::Invalid(format!("step {n}: unknown justification {kw}"))),
        };
        let f = match c.peek() {
            Tok::Str(_) => Some(c.string("a quoted formula")?),
            _ => None,
        };
        raw.push((just, f));
    }
    let total = raw.len();
    let mut proof = HilbertProof::new(system, hyps);
    for (k, (just, f)) in raw.into_iter().enumerate() {
        let step = k + 1;
        let stated = match f {
            Some((s, off)) => Some(formula_at(&s, off, &mut sig)?),
            None => None,
        };
        let resolve = |i: usize| -> Result<usize, SyntaxError> {
            if i == 0 || i > total {
                Err(SyntaxError::DanglingReference { step, target: i })
            } else {
                Ok(i - 1)
            }
        };
        let earlier = |proof: &HilbertProof, i: usize| proof.steps.get(i).map(|s| s.formula.clone());
        let (formula, j) = match just {
            RawJust::Hyp => (stated.expect("hyp states its formula"), Justification::Hyp),
            RawJust::Axiom(tag, w) => {
                let f = stated.expect("axiom states its formula");
                let inst = match (&w, tag) {
                    (None, AxiomTag::AllE | AxiomTag::PiE) => {
                        crate::hilbert::elimination_instances(&f).into_iter().find(|i| i.tag() == tag)
                    }
                    _ => AxiomInstance::recognize(tag, &f, w.as_ref()),
                }
                .ok_or_else(|| {
                    SyntaxError::Invalid(format!("step {step}: {} is not an instance of {}", print_formula(&f), tag.name()))
                })?;
                (f, Justification::Axiom(inst))
            }
            RawJust::Mp(i, jj) => {
                let (i, jj) = (resolve(i)?, resolve(jj)?);
                let f = match stated {
                    Some(f) => f,
                    None => earlier(&proof, i)
                        .and_then(|g| g.as_imp().map(|(_, b)| b.clone()))
                        .ok_or_else(|| SyntaxError::Invalid(format!("step {step}: cannot infer the formula of mp")))?,
                };
                (f, Justification::Mp(i, jj))
            }
            RawJust::Gen1(i, x) => {
                let i = resolve(i)?;
                let f = match stated {
                    Some(f) => f,
                    None => earlier(&proof, i)
                        .and_then(|g| g.as_imp().map(|(a, b)| Formula::imp(a.clone(), Formula::forall_i(x.clone(), b.clone()))))
                        .ok_or_else(|| SyntaxError::Invalid(format!("step {step}: cannot infer the formula of gen1")))?,
                };
                (f, Justification::Gen1(i, x))
            }
            RawJust::Gen2(i, x) => {
                let i = resolve(i)?;
                let f = match stated {
                    Some(f) => f,
                    None => earlier(&proof, i)
                        .and_then(|g| g.as_imp().map(|(a, b)| Formula::imp(a.clone(), Formula::forall_p(x.clone(), b.clone()))))
                        .ok_or_else(|| SyntaxError::Invalid(format!("step {step}: cannot infer the formula of gen2")))?,
                };
                (f, Justification::Gen2(i, x))
            }
        };
        proof.push(formula, j);
    }
    proof.conclusion = conclusion;
    Ok(proof)
}

/// The s-expression form read by [`parse_nd_proof`].
pub fn print_nd_proof(p: &NdProof) -> String {
    let mut out = String::from("nd\n");
    nd_node(p, 0, &mut out);
    out.push('\n');
    out
}

fn nd_node(p: &NdProof, depth: usize, out: &mut String) {
    out.push_str(&"  ".repeat(depth));
    out.push('(');
    out.push_str(p.rule.tag());
    match &p.rule {
        NdRule::Hyp(l) | NdRule::ImpI(l) => out.push_str(&format!(" [{l}]")),
        NdRule::AllI(x) => out.push_str(&format!(" ?{x}")),
        NdRule::AllE(t) => out.push_str(&format!(" {t}")),
        NdRule::PiI(x) => out.push_str(&format!(" {x}")),
        NdRule::PiE(q) => out.push_str(&format!(" {q}")),
        NdRule::ImpE | NdRule::Efq | NdRule::Dne => {}
    }
    out.push(' ');
    out.push_str(&quoted(&print_formula(&p.conclusion)));
    for q in &p.premises {
        out.push('\n');
        nd_node(q, depth + 1, out);
    }
    out.push(')');
}

/// Reads an ND script: `nd [NI|NC]` followed by one tree.
pub fn parse_nd_proof(text: &str) -> Result<NdProof, SyntaxError> {
    let mut outer = Signature::permissive();
    let mut sig = Signature::new();
    let mut c = Cursor::new(text, "<input>", 0, &mut outer)?;
    c.expect_keyword("nd")?;
    if c.is_keyword("NI") || c.is_keyword("NC") {
        c.bump();
    }
    let t = nd_tree(&mut c, &mut sig)?;
    c.expect_eof()?;
    Ok(t)
}

fn label(c: &mut Cursor<'_>) -> Result<String, SyntaxError> {
    c.expect(Tok::LBrack, "`[` and a label")?;
    let l = match c.peek().clone() {
        Tok::Ident(s) => {
            c.bump();
            s
        }
        Tok::Nat(n) => {
            c.bump();
            n.to_string()
        }
        _ => return c.fail("a label"),
    };
    c.expect(Tok::RBrack, "`]`")?;
    Ok(l)
}

fn nd_tree(c: &mut Cursor<'_>, sig: &mut Signature) -> Result<NdProof, SyntaxError> {
    c.expect(Tok::LParen, "`(`")?;
    let tag = c.ident("a rule tag")?;
    let mut pending_pred: Option<String> = None;
    let rule = match tag.as_str() {
        "hyp" => NdRule::Hyp(label(c)?),
        "impI" => NdRule::ImpI(label(c)?),
        "impE" => NdRule::ImpE,
        "allI" => NdRule::AllI(c.ivar()?),
        "allE" => NdRule::AllE(c.term()?),
        "piI" => NdRule::PiI(c.pvar_decl()?),
        "piE" => match c.peek().clone() {
            Tok::PVar(_) => NdRule::PiE(PredRef::Var(c.pvar_decl()?)),
            _ => {
                pending_pred = Some(c.ident("a predicate")?);
                NdRule::PiE(PredRef::constant("", 0))
            }
        },
        "efq" => NdRule::Efq,
        "dne" => NdRule::Dne,
        other => return Err(SyntaxError::Invalid(format!("unknown ND rule {other}"))),
    };
    let (s, off) = c.string("a quoted conclusion")?;
    let conclusion = formula_at(&s, off, sig)?;
    let mut premises = Vec::new();
    while *c.peek() == Tok::LParen {
        premises.push(nd_tree(c, sig)?);
    }
    c.expect(Tok::RParen, "`)` or a premise")?;
    let rule = match (rule, pending_pred) {
        (NdRule::PiE(_), Some(name)) => {
            let arity = match premises.first().map(|p| &p.conclusion) {
                Some(Formula::ForallP(x, _)) => x.arity,
                _ => 0,
            };
            NdRule::PiE(PredRef::constant(name, arity))
        }
        (r, _) => r,
    };
    Ok(NdProof { rule, conclusion, premises })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn hilbert_round_trip() {
        let mut pr = HilbertProof::new(SystemId::HI, vec![p("A")]);
        pr.identity(&p("P"));
        pr.hyp(p("A"));
        let text = print_hilbert_proof(&pr);
        assert_eq!(parse_hilbert_proof(&text).unwrap(), pr);
    }

    #[test]
    fn formulas_may_be_omitted() {
        let text = "hilbert HI proof of \"B\" from \"A, A -> B\"\n1. hyp \"A -> B\"\n2. hyp \"A\"\n3. mp 1 2\n";
        let pr = parse_hilbert_proof(text).unwrap();
        assert_eq!(pr.steps[2].formula, p("B"));
    }

    #[test]
    fn dangling_reference() {
        let text = "hilbert HI proof of \"B\" from \"A\"\n1. hyp \"A\"\n2. mp 3 9\n";
        assert!(matches!(parse_hilbert_proof(text), Err(SyntaxError::DanglingReference { target: 3, .. })));
    }

    #[test]
    fn elimination_witness_inferred() {
        let text = "hilbert HI proof of \"(all ?x. P(?x)) -> P(a)\"\n1. axiom AllE \"(all ?x. P(?x)) -> P(a)\"\n";
        let pr = parse_hilbert_proof(text).unwrap();
        assert!(matches!(&pr.steps[0].just, Justification::Axiom(AxiomInstance::AllE { t: Term::Const(c), .. }) if c == "a"));
    }

    #[test]
    fn nd_round_trip() {
        let inner = NdProof::node(NdRule::ImpI("b".into()), Formula::imp(p("B"), p("A")), vec![NdProof::hyp("a", p("A"))]);
        let t = NdProof::node(NdRule::ImpI("a".into()), Formula::imp(p("A"), Formula::imp(p("B"), p("A"))), vec![inner]);
        let text = print_nd_proof(&t);
        assert_eq!(parse_nd_proof(&text).unwrap(), t);
    }
}
