//! A fixed collection of Hilbert-style theorems with hand-built proofs.
//!
//! The intuitionistic part exercises every axiom schema and both
//! generalization rules; the classical part needs DNE. Every proof is
//! closed (no hypotheses), so it can be compiled into a simulation base.

use crate::hilbert::{check_hilbert, deduction_intro, AxiomInstance, HilbertProof, SystemId};
use crate::parser::{parse_formula, Signature};
use crate::syntax::{Formula, PVar, PredRef, Term};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub system: SystemId,
    pub proof: HilbertProof,
}

fn f(s: &str) -> Formula {
    parse_formula(s, &mut Signature::new()).unwrap_or_else(|e| panic!("corpus formula {s:?}: {e}"))
}

/// Small wrapper that keeps corpus proofs readable.
struct Script {
    p: HilbertProof,
}

impl Script {
    fn new(system: SystemId, hyps: &[&str]) -> Self {
        Script { p: HilbertProof::new(system, hyps.iter().map(|h| f(h)).collect()) }
    }

    fn hyp(&mut self, s: &str) -> usize {
        self.p.hyp(f(s))
    }

    fn ax(&mut self, inst: AxiomInstance) -> usize {
        self.p.axiom(inst).expect("corpus axiom instance")
    }

    fn k(&mut self, a: &str, b: &str) -> usize {
        self.ax(AxiomInstance::K { phi: f(a), psi: f(b) })
    }

    fn all_e(&mut self, x: &str, body: &str, t: Term) -> usize {
        self.ax(AxiomInstance::AllE { x: x.into(), phi: f(body), t })
    }

    fn mp(&mut self, i: usize, j: usize) -> usize {
        self.p.mp(i, j).expect("corpus MP")
    }

    fn gen1(&mut self, i: usize, x: &str) -> usize {
        self.p.gen1(i, x).expect("corpus Gen1")
    }

    fn gen2(&mut self, i: usize, x: &PVar) -> usize {
        self.p.gen2(i, x).expect("corpus Gen2")
    }

    fn identity(&mut self, a: &str) -> usize {
        self.p.identity(&f(a))
    }

    /// Applies the deduction theorem to the hypothesis `h`; returns the
    /// index of the resulting last step.
    fn discharge(&mut self, h: &str) -> usize {
        self.p = deduction_intro(&self.p, &f(h)).unwrap_or_else(|e| panic!("discharging {h}: {e}"));
        self.p.last().expect("non-empty")
    }

    fn done(self, name: &'static str) -> CorpusEntry {
        if let Err(r) = check_hilbert(self.p.system, &self.p) {
            panic!("corpus proof {name} does not check: {r}");
        }
        CorpusEntry { name, system: self.p.system, proof: self.p }
    }
}

fn x() -> Term {
    Term::var("x")
}

fn intuitionistic() -> Vec<CorpusEntry> {
    use SystemId::HI;
    let mut out = Vec::new();

    let mut s = Script::new(HI, &[]);
    s.k("A", "B");
    out.push(s.done("k-instance"));

    let mut s = Script::new(HI, &[]);
    s.ax(AxiomInstance::S { phi: f("A"), psi: f("B"), chi: f("C") });
    out.push(s.done("s-instance"));

    let mut s = Script::new(HI, &[]);
    s.identity("A");
    out.push(s.done("identity"));

    let mut s = Script::new(HI, &[]);
    s.all_e("x", "P(?x)", Term::constant("a"));
    out.push(s.done("all-elim-instance"));

    let mut s = Script::new(HI, &[]);
    s.ax(AxiomInstance::PiE { x: PVar::new("X", 0), phi: f("?X"), p: PredRef::constant("A", 0) });
    out.push(s.done("pi-elim-instance"));

    let mut s = Script::new(HI, &[]);
    s.ax(AxiomInstance::NegI { phi: f("A"), psi: f("B") });
    out.push(s.done("neg-intro-instance"));

    let mut s = Script::new(HI, &[]);
    s.ax(AxiomInstance::Efq { phi: f("A"), psi: f("B") });
    out.push(s.done("efq-instance"));

    // A → ∀x (P(x) → P(x))
    let mut s = Script::new(HI, &[]);
    let id = s.identity("P(?x)");
    let k = s.k("P(?x) -> P(?x)", "A");
    let m = s.mp(k, id);
    s.gen1(m, "x");
    out.push(s.done("gen1-identity"));

    // A → ΠX (X → X)
    let mut s = Script::new(HI, &[]);
    let id = s.identity("?X");
    let k = s.k("?X -> ?X", "A");
    let m = s.mp(k, id);
    s.gen2(m, &PVar::new("X", 0));
    out.push(s.done("gen2-identity"));

    // A → ΠX ∀x (X(x) → X(x))
    let mut s = Script::new(HI, &[]);
    let id = s.identity("?X(?x)");
    let k = s.k("?X(?x) -> ?X(?x)", "A");
    let m = s.mp(k, id);
    let g = s.gen1(m, "x");
    s.gen2(g, &PVar::new("X", 1));
    out.push(s.done("gen-both"));

    let mut s = Script::new(HI, &["A -> B", "B -> C", "A"]);
    let a = s.hyp("A");
    let ab = s.hyp("A -> B");
    let b = s.mp(ab, a);
    let bc = s.hyp("B -> C");
    s.mp(bc, b);
    s.discharge("A");
    s.discharge("B -> C");
    s.discharge("A -> B");
    out.push(s.done("syllogism"));

    let mut s = Script::new(HI, &["A"]);
    s.identity("B");
    s.discharge("A");
    out.push(s.done("weak-identity"));

    let mut s = Script::new(HI, &[]);
    let e = s.all_e("x", "P(?x)", x());
    s.gen1(e, "x");
    out.push(s.done("all-to-all"));

    let mut s = Script::new(HI, &["all ?x. all ?y. R(?x,?y)"]);
    let h = s.hyp("all ?x. all ?y. R(?x,?y)");
    let e1 = s.all_e("x", "all ?y. R(?x,?y)", x());
    let m1 = s.mp(e1, h);
    let e2 = s.all_e("y", "R(?x,?y)", Term::var("y"));
    s.mp(e2, m1);
    let d = s.discharge("all ?x. all ?y. R(?x,?y)");
    let g = s.gen1(d, "x");
    s.gen1(g, "y");
    out.push(s.done("quantifier-swap"));

    let mut s = Script::new(HI, &["all ?x. (P(?x) -> B)", "P(a)"]);
    let h = s.hyp("all ?x. (P(?x) -> B)");
    let e = s.all_e("x", "P(?x) -> B", Term::constant("a"));
    let m = s.mp(e, h);
    let pa = s.hyp("P(a)");
    s.mp(m, pa);
    s.discharge("P(a)");
    s.discharge("all ?x. (P(?x) -> B)");
    out.push(s.done("instance-mp"));

    let mut s = Script::new(HI, &[]);
    let e = s.all_e("x", "P(?x)", Term::var("y"));
    s.gen1(e, "y");
    out.push(s.done("bound-rename"));

    let mut s = Script::new(HI, &[]);
    s.ax(AxiomInstance::PiE { x: PVar::new("X", 1), phi: f("?X(a)"), p: PredRef::constant("P", 1) });
    out.push(s.done("pi-elim-unary"));

    let mut s = Script::new(HI, &["bot"]);
    let h = s.hyp("bot");
    let k = s.k("bot", "A");
    s.mp(k, h);
    s.discharge("bot");
    out.push(s.done("bot-implies-negation"));

    let mut s = Script::new(HI, &["A", "~A"]);
    let na = s.hyp("~A");
    let a = s.hyp("A");
    s.mp(na, a);
    s.discharge("~A");
    s.discharge("A");
    out.push(s.done("double-negation-intro"));

    let mut s = Script::new(HI, &["A -> B", "~B", "A"]);
    let a = s.hyp("A");
    let ab = s.hyp("A -> B");
    let b = s.mp(ab, a);
    let nb = s.hyp("~B");
    s.mp(nb, b);
    s.discharge("A");
    s.discharge("~B");
    s.discharge("A -> B");
    out.push(s.done("contraposition"));

    let mut s = Script::new(HI, &["A", "~A"]);
    let efq = s.ax(AxiomInstance::Efq { phi: f("A"), psi: f("B") });
    let na = s.hyp("~A");
    let m = s.mp(efq, na);
    let a = s.hyp("A");
    s.mp(m, a);
    s.discharge("~A");
    s.discharge("A");
    out.push(s.done("explosion"));

    // ΠX ∀x X(x) → ΠX ∀x X(x), through the instance X ↦ X
    let mut s = Script::new(HI, &[]);
    let xv = PVar::new("X", 1);
    let e = s.ax(AxiomInstance::PiE { x: xv.clone(), phi: f("all ?x. ?X(?x)"), p: PredRef::Var(xv.clone()) });
    s.gen2(e, &xv);
    out.push(s.done("pi-to-pi"));

    let mut s = Script::new(HI, &["A -> ~A"]);
    let negi = s.ax(AxiomInstance::NegI { phi: f("A"), psi: f("A") });
    let id = s.identity("A");
    let m = s.mp(negi, id);
    let h = s.hyp("A -> ~A");
    s.mp(m, h);
    s.discharge("A -> ~A");
    out.push(s.done("self-refutation"));

    out
}

fn classical() -> Vec<CorpusEntry> {
    use SystemId::HC;
    let mut out = Vec::new();

    let mut s = Script::new(HC, &[]);
    s.ax(AxiomInstance::Dne { phi: f("A") });
    out.push(s.done("dne-instance"));

    let mut s = Script::new(HC, &["~~A"]);
    let d = s.ax(AxiomInstance::Dne { phi: f("A") });
    let h = s.hyp("~~A");
    let a = s.mp(d, h);
    let k = s.k("A", "B");
    s.mp(k, a);
    s.discharge("~~A");
    out.push(s.done("dne-weakened"));

    let mut s = Script::new(HC, &["~B -> ~A", "A", "~B"]);
    let nb = s.hyp("~B");
    let c = s.hyp("~B -> ~A");
    let na = s.mp(c, nb);
    let a = s.hyp("A");
    s.mp(na, a);
    s.discharge("~B");
    let nnb = s.p.last().expect("non-empty");
    let d = s.ax(AxiomInstance::Dne { phi: f("B") });
    s.mp(d, nnb);
    s.discharge("A");
    s.discharge("~B -> ~A");
    out.push(s.done("classical-contraposition"));

    let mut s = Script::new(HC, &[]);
    let e = s.all_e("x", "~~P(?x)", x());
    let d = s.ax(AxiomInstance::Dne { phi: f("P(?x)") });
    let k = s.k("~~P(?x) -> P(?x)", "all ?x. ~~P(?x)");
    let kd = s.mp(k, d);
    let sx = s.ax(AxiomInstance::S { phi: f("all ?x. ~~P(?x)"), psi: f("~~P(?x)"), chi: f("P(?x)") });
    let m = s.mp(sx, kd);
    let m = s.mp(m, e);
    s.gen1(m, "x");
    out.push(s.done("dne-under-all"));

    let mut s = Script::new(HC, &[]);
    let d = s.ax(AxiomInstance::Dne { phi: f("?X") });
    let k = s.k("~~?X -> ?X", "A");
    let m = s.mp(k, d);
    s.gen2(m, &PVar::new("X", 0));
    out.push(s.done("dne-under-pi"));

    let mut s = Script::new(HC, &[]);
    s.ax(AxiomInstance::Dne { phi: f("A -> B") });
    out.push(s.done("dne-implication"));

    out
}

/// The intuitionistic theorems (provable in HI).
pub fn hi_corpus() -> Vec<CorpusEntry> {
    intuitionistic()
}

/// Theorems whose proofs use DNE.
pub fn hc_corpus() -> Vec<CorpusEntry> {
    classical()
}

/// Both parts, intuitionistic first.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut v = intuitionistic();
    v.extend(classical());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{AxiomTag, Justification};

    #[test]
    fn every_entry_is_a_closed_theorem() {
        for e in corpus() {
            assert!(e.proof.hyps.is_empty(), "{}", e.name);
            assert!(e.proof.conclusion.is_closed(), "{}", e.name);
            assert!(check_hilbert(e.system, &e.proof).is_ok(), "{}", e.name);
        }
    }

    #[test]
    fn hi_part_covers_every_schema_and_rule() {
        let hi = hi_corpus();
        assert!(hi.len() >= 20);
        let mut tags = std::collections::BTreeSet::new();
        let (mut g1, mut g2) = (false, false);
        for e in &hi {
            for st in &e.proof.steps {
                match &st.just {
                    Justification::Axiom(i) => {
                        tags.insert(i.tag());
                    }
                    Justification::Gen1(..) => g1 = true,
                    Justification::Gen2(..) => g2 = true,
                    _ => {}
                }
            }
        }
        for t in [AxiomTag::K, AxiomTag::S, AxiomTag::AllE, AxiomTag::PiE, AxiomTag::NegI, AxiomTag::Efq] {
            assert!(tags.contains(&t), "{t:?} missing");
        }
        assert!(g1 && g2);
    }

    #[test]
    fn hc_part_needs_dne() {
        let hc = hc_corpus();
        assert!(hc.len() >= 5);
        for e in &hc {
            assert!(e.proof.uses_dne(), "{}", e.name);
            assert!(check_hilbert(SystemId::HI, &e.proof).is_err());
        }
    }
}
