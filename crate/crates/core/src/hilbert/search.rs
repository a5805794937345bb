//! Iterative-deepening backward search over schema instances.
//!
//! Goals may contain metavariables; axiom schemas are matched by
//! unification, MP introduces a fresh metavariable for its antecedent, and
//! metavariables left over at the end are grounded with `⊥`. Every candidate
//! is re-checked with the proof checker before being returned, so the search
//! is sound by construction. It is not complete: the elimination axioms are
//! only tried on ground goals and generalization only on goals whose
//! consequent is already a quantifier.

use std::rc::Rc;

use crate::syntax::{Formula, PVar, Pred, PredRef, Term};

use super::{check_hilbert, AxiomInstance, HilbertProof, Justification, SystemId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Found(HilbertProof),
    /// Nothing within the step bound. This is not a non-provability claim.
    NotFound { depth: usize },
}

impl SearchResult {
    pub fn proof(&self) -> Option<&HilbertProof> {
        match self {
            SearchResult::Found(p) => Some(p),
            SearchResult::NotFound { .. } => None,
        }
    }
}

/// Looks for a proof of `goal` from `hyps` with at most `depth` steps.
pub fn search(system: SystemId, hyps: &[Formula], goal: &Formula, depth: usize) -> SearchResult {
    let mut s = Searcher {
        system,
        hyps: hyps.iter().map(MF::from_formula).collect(),
        hyp_formulas: hyps.to_vec(),
        bindings: Vec::new(),
        trail: Vec::new(),
    };
    let target = MF::from_formula(goal);
    for bound in 1..=depth {
        let mut found = None;
        let hyps_vec = hyps.to_vec();
        let goal_f = goal.clone();
        s.solve(target.clone(), bound, &mut |s, pt, _| {
            let mut proof = HilbertProof::new(system, hyps_vec.clone());
            s.emit(&pt, &mut proof);
            proof.conclusion = goal_f.clone();
            if check_hilbert(system, &proof).is_ok() {
                found = Some(proof);
                true
            } else {
                false
            }
        });
        if let Some(p) = found {
            return SearchResult::Found(p);
        }
    }
    SearchResult::NotFound { depth }
}

#[derive(Clone, Debug)]
enum MF {
    Atom(Pred, Vec<Term>),
    Imp(Rc<MF>, Rc<MF>),
    ForallI(String, Rc<MF>),
    ForallP(PVar, Rc<MF>),
    Meta(usize),
}

impl MF {
    fn from_formula(f: &Formula) -> MF {
        match f {
            Formula::Atom(p, a) => MF::Atom(p.clone(), a.clone()),
            Formula::Imp(a, b) => MF::Imp(Rc::new(MF::from_formula(a)), Rc::new(MF::from_formula(b))),
            Formula::ForallI(x, b) => MF::ForallI(x.clone(), Rc::new(MF::from_formula(b))),
            Formula::ForallP(x, b) => MF::ForallP(x.clone(), Rc::new(MF::from_formula(b))),
        }
    }

    fn imp(a: MF, b: MF) -> MF {
        MF::Imp(Rc::new(a), Rc::new(b))
    }
}

#[derive(Clone, Debug)]
enum Pt {
    Hyp(usize),
    Axiom(Schema, Vec<MF>),
    Ground(AxiomInstance),
    Mp(Box<Pt>, Box<Pt>),
    Gen1(Box<Pt>, String),
    Gen2(Box<Pt>, PVar),
}

#[derive(Clone, Copy, Debug)]
enum Schema {
    K,
    S,
    NegI,
    Efq,
    Dne,
}

type Cont<'c> = dyn FnMut(&mut Searcher, Pt, usize) -> bool + 'c;

struct Searcher {
    system: SystemId,
    hyps: Vec<MF>,
    hyp_formulas: Vec<Formula>,
    bindings: Vec<Option<MF>>,
    trail: Vec<usize>,
}

impl Searcher {
    fn fresh(&mut self) -> MF {
        self.bindings.push(None);
        MF::Meta(self.bindings.len() - 1)
    }

    fn walk(&self, t: &MF) -> MF {
        let mut t = t.clone();
        while let MF::Meta(m) = t {
            match &self.bindings[m] {
                Some(b) => t = b.clone(),
                None => break,
            }
        }
        t
    }

    fn occurs(&self, m: usize, t: &MF) -> bool {
        match self.walk(t) {
            MF::Meta(n) => n == m,
            MF::Atom(..) => false,
            MF::Imp(a, b) => self.occurs(m, &a) || self.occurs(m, &b),
            MF::ForallI(_, b) | MF::ForallP(_, b) => self.occurs(m, &b),
        }
    }

    fn bind(&mut self, m: usize, t: MF) {
        self.bindings[m] = Some(t);
        self.trail.push(m);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let m = self.trail.pop().unwrap();
            self.bindings[m] = None;
        }
    }

    fn unify(&mut self, a: &MF, b: &MF) -> bool {
        let a = self.walk(a);
        let b = self.walk(b);
        match (&a, &b) {
            (MF::Meta(m), MF::Meta(n)) if m == n => true,
            (MF::Meta(m), t) | (t, MF::Meta(m)) => {
                if self.occurs(*m, t) {
                    false
                } else {
                    self.bind(*m, t.clone());
                    true
                }
            }
            (MF::Atom(p, x), MF::Atom(q, y)) => p == q && x == y,
            (MF::Imp(a1, b1), MF::Imp(a2, b2)) => self.unify(a1, a2) && self.unify(b1, b2),
            (MF::ForallI(x, b1), MF::ForallI(y, b2)) => x == y && self.unify(b1, b2),
            (MF::ForallP(x, b1), MF::ForallP(y, b2)) => x == y && self.unify(b1, b2),
            _ => false,
        }
    }

    /// Fully resolves, grounding unbound metavariables with `⊥`.
    fn resolve(&self, t: &MF) -> Formula {
        match self.walk(t) {
            MF::Meta(_) => Formula::bot(),
            MF::Atom(p, a) => Formula::Atom(p, a),
            MF::Imp(a, b) => Formula::imp(self.resolve(&a), self.resolve(&b)),
            MF::ForallI(x, b) => Formula::forall_i(x, self.resolve(&b)),
            MF::ForallP(x, b) => Formula::forall_p(x, self.resolve(&b)),
        }
    }

    fn ground(&self, t: &MF) -> Option<Formula> {
        match self.walk(t) {
            MF::Meta(_) => None,
            MF::Atom(p, a) => Some(Formula::Atom(p, a)),
            MF::Imp(a, b) => Some(Formula::imp(self.ground(&a)?, self.ground(&b)?)),
            MF::ForallI(x, b) => Some(Formula::forall_i(x, self.ground(&b)?)),
            MF::ForallP(x, b) => Some(Formula::forall_p(x, self.ground(&b)?)),
        }
    }

    fn schema(&mut self, s: Schema) -> (MF, Vec<MF>) {
        let bot = MF::from_formula(&Formula::bot());
        let not = |a: MF| MF::imp(a, bot.clone());
        match s {
            Schema::K => {
                let (a, b) = (self.fresh(), self.fresh());
                (MF::imp(a.clone(), MF::imp(b.clone(), a.clone())), vec![a, b])
            }
            Schema::S => {
                let (a, b, c) = (self.fresh(), self.fresh(), self.fresh());
                let f = MF::imp(
                    MF::imp(a.clone(), MF::imp(b.clone(), c.clone())),
                    MF::imp(MF::imp(a.clone(), b.clone()), MF::imp(a.clone(), c.clone())),
                );
                (f, vec![a, b, c])
            }
            Schema::NegI => {
                let (a, b) = (self.fresh(), self.fresh());
                let f = MF::imp(
                    MF::imp(a.clone(), b.clone()),
                    MF::imp(MF::imp(a.clone(), not(b.clone())), not(a.clone())),
                );
                (f, vec![a, b])
            }
            Schema::Efq => {
                let (a, b) = (self.fresh(), self.fresh());
                let f = MF::imp(MF::imp(a.clone(), bot.clone()), MF::imp(a.clone(), b.clone()));
                (f, vec![a, b])
            }
            Schema::Dne => {
                let a = self.fresh();
                (MF::imp(not(not(a.clone())), a.clone()), vec![a])
            }
        }
    }

    fn solve(&mut self, goal: MF, budget: usize, k: &mut Cont<'_>) -> bool {
        if budget == 0 {
            return false;
        }
        for i in 0..self.hyps.len() {
            let mark = self.trail.len();
            let h = self.hyps[i].clone();
            if self.unify(&goal, &h) && k(self, Pt::Hyp(i), 1) {
                return true;
            }
            self.undo(mark);
        }
        let mut schemas = vec![Schema::K, Schema::S, Schema::NegI, Schema::Efq];
        if self.system.admits_dne() {
            schemas.push(Schema::Dne);
        }
        for sc in schemas {
            let mark = self.trail.len();
            let (f, slots) = self.schema(sc);
            if self.unify(&goal, &f) && k(self, Pt::Axiom(sc, slots), 1) {
                return true;
            }
            self.undo(mark);
        }
        if let Some(g) = self.ground(&goal) {
            for inst in elimination_instances(&g) {
                if k(self, Pt::Ground(inst), 1) {
                    return true;
                }
            }
        }
        if budget >= 2 {
            if let MF::Imp(psi, rest) = self.walk(&goal) {
                match self.walk(&rest) {
                    MF::ForallI(x, theta) => {
                        let sub = MF::Imp(psi.clone(), theta.clone());
                        let found = self.solve(sub, budget - 1, &mut |s, pt, used| {
                            k(s, Pt::Gen1(Box::new(pt), x.clone()), used + 1)
                        });
                        if found {
                            return true;
                        }
                    }
                    MF::ForallP(x, theta) => {
                        let sub = MF::Imp(psi.clone(), theta.clone());
                        let found = self.solve(sub, budget - 1, &mut |s, pt, used| {
                            k(s, Pt::Gen2(Box::new(pt), x.clone()), used + 1)
                        });
                        if found {
                            return true;
                        }
                    }
                    _ => {}
                }
            }
        }
        if budget >= 3 {
            let m = self.fresh();
            let major = MF::imp(m.clone(), goal.clone());
            return self.solve(major, budget - 2, &mut |s, pt1, u1| {
                s.solve(m.clone(), budget - 1 - u1, &mut |s, pt2, u2| {
                    k(s, Pt::Mp(Box::new(pt1.clone()), Box::new(pt2)), 1 + u1 + u2)
                })
            });
        }
        false
    }

    /// Appends the steps of `pt` and returns the index of its last step.
    fn emit(&self, pt: &Pt, out: &mut HilbertProof) -> usize {
        match pt {
            Pt::Hyp(i) => out.push(self.hyp_formulas[*i].clone(), Justification::Hyp),
            Pt::Ground(inst) => out.axiom(inst.clone()).expect("instance computed from a ground goal"),
            Pt::Axiom(sc, slots) => {
                let r: Vec<Formula> = slots.iter().map(|s| self.resolve(s)).collect();
                let inst = match sc {
                    Schema::K => AxiomInstance::K { phi: r[0].clone(), psi: r[1].clone() },
                    Schema::S => AxiomInstance::S { phi: r[0].clone(), psi: r[1].clone(), chi: r[2].clone() },
                    Schema::NegI => AxiomInstance::NegI { phi: r[0].clone(), psi: r[1].clone() },
                    Schema::Efq => AxiomInstance::Efq { phi: r[0].clone(), psi: r[1].clone() },
                    Schema::Dne => AxiomInstance::Dne { phi: r[0].clone() },
                };
                out.axiom_unchecked(inst)
            }
            Pt::Mp(major, minor) => {
                let i = self.emit(major, out);
                let j = self.emit(minor, out);
                // A malformed candidate is caught by the final check.
                out.mp(i, j).unwrap_or_else(|_| out.push(Formula::bot(), Justification::Mp(i, j)))
            }
            Pt::Gen1(sub, x) => {
                let i = self.emit(sub, out);
                out.gen1(i, x).unwrap_or_else(|_| out.push(Formula::bot(), Justification::Gen1(i, x.clone())))
            }
            Pt::Gen2(sub, x) => {
                let i = self.emit(sub, out);
                out.gen2(i, x).unwrap_or_else(|_| out.push(Formula::bot(), Justification::Gen2(i, x.clone())))
            }
        }
    }
}

/// AllE/PiE instances whose formula is exactly `g`.
pub(crate) fn elimination_instances(g: &Formula) -> Vec<AxiomInstance> {
    let Some((a, b)) = g.as_imp() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    match a {
        Formula::ForallI(x, phi) => {
            let mut cands: Vec<Term> = Vec::new();
            collect_terms_at(phi, b, x, &mut cands);
            if cands.is_empty() {
                cands.push(Term::Var(x.clone()));
            }
            for t in cands {
                let inst = AxiomInstance::AllE { x: x.clone(), phi: (**phi).clone(), t };
                if inst.formula().ok().as_ref() == Some(g) && !out.contains(&inst) {
                    out.push(inst);
                }
            }
        }
        Formula::ForallP(x, phi) => {
            let mut cands: Vec<PredRef> = Vec::new();
            collect_preds_at(phi, b, x, &mut cands);
            if cands.is_empty() {
                cands.push(PredRef::Var(x.clone()));
            }
            for p in cands {
                let inst = AxiomInstance::PiE { x: x.clone(), phi: (**phi).clone(), p };
                if inst.formula().ok().as_ref() == Some(g) && !out.contains(&inst) {
                    out.push(inst);
                }
            }
        }
        _ => {}
    }
    out
}

/// Terms of `inst` found where `pat` has a free `x`.
fn collect_terms_at(pat: &Formula, inst: &Formula, x: &str, out: &mut Vec<Term>) {
    match (pat, inst) {
        (Formula::Atom(_, a1), Formula::Atom(_, a2)) if a1.len() == a2.len() => {
            for (s, t) in a1.iter().zip(a2) {
                if matches!(s, Term::Var(v) if v == x) && !out.contains(t) {
                    out.push(t.clone());
                }
            }
        }
        (Formula::Imp(a1, b1), Formula::Imp(a2, b2)) => {
            collect_terms_at(a1, a2, x, out);
            collect_terms_at(b1, b2, x, out);
        }
        (Formula::ForallI(y, b1), Formula::ForallI(_, b2)) if y != x => collect_terms_at(b1, b2, x, out),
        (Formula::ForallP(_, b1), Formula::ForallP(_, b2)) => collect_terms_at(b1, b2, x, out),
        _ => {}
    }
}

fn collect_preds_at(pat: &Formula, inst: &Formula, x: &PVar, out: &mut Vec<PredRef>) {
    match (pat, inst) {
        (Formula::Atom(Pred::Var(v), a1), Formula::Atom(q, _)) if *v == x.name && a1.len() == x.arity => {
            let r = match q {
                Pred::Const(c) => PredRef::constant(c.clone(), x.arity),
                Pred::Var(w) => PredRef::Var(PVar::new(w.clone(), x.arity)),
            };
            if !out.contains(&r) {
                out.push(r);
            }
        }
        (Formula::Imp(a1, b1), Formula::Imp(a2, b2)) => {
            collect_preds_at(a1, a2, x, out);
            collect_preds_at(b1, b2, x, out);
        }
        (Formula::ForallI(_, b1), Formula::ForallI(_, b2)) => collect_preds_at(b1, b2, x, out),
        (Formula::ForallP(y, b1), Formula::ForallP(_, b2)) if y != x => collect_preds_at(b1, b2, x, out),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn dne_found_in_hc() {
        let g = Formula::imp(Formula::not(Formula::not(p("P"))), p("P"));
        let r = search(SystemId::HC, &[], &g, 2);
        let pr = r.proof().expect("found");
        assert!(pr.uses_dne());
        assert!(pr.len() <= 2);
    }

    #[test]
    fn identity_found_in_hi() {
        let g = Formula::imp(p("P"), p("P"));
        let r = search(SystemId::HI, &[], &g, 6);
        let pr = r.proof().expect("found");
        assert!(check_hilbert(SystemId::HI, pr).is_ok());
    }

    #[test]
    fn hypotheses_and_mp() {
        let ab = Formula::imp(p("A"), p("B"));
        let r = search(SystemId::HI, &[p("A"), ab], &p("B"), 3);
        assert!(r.proof().is_some());
    }

    #[test]
    fn forall_elimination_on_ground_goal() {
        let px = Formula::atom("P", vec![Term::var("x")]);
        let g = Formula::imp(Formula::forall_i("x", px), Formula::atom("P", vec![Term::constant("a")]));
        assert!(search(SystemId::HI, &[], &g, 1).proof().is_some());
    }
}
