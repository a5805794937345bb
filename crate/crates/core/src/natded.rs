//! Natural deduction systems NI and NC, the checker, and the translations
//! to and from the Hilbert calculi.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::hilbert::{
    check_hilbert, deduction_intro, weaken, AxiomInstance, CheckReport, HilbertProof, Justification,
    SystemId, TransformError,
};
use crate::parser::print_formula;
use crate::syntax::{Formula, PVar, PredRef, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NdSystem {
    NI,
    NC,
}

impl NdSystem {
    pub fn admits_dne(self) -> bool {
        self == NdSystem::NC
    }

    pub fn hilbert(self) -> SystemId {
        match self {
            NdSystem::NI => SystemId::HI,
            NdSystem::NC => SystemId::HC,
        }
    }

    pub fn of_hilbert(s: SystemId) -> Self {
        match s {
            SystemId::HI => NdSystem::NI,
            SystemId::HC => NdSystem::NC,
        }
    }
}

impl fmt::Display for NdSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NdSystem::NI => "NI",
            NdSystem::NC => "NC",
        })
    }
}

impl std::str::FromStr for NdSystem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "NI" => Ok(NdSystem::NI),
            "NC" => Ok(NdSystem::NC),
            other => Err(format!("unknown natural deduction system {other:?} (expected NI or NC)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NdRule {
    /// An assumption leaf. It is discharged by the nearest enclosing
    /// `ImpI` with the same label, and open otherwise.
    Hyp(String),
    ImpI(String),
    ImpE,
    AllI(String),
    AllE(Term),
    PiI(PVar),
    PiE(PredRef),
    Efq,
    Dne,
}

impl NdRule {
    pub fn tag(&self) -> &'static str {
        match self {
            NdRule::Hyp(_) => "hyp",
            NdRule::ImpI(_) => "impI",
            NdRule::ImpE => "impE",
            NdRule::AllI(_) => "allI",
            NdRule::AllE(_) => "allE",
            NdRule::PiI(_) => "piI",
            NdRule::PiE(_) => "piE",
            NdRule::Efq => "efq",
            NdRule::Dne => "dne",
        }
    }

    fn arity(&self) -> usize {
        match self {
            NdRule::Hyp(_) => 0,
            NdRule::ImpE => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NdProof {
    pub rule: NdRule,
    pub conclusion: Formula,
    pub premises: Vec<NdProof>,
}

impl NdProof {
    pub fn hyp(label: impl Into<String>, f: Formula) -> Self {
        NdProof { rule: NdRule::Hyp(label.into()), conclusion: f, premises: Vec::new() }
    }

    pub fn node(rule: NdRule, conclusion: Formula, premises: Vec<NdProof>) -> Self {
        NdProof { rule, conclusion, premises }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(|p| p.size()).sum::<usize>()
    }

    /// Assumption leaves not discharged inside this tree, as (label, formula).
    pub fn open_leaves(&self) -> BTreeSet<(String, Formula)> {
        let mut out = BTreeSet::new();
        self.collect_open(&mut Vec::new(), &mut out);
        out
    }

    /// The formulas of the open assumption leaves.
    pub fn open_assumptions(&self) -> BTreeSet<Formula> {
        self.open_leaves().into_iter().map(|(_, f)| f).collect()
    }

    fn collect_open(&self, bound: &mut Vec<String>, out: &mut BTreeSet<(String, Formula)>) {
        match &self.rule {
            NdRule::Hyp(l) => {
                if !bound.contains(l) {
                    out.insert((l.clone(), self.conclusion.clone()));
                }
            }
            NdRule::ImpI(l) => {
                bound.push(l.clone());
                for p in &self.premises {
                    p.collect_open(bound, out);
                }
                bound.pop();
            }
            _ => {
                for p in &self.premises {
                    p.collect_open(bound, out);
                }
            }
        }
    }

    pub fn uses_dne(&self) -> bool {
        self.rule == NdRule::Dne || self.premises.iter().any(|p| p.uses_dne())
    }
}

/// One problem at a node; `path` lists premise indices from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdError {
    pub path: Vec<usize>,
    pub message: String,
}

impl fmt::Display for NdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(f, "node /{}: {}", p.join("/"), self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdReport {
    pub errors: Vec<NdError>,
}

impl fmt::Display for NdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.errors.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for NdReport {}

/// Checks every node; the report lists all failing nodes.
pub fn check_nd(system: NdSystem, proof: &NdProof) -> Result<(), NdReport> {
    let mut errors = Vec::new();
    let mut labels: BTreeMap<String, Formula> = BTreeMap::new();
    check_node(system, proof, &mut Vec::new(), &mut Vec::new(), &mut labels, &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(NdReport { errors })
    }
}

fn check_node(
    system: NdSystem,
    node: &NdProof,
    path: &mut Vec<usize>,
    scope: &mut Vec<(String, Formula)>,
    open_labels: &mut BTreeMap<String, Formula>,
    errors: &mut Vec<NdError>,
) {
    let mut err = |msg: String| errors.push(NdError { path: path.clone(), message: msg });
    let c = &node.conclusion;
    let ps: Vec<&Formula> = node.premises.iter().map(|p| &p.conclusion).collect();
    if ps.len() != node.rule.arity() {
        err(format!("{} takes {} premise(s), found {}", node.rule.tag(), node.rule.arity(), ps.len()));
    } else {
        let show = print_formula;
        match &node.rule {
            NdRule::Hyp(l) => match scope.iter().rev().find(|(m, _)| m == l) {
                Some((_, f)) if f != c => err(format!(
                    "leaf [{l}] states {} but its discharge is of {}",
                    show(c),
                    show(f)
                )),
                Some(_) => {}
                None => match open_labels.get(l) {
                    Some(f) if f != c => err(format!("open label [{l}] used for both {} and {}", show(f), show(c))),
                    Some(_) => {}
                    None => {
                        open_labels.insert(l.clone(), c.clone());
                    }
                },
            },
            NdRule::ImpI(l) => {
                if scope.iter().any(|(m, _)| m == l) {
                    err(format!("label [{l}] is already discharged by an enclosing impI"));
                }
                match c.as_imp() {
                    Some((_, b)) if b == ps[0] => {}
                    Some(_) => err(format!("impI: consequent should be {}", show(ps[0]))),
                    None => err("impI: conclusion is not an implication".into()),
                }
            }
            NdRule::ImpE => match ps[0].as_imp() {
                Some((a, b)) if a == ps[1] && b == c => {}
                _ => err(format!(
                    "impE: major premise should be {} -> {}",
                    show(ps[1]),
                    show(c)
                )),
            },
            NdRule::AllI(x) => {
                if *c != Formula::forall_i(x.clone(), ps[0].clone()) {
                    err(format!("allI: conclusion should be all ?{x}. ({})", show(ps[0])));
                }
                let open = node.premises[0].open_leaves();
                if let Some((l, f)) = open.iter().find(|(_, f)| f.free_ivars().contains(x)) {
                    err(format!("allI: eigenvariable ?{x} is free in open hypothesis [{l}] {}", show(f)));
                }
            }
            NdRule::AllE(t) => match ps[0] {
                Formula::ForallI(x, body) => match body.subst_ind(x, t) {
                    Ok(g) if g == *c => {}
                    Ok(g) => err(format!("allE: conclusion should be {}", show(&g))),
                    Err(e) => err(format!("allE: {e}")),
                },
                _ => err("allE: premise is not a first-order universal".into()),
            },
            NdRule::PiI(x) => {
                if *c != Formula::forall_p(x.clone(), ps[0].clone()) {
                    err(format!("piI: conclusion should be ALL {x}. ({})", show(ps[0])));
                }
                let open = node.premises[0].open_leaves();
                if let Some((l, f)) = open.iter().find(|(_, f)| f.free_pvars().contains(x)) {
                    err(format!("piI: eigenvariable {x} is free in open hypothesis [{l}] {}", show(f)));
                }
            }
            NdRule::PiE(p) => match ps[0] {
                Formula::ForallP(x, body) => match body.subst_pred(x, p) {
                    Ok(g) if g == *c => {}
                    Ok(g) => err(format!("piE: conclusion should be {}", show(&g))),
                    Err(e) => err(format!("piE: {e}")),
                },
                _ => err("piE: premise is not a second-order universal".into()),
            },
            NdRule::Efq => {
                if *ps[0] != Formula::bot() {
                    err("efq: premise is not bot".into());
                }
            }
            NdRule::Dne => {
                if !system.admits_dne() {
                    err(format!("DNE not in {system}"));
                }
                if *ps[0] != Formula::not(Formula::not(c.clone())) {
                    err(format!("dne: premise should be ~~({})", show(c)));
                }
            }
        }
    }
    let pushed = match (&node.rule, c.as_imp()) {
        (NdRule::ImpI(l), Some((a, _))) => {
            scope.push((l.clone(), a.clone()));
            true
        }
        _ => false,
    };
    for (i, p) in node.premises.iter().enumerate() {
        path.push(i);
        check_node(system, p, path, scope, open_labels, errors);
        path.pop();
    }
    if pushed {
        scope.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("input Hilbert proof does not check:\n{0}")]
    HilbertInput(CheckReport),
    #[error("input ND proof does not check:\n{0}")]
    NdInput(NdReport),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("translated ND proof does not check (this is a bug):\n{0}")]
    NdOutput(NdReport),
    #[error("translated Hilbert proof does not check:\n{0}")]
    HilbertOutput(CheckReport),
    #[error("DNE occurs but the target system is {0}")]
    WrongSystem(String),
}

/// Translates a checking Hilbert proof into an ND tree in the paired system,
/// with the hypotheses as open leaves labelled `h1`, `h2`, … in order.
pub fn hilbert_to_nd(proof: &HilbertProof) -> Result<NdProof, TranslateError> {
    check_hilbert(proof.system, proof).map_err(TranslateError::HilbertInput)?;
    let mut fresh = 0usize;
    let mut trees: Vec<NdProof> = Vec::with_capacity(proof.steps.len());
    let hyp_label = |f: &Formula| {
        let i = proof.hyps.iter().position(|h| h == f).expect("checked");
        format!("h{}", i + 1)
    };
    for s in &proof.steps {
        let t = match &s.just {
            Justification::Hyp => NdProof::hyp(hyp_label(&s.formula), s.formula.clone()),
            Justification::Axiom(inst) => axiom_tree(inst, &s.formula, &mut fresh),
            Justification::Mp(i, j) => {
                NdProof::node(NdRule::ImpE, s.formula.clone(), vec![trees[*i].clone(), trees[*j].clone()])
            }
            Justification::Gen1(i, x) => {
                let (psi, phi) = proof.steps[*i].formula.as_imp().expect("checked");
                let d = next_label(&mut fresh);
                let inner = NdProof::node(NdRule::ImpE, phi.clone(), vec![trees[*i].clone(), NdProof::hyp(&d, psi.clone())]);
                let all = NdProof::node(NdRule::AllI(x.clone()), Formula::forall_i(x.clone(), phi.clone()), vec![inner]);
                NdProof::node(NdRule::ImpI(d), s.formula.clone(), vec![all])
            }
            Justification::Gen2(i, x) => {
                let (psi, phi) = proof.steps[*i].formula.as_imp().expect("checked");
                let d = next_label(&mut fresh);
                let inner = NdProof::node(NdRule::ImpE, phi.clone(), vec![trees[*i].clone(), NdProof::hyp(&d, psi.clone())]);
                let all = NdProof::node(NdRule::PiI(x.clone()), Formula::forall_p(x.clone(), phi.clone()), vec![inner]);
                NdProof::node(NdRule::ImpI(d), s.formula.clone(), vec![all])
            }
        };
        trees.push(t);
    }
    let out = trees.pop().expect("checked proofs are non-empty");
    check_nd(NdSystem::of_hilbert(proof.system), &out).map_err(TranslateError::NdOutput)?;
    Ok(out)
}

fn next_label(fresh: &mut usize) -> String {
    *fresh += 1;
    format!("d{fresh}")
}

/// The ND derivation of an axiom instance.
fn axiom_tree(inst: &AxiomInstance, f: &Formula, fresh: &mut usize) -> NdProof {
    let imp = Formula::imp;
    let impi = |l: &str, concl: Formula, p: NdProof| NdProof::node(NdRule::ImpI(l.to_string()), concl, vec![p]);
    let impe = |concl: Formula, a: NdProof, b: NdProof| NdProof::node(NdRule::ImpE, concl, vec![a, b]);
    match inst {
        AxiomInstance::K { phi, psi } => {
            let (a, b) = (next_label(fresh), next_label(fresh));
            let inner = impi(&b, imp(psi.clone(), phi.clone()), NdProof::hyp(&a, phi.clone()));
            impi(&a, f.clone(), inner)
        }
        AxiomInstance::S { phi, psi, chi } => {
            let (a, b, c) = (next_label(fresh), next_label(fresh), next_label(fresh));
            let ha = NdProof::hyp(&a, imp(phi.clone(), imp(psi.clone(), chi.clone())));
            let hb = NdProof::hyp(&b, imp(phi.clone(), psi.clone()));
            let hc = || NdProof::hyp(&c, phi.clone());
            let psi_chi = impe(imp(psi.clone(), chi.clone()), ha, hc());
            let psi_t = impe(psi.clone(), hb, hc());
            let chi_t = impe(chi.clone(), psi_chi, psi_t);
            let t1 = impi(&c, imp(phi.clone(), chi.clone()), chi_t);
            let t2 = impi(&b, imp(imp(phi.clone(), psi.clone()), imp(phi.clone(), chi.clone())), t1);
            impi(&a, f.clone(), t2)
        }
        AxiomInstance::AllE { x, phi, t } => {
            let (_, concl) = f.as_imp().expect("axiom shape");
            let a = next_label(fresh);
            let all = Formula::forall_i(x.clone(), phi.clone());
            let e = NdProof::node(NdRule::AllE(t.clone()), concl.clone(), vec![NdProof::hyp(&a, all)]);
            impi(&a, f.clone(), e)
        }
        AxiomInstance::PiE { x, phi, p } => {
            let (_, concl) = f.as_imp().expect("axiom shape");
            let a = next_label(fresh);
            let all = Formula::forall_p(x.clone(), phi.clone());
            let e = NdProof::node(NdRule::PiE(p.clone()), concl.clone(), vec![NdProof::hyp(&a, all)]);
            impi(&a, f.clone(), e)
        }
        AxiomInstance::NegI { phi, psi } => {
            let (a, b, c) = (next_label(fresh), next_label(fresh), next_label(fresh));
            let not_psi = Formula::not(psi.clone());
            let ha = NdProof::hyp(&a, imp(phi.clone(), psi.clone()));
            let hb = NdProof::hyp(&b, imp(phi.clone(), not_psi.clone()));
            let hc = || NdProof::hyp(&c, phi.clone());
            let np = impe(not_psi.clone(), hb, hc());
            let p = impe(psi.clone(), ha, hc());
            let bot = impe(Formula::bot(), np, p);
            let t1 = impi(&c, Formula::not(phi.clone()), bot);
            let t2 = impi(&b, imp(imp(phi.clone(), not_psi), Formula::not(phi.clone())), t1);
            impi(&a, f.clone(), t2)
        }
        AxiomInstance::Efq { phi, psi } => {
            let (a, c) = (next_label(fresh), next_label(fresh));
            let ha = NdProof::hyp(&a, Formula::not(phi.clone()));
            let bot = impe(Formula::bot(), ha, NdProof::hyp(&c, phi.clone()));
            let e = NdProof::node(NdRule::Efq, psi.clone(), vec![bot]);
            let t1 = impi(&c, imp(phi.clone(), psi.clone()), e);
            impi(&a, f.clone(), t1)
        }
        AxiomInstance::Dne { phi } => {
            let a = next_label(fresh);
            let nn = Formula::not(Formula::not(phi.clone()));
            let d = NdProof::node(NdRule::Dne, phi.clone(), vec![NdProof::hyp(&a, nn)]);
            impi(&a, f.clone(), d)
        }
    }
}

/// `⊤ := ⊥ → ⊥`, used to give generalization an antecedent.
fn top() -> Formula {
    Formula::imp(Formula::bot(), Formula::bot())
}

/// Translates a checking ND tree into a Hilbert proof in the paired system
/// whose hypotheses are the open assumptions of the tree.
pub fn nd_to_hilbert(tree: &NdProof, system: NdSystem) -> Result<HilbertProof, TranslateError> {
    check_nd(system, tree).map_err(TranslateError::NdInput)?;
    let mut out = translate(tree, system.hilbert())?;
    let open = tree.open_assumptions();
    out.hyps = open.into_iter().collect();
    check_hilbert(out.system, &out).map_err(TranslateError::HilbertOutput)?;
    Ok(out)
}

fn translate(node: &NdProof, sys: SystemId) -> Result<HilbertProof, TranslateError> {
    let c = node.conclusion.clone();
    let sub = |i: usize| translate(&node.premises[i], sys);
    // Appends `inst` and detaches it against the last step of `p`.
    let detach = |mut p: HilbertProof, inst: AxiomInstance| -> HilbertProof {
        let last = p.last().expect("non-empty");
        let ax = p.axiom(inst).expect("instance formula was checked");
        p.mp(ax, last).expect("axiom is an implication");
        p
    };
    let mut p = match &node.rule {
        NdRule::Hyp(_) => {
            let mut p = HilbertProof::new(sys, vec![c.clone()]);
            p.hyp(c.clone());
            p
        }
        NdRule::ImpE => {
            let mut p = sub(0)?;
            let i = p.last().expect("non-empty");
            let q = sub(1)?;
            let map = p.splice(&q);
            p.mp(i, *map.last().expect("non-empty")).expect("major premise is an implication");
            p
        }
        NdRule::ImpI(_) => {
            let (a, _) = c.as_imp().expect("checked");
            let p = sub(0)?;
            let mut q = deduction_intro(&p, a)?;
            if node.open_assumptions().contains(a) {
                q = weaken(&q, std::slice::from_ref(a))?;
            }
            q
        }
        NdRule::AllI(x) => {
            let mut p = sub(0)?;
            let theta = node.premises[0].conclusion.clone();
            let last = p.last().expect("non-empty");
            let k = p.axiom_unchecked(AxiomInstance::K { phi: theta, psi: top() });
            let m = p.mp(k, last).expect("K");
            let g = p.gen1(m, x).expect("implication");
            let t = p.identity(&Formula::bot());
            p.mp(g, t).expect("implication");
            p
        }
        NdRule::PiI(x) => {
            let mut p = sub(0)?;
            let theta = node.premises[0].conclusion.clone();
            let last = p.last().expect("non-empty");
            let k = p.axiom_unchecked(AxiomInstance::K { phi: theta, psi: top() });
            let m = p.mp(k, last).expect("K");
            let g = p.gen2(m, x).expect("implication");
            let t = p.identity(&Formula::bot());
            p.mp(g, t).expect("implication");
            p
        }
        NdRule::AllE(t) => match &node.premises[0].conclusion {
            Formula::ForallI(x, body) => detach(
                sub(0)?,
                AxiomInstance::AllE { x: x.clone(), phi: (**body).clone(), t: t.clone() },
            ),
            _ => unreachable!("checked"),
        },
        NdRule::PiE(pr) => match &node.premises[0].conclusion {
            Formula::ForallP(x, body) => detach(
                sub(0)?,
                AxiomInstance::PiE { x: x.clone(), phi: (**body).clone(), p: pr.clone() },
            ),
            _ => unreachable!("checked"),
        },
        NdRule::Efq => {
            // ⊥ ⊢ ⊤ → ⊥ by K, then EFQ gives ⊤ → ψ, then detach ⊤.
            let mut p = sub(0)?;
            let last = p.last().expect("non-empty");
            let k = p.axiom_unchecked(AxiomInstance::K { phi: Formula::bot(), psi: top() });
            let tb = p.mp(k, last).expect("K");
            let e = p.axiom_unchecked(AxiomInstance::Efq { phi: top(), psi: c.clone() });
            let tc = p.mp(e, tb).expect("EFQ");
            let t = p.identity(&Formula::bot());
            p.mp(tc, t).expect("implication");
            p
        }
        NdRule::Dne => {
            if !sys.admits_dne() {
                return Err(TranslateError::WrongSystem(sys.to_string()));
            }
            detach(sub(0)?, AxiomInstance::Dne { phi: c.clone() })
        }
    };
    p.conclusion = c;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    fn k_tree(phi: Formula, psi: Formula) -> NdProof {
        let inner = NdProof::node(
            NdRule::ImpI("b".into()),
            Formula::imp(psi.clone(), phi.clone()),
            vec![NdProof::hyp("a", phi.clone())],
        );
        NdProof::node(NdRule::ImpI("a".into()), Formula::imp(phi.clone(), Formula::imp(psi, phi)), vec![inner])
    }

    #[test]
    fn k_tree_checks() {
        let t = k_tree(p("A"), p("B"));
        assert!(check_nd(NdSystem::NI, &t).is_ok());
        assert!(t.open_assumptions().is_empty());
    }

    #[test]
    fn negi_tree_checks() {
        let mut fresh = 0;
        let inst = AxiomInstance::NegI { phi: p("A"), psi: p("B") };
        let f = inst.formula().unwrap();
        let t = axiom_tree(&inst, &f, &mut fresh);
        assert!(check_nd(NdSystem::NI, &t).is_ok());
    }

    #[test]
    fn dne_rejected_in_ni() {
        let nn = Formula::not(Formula::not(p("A")));
        let t = NdProof::node(NdRule::Dne, p("A"), vec![NdProof::hyp("h", nn)]);
        assert!(check_nd(NdSystem::NI, &t).is_err());
        assert!(check_nd(NdSystem::NC, &t).is_ok());
    }

    #[test]
    fn wrong_discharge_rejected() {
        let t = NdProof::node(
            NdRule::ImpI("a".into()),
            Formula::imp(p("A"), p("B")),
            vec![NdProof::hyp("a", p("B"))],
        );
        assert!(check_nd(NdSystem::NI, &t).is_err());
    }

    #[test]
    fn eigenvariable_condition() {
        let px = Formula::atom("P", vec![Term::var("x")]);
        let t = NdProof::node(NdRule::AllI("x".into()), Formula::forall_i("x", px.clone()), vec![NdProof::hyp("h", px)]);
        let e = check_nd(NdSystem::NI, &t).unwrap_err();
        assert!(e.to_string().contains("eigenvariable"));
    }

    #[test]
    fn every_axiom_translates() {
        let px = Formula::atom("P", vec![Term::var("x")]);
        let x1 = PVar::new("X", 1);
        let insts = vec![
            AxiomInstance::K { phi: p("A"), psi: p("B") },
            AxiomInstance::S { phi: p("A"), psi: p("B"), chi: p("C") },
            AxiomInstance::AllE { x: "x".into(), phi: px, t: Term::constant("a") },
            AxiomInstance::PiE {
                x: x1.clone(),
                phi: Formula::pvar_atom(&x1, vec![Term::constant("a")]).unwrap(),
                p: PredRef::constant("Q", 1),
            },
            AxiomInstance::NegI { phi: p("A"), psi: p("B") },
            AxiomInstance::Efq { phi: p("A"), psi: p("B") },
            AxiomInstance::Dne { phi: p("A") },
        ];
        for inst in insts {
            let mut pr = HilbertProof::new(SystemId::HC, vec![]);
            pr.axiom(inst).unwrap();
            let nd = hilbert_to_nd(&pr).unwrap();
            let back = nd_to_hilbert(&nd, NdSystem::NC).unwrap();
            assert_eq!(back.conclusion, pr.conclusion);
        }
    }

    #[test]
    fn single_leaf_to_hilbert() {
        let t = NdProof::hyp("h", p("A"));
        let h = nd_to_hilbert(&t, NdSystem::NI).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.hyps, vec![p("A")]);
    }

    #[test]
    fn k_tree_to_hilbert() {
        let h = nd_to_hilbert(&k_tree(p("A"), p("B")), NdSystem::NI).unwrap();
        assert!(check_hilbert(SystemId::HI, &h).is_ok());
        assert!(h.hyps.is_empty());
    }

    #[test]
    fn generalization_round_trip() {
        let mut pr = HilbertProof::new(SystemId::HI, vec![]);
        let k = pr.axiom_unchecked(AxiomInstance::K { phi: p("Q"), psi: p("Q") });
        pr.gen1(k, "x").unwrap();
        assert!(check_hilbert(SystemId::HI, &pr).is_ok());
        let nd = hilbert_to_nd(&pr).unwrap();
        let back = nd_to_hilbert(&nd, NdSystem::NI).unwrap();
        assert_eq!(back.conclusion, pr.conclusion);
    }
}
