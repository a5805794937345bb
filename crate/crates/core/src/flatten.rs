//! Flattening: an injection `♭` of closed formulas into fresh 0-ary atoms,
//! its left inverse `♮`, the simulation bases 𝔍 (intuitionistic) and 𝔎
//! (classical) whose rules mirror the Hilbert calculi on flattened formulas,
//! and the two directions of the simulation: compiling a Hilbert proof into
//! an atomic derivation, and extracting a Hilbert proof back out of one.
//!
//! The schema family behind a simulation base is infinite, so rules are
//! instantiated on demand: [`SimulationBase::instantiate_rules`] for a given
//! finite set of formulas, and [`compile`] for exactly the instances one
//! proof uses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::atomic::{Atom, AtomicRule, Base, DerivationTrace, Justification as AJust};
use crate::hilbert::{
    check_hilbert, rename_eigen_relaxed, AxiomInstance, CheckReport, Eigen, HilbertProof, Justification, SystemId,
    TransformError,
};
use crate::parser::print_formula;
use crate::syntax::{Formula, PVar, Pred, PredRef, Subst, SubstError, Term, RESERVED_PREFIX};

/// Prefix of flattened atoms.
pub const FLAT_PREFIX: &str = "$F";
/// Prefix of eigen constants.
pub const EIGEN_CONST_PREFIX: &str = "$e";
/// Prefix of eigen predicates.
pub const EIGEN_PRED_PREFIX: &str = "$E";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FragmentError {
    #[error("{0} is not closed")]
    Open(String),
    #[error("{0} mentions a flattened atom")]
    Flattened(String),
}

/// The growable injection `♭` with its left inverse `♮`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlatMap {
    forward: BTreeMap<Formula, Atom>,
    back: BTreeMap<String, Formula>,
}

impl FlatMap {
    pub fn new() -> Self {
        FlatMap::default()
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    fn is_flat_name(name: &str) -> bool {
        name.starts_with(FLAT_PREFIX)
    }

    /// `♭φ`. Identity on 0-ary predicate constants; any other closed formula
    /// gets a fresh atom on first use and the same atom afterwards.
    pub fn flat(&mut self, f: &Formula) -> Result<Atom, FragmentError> {
        if !f.is_closed() {
            return Err(FragmentError::Open(print_formula(f)));
        }
        if f.pred_constants().iter().any(|(p, _)| Self::is_flat_name(p)) {
            return Err(FragmentError::Flattened(print_formula(f)));
        }
        if let Formula::Atom(Pred::Const(p), args) = f {
            if args.is_empty() {
                return Ok(Atom::prop(p.clone()));
            }
        }
        if let Some(a) = self.forward.get(f) {
            return Ok(a.clone());
        }
        let name = format!("{FLAT_PREFIX}{}", self.forward.len() + 1);
        let a = Atom::prop(name.clone());
        self.forward.insert(f.clone(), a.clone());
        self.back.insert(name, f.clone());
        Ok(a)
    }

    /// `♭φ` if already assigned, without extending the table.
    pub fn lookup(&self, f: &Formula) -> Option<Atom> {
        match f {
            Formula::Atom(Pred::Const(p), args) if args.is_empty() && !Self::is_flat_name(p) => {
                Some(Atom::prop(p.clone()))
            }
            _ => self.forward.get(f).cloned(),
        }
    }

    /// `♮P`: the formula `P` flattens, or `P` itself off the image.
    pub fn nat(&self, a: &Atom) -> Formula {
        if a.args.is_empty() {
            if let Some(f) = self.back.get(&a.pred) {
                return f.clone();
            }
        }
        a.to_formula()
    }

    /// Two-column export, one `atom<TAB>formula` line per entry.
    pub fn dump(&self) -> String {
        let mut rows: Vec<(usize, &String, &Formula)> = self
            .back
            .iter()
            .map(|(k, f)| (k[FLAT_PREFIX.len()..].parse().unwrap_or(0), k, f))
            .collect();
        rows.sort();
        rows.into_iter()
            .map(|(_, k, f)| format!("{k}\t{}\n", print_formula(f)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimSystem {
    /// Mirrors HI: no DNE row.
    J,
    /// Mirrors HC.
    K,
}

impl SimSystem {
    pub fn of_hilbert(s: SystemId) -> Self {
        match s {
            SystemId::HI => SimSystem::J,
            SystemId::HC => SimSystem::K,
        }
    }

    pub fn hilbert(self) -> SystemId {
        match self {
            SimSystem::J => SystemId::HI,
            SimSystem::K => SystemId::HC,
        }
    }
}

impl fmt::Display for SimSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimSystem::J => "J",
            SimSystem::K => "K",
        })
    }
}

/// Which schema row an atomic rule instantiates, with its slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleOrigin {
    /// A flattened axiom `⇒ ♭A` (DNE included).
    Axiom(AxiomInstance),
    /// `♭φ, ♭(φ → ψ) ⇒ ♭ψ`
    Mp { phi: Formula, psi: Formula },
    /// `♭(φ → ψ) ⇒ ♭(φ → ∀x ψ[e ↦ x])`
    AllI { phi: Formula, psi: Formula, x: String, e: String },
    /// `♭(φ → ψ) ⇒ ♭(φ → ΠX ψ[E ↦ X])`
    PiI { phi: Formula, psi: Formula, x: PVar, e: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationBase {
    pub system: SimSystem,
    pub base: Base,
    pub map: FlatMap,
    pub origins: BTreeMap<AtomicRule, RuleOrigin>,
    next_eigen: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("input proof does not check:\n{0}")]
    Input(CheckReport),
    #[error(transparent)]
    Fragment(#[from] FragmentError),
    #[error("hypothesis or conclusion {0} is not a sentence")]
    Open(String),
    #[error("{0} already uses the reserved prefix `$`")]
    Reserved(String),
    #[error("substitution failed: {0}")]
    Subst(#[from] SubstError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("trace uses a rule that is not a simulation-base instance: {0}")]
    UnknownRule(String),
    #[error("trace does not check against the base")]
    BadTrace,
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("extracted proof does not check:\n{0}")]
    Output(CheckReport),
}

impl SimulationBase {
    pub fn new(system: SimSystem) -> Self {
        let name = match system {
            SimSystem::J => "J",
            SimSystem::K => "K",
        };
        SimulationBase {
            system,
            base: Base::new(name),
            map: FlatMap::new(),
            origins: BTreeMap::new(),
            next_eigen: 0,
        }
    }

    fn add(&mut self, rule: AtomicRule, origin: RuleOrigin) {
        self.base.rules.insert(rule.clone());
        self.origins.entry(rule).or_insert(origin);
    }

    fn fresh_const(&mut self) -> String {
        self.next_eigen += 1;
        format!("{EIGEN_CONST_PREFIX}{}", self.next_eigen)
    }

    fn fresh_pred(&mut self, arity: usize) -> PredRef {
        self.next_eigen += 1;
        PredRef::constant(format!("{EIGEN_PRED_PREFIX}{}", self.next_eigen), arity)
    }

    /// Adds `⇒ ♭A` for an axiom instance. `None` for DNE under 𝔍.
    pub fn axiom_rule(&mut self, inst: &AxiomInstance) -> Result<Option<AtomicRule>, CompileError> {
        if matches!(inst, AxiomInstance::Dne { .. }) && self.system == SimSystem::J {
            return Ok(None);
        }
        let f = inst.formula()?;
        let r = AtomicRule::axiom(self.map.flat(&f)?);
        self.add(r.clone(), RuleOrigin::Axiom(inst.clone()));
        Ok(Some(r))
    }

    pub fn mp_rule(&mut self, phi: &Formula, psi: &Formula) -> Result<AtomicRule, CompileError> {
        let a = self.map.flat(phi)?;
        let ab = self.map.flat(&Formula::imp(phi.clone(), psi.clone()))?;
        let b = self.map.flat(psi)?;
        let r = AtomicRule::simple(vec![a, ab], b);
        self.add(r.clone(), RuleOrigin::Mp { phi: phi.clone(), psi: psi.clone() });
        Ok(r)
    }

    /// `♭(φ → ψ) ⇒ ♭(φ → ∀x ψ[e ↦ x])`, or `None` when a side condition
    /// fails.
    pub fn all_i_rule(&mut self, phi: &Formula, psi: &Formula, x: &str, e: &str) -> Result<Option<AtomicRule>, CompileError> {
        if phi.free_ivars().contains(x) || phi.mentions_const(e) {
            return Ok(None);
        }
        let Ok(body) = psi.replace_const(e, x) else {
            return Ok(None);
        };
        let from = self.map.flat(&Formula::imp(phi.clone(), psi.clone()))?;
        let to = self.map.flat(&Formula::imp(phi.clone(), Formula::forall_i(x, body)))?;
        let r = AtomicRule::simple(vec![from], to);
        self.add(r.clone(), RuleOrigin::AllI { phi: phi.clone(), psi: psi.clone(), x: x.to_string(), e: e.to_string() });
        Ok(Some(r))
    }

    /// `♭(φ → ψ) ⇒ ♭(φ → ΠX ψ[E ↦ X])`, or `None` when a side condition
    /// fails.
    pub fn pi_i_rule(&mut self, phi: &Formula, psi: &Formula, x: &PVar, e: &str) -> Result<Option<AtomicRule>, CompileError> {
        let mentions = |f: &Formula| f.pred_constants().contains(&(e.to_string(), x.arity));
        if phi.free_pvars().contains(x) || mentions(phi) {
            return Ok(None);
        }
        let Ok(body) = psi.replace_pred_const(e, x) else {
            return Ok(None);
        };
        let from = self.map.flat(&Formula::imp(phi.clone(), psi.clone()))?;
        let to = self.map.flat(&Formula::imp(phi.clone(), Formula::forall_p(x.clone(), body)))?;
        let r = AtomicRule::simple(vec![from], to);
        self.add(r.clone(), RuleOrigin::PiI { phi: phi.clone(), psi: psi.clone(), x: x.clone(), e: e.to_string() });
        Ok(Some(r))
    }

    /// Adds every schema instance whose slots are drawn from `needed`
    /// (terms and predicates from the constants and predicate constants
    /// occurring there; eigenvariables from the bound variables occurring
    /// there, plus `x` and `X:n`).
    pub fn instantiate_rules(&mut self, needed: &BTreeSet<Formula>) -> Result<(), CompileError> {
        let fs: Vec<&Formula> = needed.iter().collect();
        let consts: BTreeSet<String> = fs.iter().flat_map(|f| f.constants()).collect();
        let preds: BTreeSet<(String, usize)> = fs.iter().flat_map(|f| f.pred_constants()).collect();
        let mut ivars: BTreeSet<String> = fs.iter().flat_map(|f| f.all_ivars()).collect();
        ivars.insert("x".into());
        let mut pvars: BTreeSet<PVar> = fs.iter().flat_map(|f| f.all_pvars()).collect();
        for (_, n) in &preds {
            pvars.insert(PVar::new("X", *n));
        }
        for &a in &fs {
            if self.system == SimSystem::K {
                self.axiom_rule(&AxiomInstance::Dne { phi: a.clone() })?;
            }
            match a {
                Formula::ForallI(x, body) => {
                    for c in &consts {
                        let inst = AxiomInstance::AllE { x: x.clone(), phi: (**body).clone(), t: Term::constant(c.clone()) };
                        if inst.formula().is_ok_and(|g| g.is_closed()) {
                            self.axiom_rule(&inst)?;
                        }
                    }
                }
                Formula::ForallP(x, body) => {
                    for (p, n) in &preds {
                        if *n == x.arity {
                            let inst = AxiomInstance::PiE { x: x.clone(), phi: (**body).clone(), p: PredRef::constant(p.clone(), *n) };
                            if inst.formula().is_ok_and(|g| g.is_closed()) {
                                self.axiom_rule(&inst)?;
                            }
                        }
                    }
                }
                _ => {}
            }
            for &b in &fs {
                self.axiom_rule(&AxiomInstance::K { phi: a.clone(), psi: b.clone() })?;
                self.axiom_rule(&AxiomInstance::NegI { phi: a.clone(), psi: b.clone() })?;
                self.axiom_rule(&AxiomInstance::Efq { phi: a.clone(), psi: b.clone() })?;
                self.mp_rule(a, b)?;
                for c in &consts {
                    if c.starts_with(EIGEN_CONST_PREFIX) {
                        for x in &ivars {
                            self.all_i_rule(a, b, x, c)?;
                        }
                    }
                }
                for (p, n) in &preds {
                    if p.starts_with(EIGEN_PRED_PREFIX) {
                        for x in pvars.iter().filter(|v| v.arity == *n) {
                            self.pi_i_rule(a, b, x, p)?;
                        }
                    }
                }
                for &c in &fs {
                    self.axiom_rule(&AxiomInstance::S { phi: a.clone(), psi: b.clone(), chi: c.clone() })?;
                }
            }
        }
        Ok(())
    }

    /// Re-checks the side conditions of every generalization instance.
    pub fn audit(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for (r, o) in &self.origins {
            let ok = match o {
                RuleOrigin::AllI { phi, e, x, .. } => !phi.free_ivars().contains(x) && !phi.mentions_const(e),
                RuleOrigin::PiI { phi, e, x, .. } => {
                    !phi.free_pvars().contains(x) && !phi.pred_constants().contains(&(e.clone(), x.arity))
                }
                _ => true,
            };
            if !ok {
                bad.push(r.to_string());
            }
        }
        bad
    }

    pub fn has_dne_rule(&self) -> bool {
        self.origins.values().any(|o| matches!(o, RuleOrigin::Axiom(AxiomInstance::Dne { .. })))
    }
}

fn instance_under(inst: &AxiomInstance, s: &Subst) -> Result<AxiomInstance, SubstError> {
    let without_i = |x: &str| {
        let mut t = s.clone();
        t.ivars.remove(x);
        t
    };
    let without_p = |x: &PVar| {
        let mut t = s.clone();
        t.pvars.remove(x);
        t
    };
    Ok(match inst {
        AxiomInstance::K { phi, psi } => AxiomInstance::K { phi: s.apply(phi)?, psi: s.apply(psi)? },
        AxiomInstance::S { phi, psi, chi } => AxiomInstance::S { phi: s.apply(phi)?, psi: s.apply(psi)?, chi: s.apply(chi)? },
        AxiomInstance::NegI { phi, psi } => AxiomInstance::NegI { phi: s.apply(phi)?, psi: s.apply(psi)? },
        AxiomInstance::Efq { phi, psi } => AxiomInstance::Efq { phi: s.apply(phi)?, psi: s.apply(psi)? },
        AxiomInstance::Dne { phi } => AxiomInstance::Dne { phi: s.apply(phi)? },
        AxiomInstance::AllE { x, phi, t } => AxiomInstance::AllE {
            x: x.clone(),
            phi: without_i(x).apply(phi)?,
            t: s.apply_term(t),
        },
        AxiomInstance::PiE { x, phi, p } => AxiomInstance::PiE {
            x: x.clone(),
            phi: without_p(x).apply(phi)?,
            p: match p {
                PredRef::Var(v) => s.pvars.get(v).cloned().unwrap_or_else(|| p.clone()),
                other => other.clone(),
            },
        },
    })
}

struct Compiler<'p> {
    proof: &'p HilbertProof,
    sim: SimulationBase,
    hyps: BTreeSet<Atom>,
    memo: BTreeMap<(usize, Vec<(String, String)>, Vec<(PVar, String)>), DerivationTrace>,
}

impl Compiler<'_> {
    /// A trace of `♭(F_k σ)`, where `σ` closes every free variable of `F_k`.
    fn step(&mut self, k: usize, s: &Subst) -> Result<DerivationTrace, CompileError> {
        let key = (
            k,
            s.ivars.iter().map(|(a, b)| (a.clone(), b.to_string())).collect(),
            s.pvars.iter().map(|(a, b)| (a.clone(), b.to_string())).collect(),
        );
        if let Some(t) = self.memo.get(&key) {
            return Ok(t.clone());
        }
        let step = &self.proof.steps[k];
        let goal_f = s.apply(&step.formula)?;
        let goal = self.sim.map.flat(&goal_f)?;
        let t = match &step.just {
            Justification::Hyp => DerivationTrace { hyps: self.hyps.clone(), goal, just: AJust::Ref },
            Justification::Axiom(inst) => {
                let inst = instance_under(inst, s)?;
                let rule = self.sim.axiom_rule(&inst)?.expect("DNE only occurs in HC proofs");
                DerivationTrace { hyps: self.hyps.clone(), goal, just: AJust::App { rule, children: vec![] } }
            }
            Justification::Mp(i, j) => {
                let phi = &self.proof.steps[*j].formula;
                let ext = self.close(s, phi);
                let minor = self.step(*j, &ext)?;
                let major = self.step(*i, &ext)?;
                let phi_c = ext.apply(phi)?;
                let rule = self.sim.mp_rule(&phi_c, &goal_f)?;
                DerivationTrace { hyps: self.hyps.clone(), goal, just: AJust::App { rule, children: vec![minor, major] } }
            }
            Justification::Gen1(i, x) => {
                let (psi, theta) = self.proof.steps[*i].formula.as_imp().expect("checked");
                let e = self.sim.fresh_const();
                let mut ext = s.clone();
                ext.ivars.insert(x.clone(), Term::constant(e.clone()));
                let ext = self.close(&ext, &self.proof.steps[*i].formula.clone());
                let sub = self.step(*i, &ext)?;
                let psi_c = ext.apply(psi)?;
                let theta_c = ext.apply(theta)?;
                let rule = self
                    .sim
                    .all_i_rule(&psi_c, &theta_c, x, &e)?
                    .expect("fresh eigen constant satisfies the side condition");
                DerivationTrace { hyps: self.hyps.clone(), goal, just: AJust::App { rule, children: vec![sub] } }
            }
            Justification::Gen2(i, x) => {
                let (psi, theta) = self.proof.steps[*i].formula.as_imp().expect("checked");
                let e = self.sim.fresh_pred(x.arity);
                let PredRef::Const { name: e_name, .. } = &e else { unreachable!() };
                let e_name = e_name.clone();
                let mut ext = s.clone();
                ext.pvars.insert(x.clone(), e);
                let ext = self.close(&ext, &self.proof.steps[*i].formula.clone());
                let sub = self.step(*i, &ext)?;
                let psi_c = ext.apply(psi)?;
                let theta_c = ext.apply(theta)?;
                let rule = self
                    .sim
                    .pi_i_rule(&psi_c, &theta_c, x, &e_name)?
                    .expect("fresh eigen predicate satisfies the side condition");
                DerivationTrace { hyps: self.hyps.clone(), goal, just: AJust::App { rule, children: vec![sub] } }
            }
        };
        self.memo.insert(key, t.clone());
        Ok(t)
    }

    /// Extends `s` with fresh fillers for the free variables of `f` it does
    /// not yet cover.
    fn close(&mut self, s: &Subst, f: &Formula) -> Subst {
        let mut out = s.clone();
        for x in f.free_ivars() {
            if !out.ivars.contains_key(&x) {
                let c = self.sim.fresh_const();
                out.ivars.insert(x, Term::constant(c));
            }
        }
        for v in f.free_pvars() {
            if !out.pvars.contains_key(&v) {
                let p = self.sim.fresh_pred(v.arity);
                out.pvars.insert(v, p);
            }
        }
        out
    }
}

/// Compiles a checking Hilbert proof of a sentence from sentences into a
/// derivation `♭Γ ⊢ ♭φ` in the matching simulation base.
pub fn compile(proof: &HilbertProof) -> Result<(SimulationBase, DerivationTrace), CompileError> {
    check_hilbert(proof.system, proof).map_err(CompileError::Input)?;
    for f in proof.hyps.iter().chain(std::iter::once(&proof.conclusion)) {
        if !f.is_closed() {
            return Err(CompileError::Open(print_formula(f)));
        }
    }
    for s in &proof.steps {
        let reserved = s.formula.constants().into_iter().chain(s.formula.pred_constants().into_iter().map(|(p, _)| p));
        if let Some(r) = reserved.into_iter().find(|n| n.starts_with(RESERVED_PREFIX)) {
            return Err(CompileError::Reserved(r));
        }
    }
    let mut sim = SimulationBase::new(SimSystem::of_hilbert(proof.system));
    let mut hyps = BTreeSet::new();
    for h in &proof.hyps {
        hyps.insert(sim.map.flat(h)?);
    }
    let mut c = Compiler { proof, sim, hyps, memo: BTreeMap::new() };
    let last = proof.steps.len() - 1;
    let t = c.step(last, &Subst::default())?;
    Ok((c.sim, t))
}

/// Reads a Hilbert proof of `♮goal` from `♮hyps` off a trace, by induction
/// on the trace.
pub fn extract(sim: &SimulationBase, trace: &DerivationTrace) -> Result<HilbertProof, ExtractError> {
    if !crate::atomic::check_trace(&sim.base, trace) {
        return Err(ExtractError::BadTrace);
    }
    let system = sim.system.hilbert();
    let hyps: Vec<Formula> = trace.hyps.iter().map(|a| sim.map.nat(a)).collect();
    let mut p = go(sim, trace, system, &hyps)?;
    p.hyps = hyps;
    p.conclusion = sim.map.nat(&trace.goal);
    check_hilbert(system, &p).map_err(ExtractError::Output)?;
    Ok(p)
}

fn go(sim: &SimulationBase, t: &DerivationTrace, system: SystemId, hyps: &[Formula]) -> Result<HilbertProof, ExtractError> {
    let mut p = HilbertProof::new(system, hyps.to_vec());
    match &t.just {
        AJust::Ref => {
            p.hyp(sim.map.nat(&t.goal));
            Ok(p)
        }
        AJust::App { rule, children } => {
            let origin = sim.origins.get(rule).ok_or_else(|| ExtractError::UnknownRule(rule.to_string()))?;
            match origin {
                RuleOrigin::Axiom(inst) => {
                    p.axiom(inst.clone()).map_err(|e| ExtractError::UnknownRule(format!("{rule}: {e}")))?;
                }
                RuleOrigin::Mp { .. } => {
                    let minor = go(sim, &children[0], system, hyps)?;
                    let major = go(sim, &children[1], system, hyps)?;
                    p.splice(&major);
                    let i = p.last().expect("non-empty");
                    p.splice(&minor);
                    let j = p.last().expect("non-empty");
                    p.mp(i, j).map_err(|e| ExtractError::UnknownRule(format!("{rule}: {e}")))?;
                }
                RuleOrigin::AllI { x, e, .. } => {
                    let mut sub = go(sim, &children[0], system, hyps)?;
                    sub.conclusion = sub.steps.last().expect("non-empty").formula.clone();
                    let mut r = rename_eigen_relaxed(&sub, &Eigen::Const(e.clone()), x)?;
                    let last = r.last().expect("non-empty");
                    r.gen1(last, x).map_err(|e| ExtractError::UnknownRule(format!("{rule}: {e}")))?;
                    p = r;
                }
                RuleOrigin::PiI { x, e, .. } => {
                    let mut sub = go(sim, &children[0], system, hyps)?;
                    sub.conclusion = sub.steps.last().expect("non-empty").formula.clone();
                    let mut r = rename_eigen_relaxed(&sub, &Eigen::Pred { name: e.clone(), arity: x.arity }, &x.name)?;
                    let last = r.last().expect("non-empty");
                    r.gen2(last, x).map_err(|e| ExtractError::UnknownRule(format!("{rule}: {e}")))?;
                    p = r;
                }
            }
            Ok(p)
        }
    }
}

/// The simulation base as a base file; the flattened atoms are listed by
/// [`FlatMap::dump`].
pub fn dump_base(sim: &SimulationBase) -> String {
    sim.base.to_string()
}
