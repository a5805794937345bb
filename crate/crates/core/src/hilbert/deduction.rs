use thiserror::Error;

use crate::parser::print_formula;
use crate::syntax::{Formula, PVar, PredRef, SubstError, Term};

use super::{check_hilbert, AxiomInstance, CheckReport, HilbertProof, Justification};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("input proof does not check:\n{0}")]
    InputDoesNotCheck(CheckReport),
    #[error("conclusion {0} is not an implication")]
    NotImplication(String),
    #[error("step {step}: cannot commute generalization past the discharged hypothesis: {reason}")]
    Blocked { step: usize, reason: String },
    #[error("freshness: {0}")]
    Freshness(String),
    #[error("transformed proof does not check (this is a bug):\n{0}")]
    OutputDoesNotCheck(CheckReport),
}

/// An eigen symbol to be turned back into a variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Eigen {
    Const(String),
    Pred { name: String, arity: usize },
}

impl Eigen {
    fn occurs_in(&self, f: &Formula) -> bool {
        match self {
            Eigen::Const(c) => f.mentions_const(c),
            Eigen::Pred { name, arity } => f.pred_constants().contains(&(name.clone(), *arity)),
        }
    }
}

fn ensure_checks(p: &HilbertProof) -> Result<(), TransformError> {
    check_hilbert(p.system, p).map_err(TransformError::InputDoesNotCheck)
}

fn finish(p: HilbertProof) -> Result<HilbertProof, TransformError> {
    check_hilbert(p.system, &p).map_err(TransformError::OutputDoesNotCheck)?;
    Ok(p)
}

/// From `φ→A` at step `i` and `A→B` at step `j`, derive `φ→B`.
fn compose(out: &mut HilbertProof, phi: &Formula, i: usize, j: usize) -> usize {
    let phi_a = out.steps[i].formula.clone();
    let (_, a) = phi_a.as_imp().expect("compose: φ→A");
    let ab = out.steps[j].formula.clone();
    let (_, b) = ab.as_imp().expect("compose: A→B");
    let (a, b) = (a.clone(), b.clone());
    let k = out.axiom_unchecked(AxiomInstance::K { phi: ab.clone(), psi: phi.clone() });
    let lifted = out.mp(k, j).expect("K");
    let s = out.axiom_unchecked(AxiomInstance::S { phi: phi.clone(), psi: a, chi: b });
    let m = out.mp(s, lifted).expect("S");
    out.mp(m, i).expect("S")
}

struct Intro<'a> {
    src: &'a HilbertProof,
    phi: &'a Formula,
    dep: Vec<bool>,
    out: HilbertProof,
    plain: Vec<Option<usize>>,
    lifted: Vec<Option<usize>>,
}

impl Intro<'_> {
    fn lifted(&mut self, k: usize) -> usize {
        if let Some(i) = self.lifted[k] {
            return i;
        }
        let p = self.plain[k].expect("independent steps are copied before use");
        let chi = self.src.steps[k].formula.clone();
        let kk = self.out.axiom_unchecked(AxiomInstance::K { phi: chi, psi: self.phi.clone() });
        let i = self.out.mp(kk, p).expect("K");
        self.lifted[k] = Some(i);
        i
    }

    fn copy_plain(&mut self, k: usize) {
        let s = &self.src.steps[k];
        let map = |i: usize| self.plain[i].expect("premises of an independent step are independent");
        let just = match &s.just {
            Justification::Mp(i, j) => Justification::Mp(map(*i), map(*j)),
            Justification::Gen1(i, x) => Justification::Gen1(map(*i), x.clone()),
            Justification::Gen2(i, x) => Justification::Gen2(map(*i), x.clone()),
            other => other.clone(),
        };
        let idx = self.out.push(s.formula.clone(), just);
        self.plain[k] = Some(idx);
    }

    /// A step of the output stating `ψ` that does not rest on `φ`.
    fn independent_proof_of(&mut self, psi: &Formula, before: usize) -> Option<usize> {
        if let Some(l) = (0..before).find(|&l| !self.dep[l] && self.src.steps[l].formula == *psi) {
            return self.plain[l];
        }
        if let Some((a, b)) = psi.as_imp() {
            if a == b {
                let a = a.clone();
                return Some(self.out.identity(&a));
            }
        }
        None
    }

    /// Handles a generalization step `ψ→θ ⟹ ψ→Qθ` that rests on `φ`, where
    /// `quantify` builds `Qθ` and `gen` applies the rule to an output step.
    fn generalize(
        &mut self,
        k: usize,
        i: usize,
        quantify: &dyn Fn(Formula) -> Formula,
        gen: &dyn Fn(&mut HilbertProof, usize) -> usize,
    ) -> Result<usize, TransformError> {
        let src_i = self.src.steps[i].formula.clone();
        let (psi, theta) = src_i.as_imp().expect("checked input");
        let (psi, theta) = (psi.clone(), theta.clone());
        let li = self.lifted(i);
        let phi = self.phi.clone();
        let q_theta = quantify(theta.clone());
        if psi == phi {
            // φ→(φ→θ) contracts to φ→θ.
            let s = self.out.axiom_unchecked(AxiomInstance::S {
                phi: phi.clone(),
                psi: phi.clone(),
                chi: theta,
            });
            let m = self.out.mp(s, li).expect("S");
            let id = self.out.identity(&phi);
            let t = self.out.mp(m, id).expect("S");
            let g = gen(&mut self.out, t);
            let kk = self.out.axiom_unchecked(AxiomInstance::K {
                phi: Formula::imp(phi.clone(), q_theta),
                psi: phi,
            });
            return Ok(self.out.mp(kk, g).expect("K"));
        }
        let Some(pp) = self.independent_proof_of(&psi, i) else {
            return Err(TransformError::Blocked {
                step: k + 1,
                reason: format!(
                    "antecedent {} is neither the discharged hypothesis nor provable without it",
                    print_formula(&psi)
                ),
            });
        };
        // φ→ψ from ψ, then φ→θ by S, generalize, and weaken back to φ→(ψ→Qθ).
        let kk = self.out.axiom_unchecked(AxiomInstance::K { phi: psi.clone(), psi: phi.clone() });
        let phi_psi = self.out.mp(kk, pp).expect("K");
        let s = self.out.axiom_unchecked(AxiomInstance::S {
            phi: phi.clone(),
            psi: psi.clone(),
            chi: theta,
        });
        let m = self.out.mp(s, li).expect("S");
        let t = self.out.mp(m, phi_psi).expect("S");
        let g = gen(&mut self.out, t);
        let k2 = self.out.axiom_unchecked(AxiomInstance::K { phi: q_theta, psi });
        Ok(compose(&mut self.out, &phi, g, k2))
    }
}

/// Turns a proof of `ψ` from `{φ} ∪ Γ` into a proof of `φ → ψ` from `Γ`.
///
/// Generalization steps that rest on `φ` are commuted past the new
/// implication when their antecedent is `φ` itself or is provable without
/// `φ`; any other case is reported as [`TransformError::Blocked`].
pub fn deduction_intro(proof: &HilbertProof, phi: &Formula) -> Result<HilbertProof, TransformError> {
    ensure_checks(proof)?;
    let n = proof.steps.len();
    let mut dep = vec![false; n];
    for (k, s) in proof.steps.iter().enumerate() {
        dep[k] = (s.just == Justification::Hyp && s.formula == *phi)
            || s.just.premises().iter().any(|&i| dep[i]);
    }
    let hyps: Vec<Formula> = proof.hyps.iter().filter(|h| *h != phi).cloned().collect();
    let mut st = Intro {
        src: proof,
        phi,
        dep,
        out: HilbertProof::new(proof.system, hyps),
        plain: vec![None; n],
        lifted: vec![None; n],
    };
    for k in 0..n {
        if !st.dep[k] {
            st.copy_plain(k);
            continue;
        }
        let idx = match &proof.steps[k].just {
            Justification::Hyp => st.out.identity(phi),
            Justification::Axiom(_) => unreachable!("axioms never rest on hypotheses"),
            Justification::Mp(i, j) => {
                let li = st.lifted(*i);
                let lj = st.lifted(*j);
                let s = st.out.axiom_unchecked(AxiomInstance::S {
                    phi: phi.clone(),
                    psi: proof.steps[*j].formula.clone(),
                    chi: proof.steps[k].formula.clone(),
                });
                let m = st.out.mp(s, li).expect("S");
                st.out.mp(m, lj).expect("S")
            }
            Justification::Gen1(i, x) => {
                let x = x.clone();
                let quant = |t: Formula| Formula::forall_i(x.clone(), t);
                let gen = |p: &mut HilbertProof, t: usize| p.gen1(t, &x).expect("implication");
                st.generalize(k, *i, &quant, &gen)?
            }
            Justification::Gen2(i, x) => {
                let x = x.clone();
                let quant = |t: Formula| Formula::forall_p(x.clone(), t);
                let gen = |p: &mut HilbertProof, t: usize| p.gen2(t, &x).expect("implication");
                st.generalize(k, *i, &quant, &gen)?
            }
        };
        st.lifted[k] = Some(idx);
    }
    let last = n - 1;
    let fin = st.lifted(last);
    let mut out = st.out;
    if fin != out.steps.len() - 1 {
        // Re-state the result so that it is the final step.
        let f = out.steps[fin].formula.clone();
        let id = out.identity(&f);
        out.mp(id, fin).expect("identity");
    }
    out.conclusion = Formula::imp(phi.clone(), proof.conclusion.clone());
    finish(out)
}

/// Turns a proof of `φ → ψ` from `Γ` into a proof of `ψ` from `{φ} ∪ Γ` by
/// appending `Hyp φ` and MP.
pub fn deduction_elim(proof: &HilbertProof) -> Result<HilbertProof, TransformError> {
    ensure_checks(proof)?;
    let (phi, _) = proof
        .conclusion
        .as_imp()
        .ok_or_else(|| TransformError::NotImplication(print_formula(&proof.conclusion)))?;
    let phi = phi.clone();
    let mut out = proof.clone();
    if !out.hyps.contains(&phi) {
        out.hyps.insert(0, phi.clone());
    }
    let imp = out.steps.len() - 1;
    let h = out.hyp(phi);
    out.mp(imp, h).expect("implication");
    check_hilbert(out.system, &out).map_err(|r| TransformError::Blocked {
        step: imp + 1,
        reason: format!("the new hypothesis clashes with a generalization: {r}"),
    })?;
    Ok(out)
}

/// Adds hypotheses to a proof. Fails if a generalization in the proof is
/// over a variable free in one of them.
pub fn weaken(proof: &HilbertProof, extra: &[Formula]) -> Result<HilbertProof, TransformError> {
    let mut out = proof.clone();
    for h in extra {
        if !out.hyps.contains(h) {
            out.hyps.push(h.clone());
        }
    }
    check_hilbert(out.system, &out).map_err(|r| TransformError::Blocked {
        step: 0,
        reason: format!("weakening clashes with a generalization: {r}"),
    })?;
    Ok(out)
}

fn rename_formula(f: &Formula, old: &Eigen, new: &str) -> Result<Formula, SubstError> {
    match old {
        Eigen::Const(c) => f.replace_const(c, new),
        Eigen::Pred { name, arity } => f.replace_pred_const(name, &PVar::new(new, *arity)),
    }
}

fn rename_instance(inst: &AxiomInstance, old: &Eigen, new: &str) -> Result<AxiomInstance, SubstError> {
    let r = |f: &Formula| rename_formula(f, old, new);
    Ok(match inst {
        AxiomInstance::K { phi, psi } => AxiomInstance::K { phi: r(phi)?, psi: r(psi)? },
        AxiomInstance::S { phi, psi, chi } => AxiomInstance::S { phi: r(phi)?, psi: r(psi)?, chi: r(chi)? },
        AxiomInstance::AllE { x, phi, t } => {
            let t = match (old, t) {
                (Eigen::Const(c), Term::Const(k)) if c == k => Term::Var(new.to_string()),
                _ => t.clone(),
            };
            AxiomInstance::AllE { x: x.clone(), phi: r(phi)?, t }
        }
        AxiomInstance::PiE { x, phi, p } => {
            let p = match (old, p) {
                (Eigen::Pred { name, arity }, PredRef::Const { name: k, arity: a }) if name == k && arity == a => {
                    PredRef::Var(PVar::new(new, *arity))
                }
                _ => p.clone(),
            };
            AxiomInstance::PiE { x: x.clone(), phi: r(phi)?, p }
        }
        AxiomInstance::NegI { phi, psi } => AxiomInstance::NegI { phi: r(phi)?, psi: r(psi)? },
        AxiomInstance::Efq { phi, psi } => AxiomInstance::Efq { phi: r(phi)?, psi: r(psi)? },
        AxiomInstance::Dne { phi } => AxiomInstance::Dne { phi: r(phi)? },
    })
}

/// Replaces an eigen constant (or eigen predicate) by a variable throughout
/// the proof. The symbol must not occur in the hypotheses, and the variable
/// must not already occur free anywhere in the proof.
pub fn rename_eigen(proof: &HilbertProof, old: &Eigen, new: &str) -> Result<HilbertProof, TransformError> {
    ensure_checks(proof)?;
    if let Some(h) = proof.hyps.iter().find(|h| old.occurs_in(h)) {
        return Err(TransformError::Freshness(format!(
            "{old:?} occurs in hypothesis {}",
            print_formula(h)
        )));
    }
    let clash = |f: &Formula| match old {
        Eigen::Const(_) => f.free_ivars().contains(new),
        Eigen::Pred { arity, .. } => f.free_pvars().contains(&PVar::new(new, *arity)),
    };
    if proof.steps.iter().any(|s| clash(&s.formula)) || proof.hyps.iter().any(clash) {
        return Err(TransformError::Freshness(format!("?{new} already occurs free in the proof")));
    }
    rename_unchecked(proof, old, new)
}

/// [`rename_eigen`] without the freshness precondition on `new`; the output
/// must still check. Used where `new` occurs free only in parts of the proof
/// that do not interact with `old`.
pub(crate) fn rename_eigen_relaxed(proof: &HilbertProof, old: &Eigen, new: &str) -> Result<HilbertProof, TransformError> {
    ensure_checks(proof)?;
    if let Some(h) = proof.hyps.iter().find(|h| old.occurs_in(h)) {
        return Err(TransformError::Freshness(format!(
            "{old:?} occurs in hypothesis {}",
            print_formula(h)
        )));
    }
    rename_unchecked(proof, old, new)
}

fn rename_unchecked(proof: &HilbertProof, old: &Eigen, new: &str) -> Result<HilbertProof, TransformError> {
    let fresh_err = |e: SubstError| TransformError::Freshness(e.to_string());
    let mut out = HilbertProof::new(proof.system, proof.hyps.clone());
    for s in &proof.steps {
        let formula = rename_formula(&s.formula, old, new).map_err(fresh_err)?;
        let just = match &s.just {
            Justification::Axiom(inst) => Justification::Axiom(rename_instance(inst, old, new).map_err(fresh_err)?),
            other => other.clone(),
        };
        out.push(formula, just);
    }
    out.conclusion = rename_formula(&proof.conclusion, old, new).map_err(fresh_err)?;
    finish(out)
}
