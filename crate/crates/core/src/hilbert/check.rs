use std::collections::BTreeSet;
use std::fmt;

use crate::parser::print_formula;
use crate::syntax::{free_ivars_of, free_pvars_of, Formula};

use super::{AxiomInstance, HilbertProof, Justification, SystemId};

/// A problem with one step (1-based `step` in messages; `None` for the proof
/// as a whole).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepError {
    pub step: Option<usize>,
    pub message: String,
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(i) => write!(f, "step {}: {}", i + 1, self.message),
            None => write!(f, "proof: {}", self.message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub errors: Vec<StepError>,
}

impl fmt::Display for CheckReport {
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

impl std::error::Error for CheckReport {}

/// Verifies every step of `proof` under `system`.
pub fn check_hilbert(system: SystemId, proof: &HilbertProof) -> Result<(), CheckReport> {
    let mut errors: Vec<StepError> = check_report(system, proof)
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| r.err().map(|message| StepError { step: Some(i), message }))
        .collect();
    match proof.steps.last() {
        None => errors.push(StepError { step: None, message: "no steps".into() }),
        Some(s) if s.formula != proof.conclusion => errors.push(StepError {
            step: None,
            message: format!(
                "last step states {} but the declared conclusion is {}",
                print_formula(&s.formula),
                print_formula(&proof.conclusion)
            ),
        }),
        _ => {}
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(CheckReport { errors })
    }
}

/// One verdict per step, in order.
pub fn check_report(system: SystemId, proof: &HilbertProof) -> Vec<Result<(), String>> {
    let hyp_fiv = free_ivars_of(&proof.hyps);
    let hyp_fpv = free_pvars_of(&proof.hyps);
    proof
        .steps
        .iter()
        .enumerate()
        .map(|(k, step)| {
            let earlier = |i: usize| -> Result<&Formula, String> {
                if i < k {
                    Ok(&proof.steps[i].formula)
                } else {
                    Err(format!("refers to step {} which is not earlier", i + 1))
                }
            };
            match &step.just {
                Justification::Axiom(inst) => {
                    if matches!(inst, AxiomInstance::Dne { .. }) && !system.admits_dne() {
                        return Err(format!("DNE not in {system}"));
                    }
                    let f = inst.formula().map_err(|e| format!("bad {} instance: {e}", inst.tag().name()))?;
                    if f != step.formula {
                        return Err(format!(
                            "formula is not the stated {} instance {}",
                            inst.tag().name(),
                            print_formula(&f)
                        ));
                    }
                    Ok(())
                }
                Justification::Hyp => {
                    if proof.hyps.contains(&step.formula) {
                        Ok(())
                    } else {
                        Err(format!("{} is not a hypothesis", print_formula(&step.formula)))
                    }
                }
                Justification::Mp(i, j) => {
                    let fi = earlier(*i)?;
                    let fj = earlier(*j)?;
                    match fi.as_imp() {
                        Some((a, b)) if a == fj && b == &step.formula => Ok(()),
                        Some(_) => Err(format!(
                            "MP shape: step {} is not {} -> {}",
                            i + 1,
                            print_formula(fj),
                            print_formula(&step.formula)
                        )),
                        None => Err(format!("MP shape: step {} is not an implication", i + 1)),
                    }
                }
                Justification::Gen1(i, x) => {
                    let fi = earlier(*i)?;
                    let (psi, phi) = fi
                        .as_imp()
                        .ok_or_else(|| format!("Gen1: step {} is not an implication", i + 1))?;
                    let want = Formula::imp(psi.clone(), Formula::forall_i(x.clone(), phi.clone()));
                    if want != step.formula {
                        return Err(format!("Gen1 result should be {}", print_formula(&want)));
                    }
                    if psi.free_ivars().contains(x) {
                        return Err(format!("eigenvariable violation: ?{x} is free in the antecedent"));
                    }
                    if hyp_fiv.contains(x) {
                        return Err(format!("eigenvariable violation: ?{x} is free in the hypotheses"));
                    }
                    Ok(())
                }
                Justification::Gen2(i, x) => {
                    let fi = earlier(*i)?;
                    let (psi, phi) = fi
                        .as_imp()
                        .ok_or_else(|| format!("Gen2: step {} is not an implication", i + 1))?;
                    let want = Formula::imp(psi.clone(), Formula::forall_p(x.clone(), phi.clone()));
                    if want != step.formula {
                        return Err(format!("Gen2 result should be {}", print_formula(&want)));
                    }
                    if psi.free_pvars().contains(x) {
                        return Err(format!("eigenvariable violation: {x} is free in the antecedent"));
                    }
                    if hyp_fpv.contains(x) {
                        return Err(format!("eigenvariable violation: {x} is free in the hypotheses"));
                    }
                    Ok(())
                }
            }
        })
        .collect()
}

/// For each step, the hypothesis formulas it transitively rests on.
pub fn dependencies(proof: &HilbertProof) -> Vec<BTreeSet<Formula>> {
    let mut deps: Vec<BTreeSet<Formula>> = Vec::with_capacity(proof.steps.len());
    for s in &proof.steps {
        let mut d = BTreeSet::new();
        if s.just == Justification::Hyp {
            d.insert(s.formula.clone());
        }
        for i in s.just.premises() {
            if let Some(di) = deps.get(i) {
                d.extend(di.iter().cloned());
            }
        }
        deps.push(d);
    }
    deps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::AxiomInstance;
    use crate::syntax::{Formula, Term};

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn identity_checks_in_hi() {
        let mut pr = HilbertProof::new(SystemId::HI, vec![]);
        pr.identity(&p("P"));
        assert!(check_hilbert(SystemId::HI, &pr).is_ok());
    }

    #[test]
    fn dne_rejected_in_hi() {
        let mut pr = HilbertProof::new(SystemId::HI, vec![]);
        pr.axiom_unchecked(AxiomInstance::Dne { phi: p("P") });
        let err = check_hilbert(SystemId::HI, &pr).unwrap_err();
        assert!(err.to_string().contains("DNE not in HI"));
        assert!(check_hilbert(SystemId::HC, &pr).is_ok());
    }

    #[test]
    fn gen_with_free_hypothesis_variable() {
        let px = Formula::atom("P", vec![Term::var("x")]);
        let mut pr = HilbertProof::new(SystemId::HI, vec![px.clone()]);
        pr.hyp(px.clone());
        let k = pr.axiom_unchecked(AxiomInstance::K { phi: px, psi: p("Q") });
        let m = pr.mp(k, 0).unwrap();
        pr.gen1(m, "x").unwrap();
        let err = check_hilbert(SystemId::HI, &pr).unwrap_err();
        assert!(err.to_string().contains("eigenvariable violation"));
    }

    #[test]
    fn forward_reference_rejected() {
        let mut pr = HilbertProof::new(SystemId::HI, vec![]);
        pr.push(p("Q"), Justification::Mp(3, 4));
        assert!(check_hilbert(SystemId::HI, &pr).is_err());
    }

    #[test]
    fn wrong_conclusion_rejected() {
        let mut pr = HilbertProof::new(SystemId::HI, vec![]);
        pr.identity(&p("P"));
        pr.conclusion = p("P");
        assert!(check_hilbert(SystemId::HI, &pr).is_err());
    }
}
