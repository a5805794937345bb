//! The Hilbert calculi HI and HC: axiom schemas, proof objects, checking,
//! the deduction-theorem and eigen-renaming transformations, and a bounded
//! proof search.

mod check;
mod deduction;
mod search;

use std::fmt;

use thiserror::Error;

use crate::syntax::{Formula, PVar, PredRef, SubstError, Term};

pub use check::{check_hilbert, check_report, dependencies, CheckReport, StepError};
pub use deduction::{deduction_elim, deduction_intro, rename_eigen, weaken, Eigen, TransformError};
pub use search::{search, SearchResult};
pub(crate) use deduction::rename_eigen_relaxed;
pub(crate) use search::elimination_instances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SystemId {
    /// All axioms except DNE.
    HI,
    /// All axioms.
    HC,
}

impl SystemId {
    pub fn admits_dne(self) -> bool {
        self == SystemId::HC
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemId::HI => "HI",
            SystemId::HC => "HC",
        })
    }
}

impl std::str::FromStr for SystemId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "HI" => Ok(SystemId::HI),
            "HC" => Ok(SystemId::HC),
            other => Err(format!("unknown Hilbert system {other:?} (expected HI or HC)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomTag {
    K,
    S,
    AllE,
    PiE,
    NegI,
    Efq,
    Dne,
}

impl AxiomTag {
    pub const ALL: [AxiomTag; 7] = [
        AxiomTag::K,
        AxiomTag::S,
        AxiomTag::AllE,
        AxiomTag::PiE,
        AxiomTag::NegI,
        AxiomTag::Efq,
        AxiomTag::Dne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomTag::K => "K",
            AxiomTag::S => "S",
            AxiomTag::AllE => "AllE",
            AxiomTag::PiE => "PiE",
            AxiomTag::NegI => "NegI",
            AxiomTag::Efq => "EFQ",
            AxiomTag::Dne => "DNE",
        }
    }

    pub fn from_name(s: &str) -> Option<AxiomTag> {
        AxiomTag::ALL.into_iter().find(|t| t.name() == s)
    }
}

/// An axiom schema together with its slot assignment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomInstance {
    /// `φ → (ψ → φ)`
    K { phi: Formula, psi: Formula },
    /// `(φ → (ψ → χ)) → ((φ → ψ) → (φ → χ))`
    S { phi: Formula, psi: Formula, chi: Formula },
    /// `∀xφ → φ[x ↦ t]`
    AllE { x: String, phi: Formula, t: Term },
    /// `ΠXφ → φ[X ↦ P]`
    PiE { x: PVar, phi: Formula, p: PredRef },
    /// `(φ → ψ) → ((φ → ¬ψ) → ¬φ)`
    NegI { phi: Formula, psi: Formula },
    /// `(φ → ⊥) → (φ → ψ)`
    Efq { phi: Formula, psi: Formula },
    /// `¬¬φ → φ`
    Dne { phi: Formula },
}

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::imp(a, b)
}

impl AxiomInstance {
    pub fn tag(&self) -> AxiomTag {
        match self {
            AxiomInstance::K { .. } => AxiomTag::K,
            AxiomInstance::S { .. } => AxiomTag::S,
            AxiomInstance::AllE { .. } => AxiomTag::AllE,
            AxiomInstance::PiE { .. } => AxiomTag::PiE,
            AxiomInstance::NegI { .. } => AxiomTag::NegI,
            AxiomInstance::Efq { .. } => AxiomTag::Efq,
            AxiomInstance::Dne { .. } => AxiomTag::Dne,
        }
    }

    /// The instance formula. Errors on arity mismatch or variable capture in
    /// the elimination schemas.
    pub fn formula(&self) -> Result<Formula, SubstError> {
        Ok(match self {
            AxiomInstance::K { phi, psi } => imp(phi.clone(), imp(psi.clone(), phi.clone())),
            AxiomInstance::S { phi, psi, chi } => imp(
                imp(phi.clone(), imp(psi.clone(), chi.clone())),
                imp(imp(phi.clone(), psi.clone()), imp(phi.clone(), chi.clone())),
            ),
            AxiomInstance::AllE { x, phi, t } => {
                imp(Formula::forall_i(x.clone(), phi.clone()), phi.subst_ind(x, t)?)
            }
            AxiomInstance::PiE { x, phi, p } => {
                imp(Formula::forall_p(x.clone(), phi.clone()), phi.subst_pred(x, p)?)
            }
            AxiomInstance::NegI { phi, psi } => imp(
                imp(phi.clone(), psi.clone()),
                imp(
                    imp(phi.clone(), Formula::not(psi.clone())),
                    Formula::not(phi.clone()),
                ),
            ),
            AxiomInstance::Efq { phi, psi } => imp(
                imp(phi.clone(), Formula::bot()),
                imp(phi.clone(), psi.clone()),
            ),
            AxiomInstance::Dne { phi } => imp(Formula::not(Formula::not(phi.clone())), phi.clone()),
        })
    }

    /// The extra slot that the formula alone does not determine, if any.
    pub fn witness(&self) -> Option<Witness> {
        match self {
            AxiomInstance::AllE { t, .. } => Some(Witness::Term(t.clone())),
            AxiomInstance::PiE { p, .. } => Some(Witness::Pred(p.clone())),
            _ => None,
        }
    }

    /// Reads the slots of `tag` off an instance formula. `with` supplies the
    /// instantiand for AllE/PiE; a 0-ary or unknown-arity predicate
    /// constant is given its arity from the quantified variable.
    pub fn recognize(tag: AxiomTag, f: &Formula, with: Option<&Witness>) -> Option<AxiomInstance> {
        let (a, b) = f.as_imp()?;
        let inst = match tag {
            AxiomTag::K => {
                let (psi, phi2) = b.as_imp()?;
                AxiomInstance::K { phi: a.clone(), psi: psi.clone() }.guard(phi2 == a)?
            }
            AxiomTag::S => {
                let (phi, rest) = a.as_imp()?;
                let (psi, chi) = rest.as_imp()?;
                AxiomInstance::S { phi: phi.clone(), psi: psi.clone(), chi: chi.clone() }
            }
            AxiomTag::AllE => match (a, with?) {
                (Formula::ForallI(x, phi), Witness::Term(t)) => AxiomInstance::AllE {
                    x: x.clone(),
                    phi: (**phi).clone(),
                    t: t.clone(),
                },
                _ => return None,
            },
            AxiomTag::PiE => match (a, with?) {
                (Formula::ForallP(x, phi), Witness::Pred(p)) => {
                    let p = match p {
                        PredRef::Const { name, .. } => PredRef::constant(name.clone(), x.arity),
                        other => other.clone(),
                    };
                    AxiomInstance::PiE { x: x.clone(), phi: (**phi).clone(), p }
                }
                _ => return None,
            },
            AxiomTag::NegI => {
                let (phi, psi) = a.as_imp()?;
                AxiomInstance::NegI { phi: phi.clone(), psi: psi.clone() }
            }
            AxiomTag::Efq => {
                let (phi, _) = a.as_imp()?;
                let (_, psi) = b.as_imp()?;
                AxiomInstance::Efq { phi: phi.clone(), psi: psi.clone() }
            }
            AxiomTag::Dne => AxiomInstance::Dne { phi: b.clone() },
        };
        // The slots are only a reading; the instance must reproduce `f`.
        (inst.formula().ok()? == *f).then_some(inst)
    }

    fn guard(self, ok: bool) -> Option<Self> {
        ok.then_some(self)
    }
}

/// The instantiand of an elimination axiom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    Term(Term),
    Pred(PredRef),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Term(t) => t.fmt(f),
            Witness::Pred(p) => p.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(AxiomInstance),
    Hyp,
    /// `Mp(i, j)`: step `i` is `φ → ψ`, step `j` is `φ`. Indices are 0-based.
    Mp(usize, usize),
    Gen1(usize, String),
    Gen2(usize, PVar),
}

impl Justification {
    pub fn premises(&self) -> Vec<usize> {
        match self {
            Justification::Mp(i, j) => vec![*i, *j],
            Justification::Gen1(i, _) | Justification::Gen2(i, _) => vec![*i],
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertProof {
    pub system: SystemId,
    pub hyps: Vec<Formula>,
    pub steps: Vec<Step>,
    pub conclusion: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("step {0} does not exist")]
    NoSuchStep(usize),
    #[error("step {step} is not an implication")]
    NotImplication { step: usize },
    #[error(transparent)]
    Subst(#[from] SubstError),
}

impl HilbertProof {
    pub fn new(system: SystemId, hyps: Vec<Formula>) -> Self {
        HilbertProof {
            system,
            hyps,
            steps: Vec::new(),
            conclusion: Formula::bot(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.steps.len().checked_sub(1)
    }

    /// Appends a step and makes its formula the declared conclusion.
    pub fn push(&mut self, formula: Formula, just: Justification) -> usize {
        self.conclusion = formula.clone();
        self.steps.push(Step { formula, just });
        self.steps.len() - 1
    }

    pub fn axiom(&mut self, inst: AxiomInstance) -> Result<usize, SubstError> {
        let f = inst.formula()?;
        Ok(self.push(f, Justification::Axiom(inst)))
    }

    /// Pushes an axiom built only from formula slots (never fails).
    pub fn axiom_unchecked(&mut self, inst: AxiomInstance) -> usize {
        self.axiom(inst).expect("propositional axiom instances cannot fail")
    }

    pub fn hyp(&mut self, f: Formula) -> usize {
        self.push(f, Justification::Hyp)
    }

    /// MP on step `i` (`φ → ψ`) and step `j`; the new step states `ψ`.
    pub fn mp(&mut self, i: usize, j: usize) -> Result<usize, BuildError> {
        let f = self.steps.get(i).ok_or(BuildError::NoSuchStep(i))?;
        let (_, b) = f.formula.as_imp().ok_or(BuildError::NotImplication { step: i })?;
        if j >= self.steps.len() {
            return Err(BuildError::NoSuchStep(j));
        }
        let b = b.clone();
        Ok(self.push(b, Justification::Mp(i, j)))
    }

    pub fn gen1(&mut self, i: usize, x: &str) -> Result<usize, BuildError> {
        let f = self.steps.get(i).ok_or(BuildError::NoSuchStep(i))?;
        let (a, b) = f.formula.as_imp().ok_or(BuildError::NotImplication { step: i })?;
        let g = Formula::imp(a.clone(), Formula::forall_i(x, b.clone()));
        Ok(self.push(g, Justification::Gen1(i, x.to_string())))
    }

    pub fn gen2(&mut self, i: usize, x: &PVar) -> Result<usize, BuildError> {
        let f = self.steps.get(i).ok_or(BuildError::NoSuchStep(i))?;
        let (a, b) = f.formula.as_imp().ok_or(BuildError::NotImplication { step: i })?;
        let g = Formula::imp(a.clone(), Formula::forall_p(x.clone(), b.clone()));
        Ok(self.push(g, Justification::Gen2(i, x.clone())))
    }

    /// Appends the five-step proof of `φ → φ` and returns its last index.
    pub fn identity(&mut self, phi: &Formula) -> usize {
        let pp = Formula::imp(phi.clone(), phi.clone());
        let k1 = self.axiom_unchecked(AxiomInstance::K { phi: phi.clone(), psi: pp.clone() });
        let s = self.axiom_unchecked(AxiomInstance::S {
            phi: phi.clone(),
            psi: pp,
            chi: phi.clone(),
        });
        let m1 = self.mp(s, k1).expect("S instance is an implication");
        let k2 = self.axiom_unchecked(AxiomInstance::K { phi: phi.clone(), psi: phi.clone() });
        self.mp(m1, k2).expect("S consequent is an implication")
    }

    /// Copies the steps of `other` into `self`, returning the offset map
    /// (index in `other` ↦ index in `self`).
    pub fn splice(&mut self, other: &HilbertProof) -> Vec<usize> {
        let base = self.steps.len();
        for s in &other.steps {
            let just = match &s.just {
                Justification::Mp(i, j) => Justification::Mp(i + base, j + base),
                Justification::Gen1(i, x) => Justification::Gen1(i + base, x.clone()),
                Justification::Gen2(i, x) => Justification::Gen2(i + base, x.clone()),
                other => other.clone(),
            };
            self.push(s.formula.clone(), just);
        }
        for h in &other.hyps {
            if !self.hyps.contains(h) {
                self.hyps.push(h.clone());
            }
        }
        (base..self.steps.len()).collect()
    }

    /// Whether some step is justified by DNE.
    pub fn uses_dne(&self) -> bool {
        self.steps
            .iter()
            .any(|s| matches!(&s.just, Justification::Axiom(AxiomInstance::Dne { .. })))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn k_instance() {
        let f = AxiomInstance::K { phi: p("A"), psi: p("B") }.formula().unwrap();
        assert_eq!(f, Formula::imp(p("A"), Formula::imp(p("B"), p("A"))));
    }

    #[test]
    fn alle_instance() {
        let px = Formula::atom("P", vec![Term::var("x")]);
        let inst = AxiomInstance::AllE { x: "x".into(), phi: px.clone(), t: Term::constant("a") };
        let want = Formula::imp(
            Formula::forall_i("x", px),
            Formula::atom("P", vec![Term::constant("a")]),
        );
        assert_eq!(inst.formula().unwrap(), want);
    }

    #[test]
    fn dne_instance() {
        let f = AxiomInstance::Dne { phi: p("A") }.formula().unwrap();
        assert_eq!(f, Formula::imp(Formula::not(Formula::not(p("A"))), p("A")));
    }

    #[test]
    fn recognition_round_trips() {
        let insts = [
            AxiomInstance::K { phi: p("A"), psi: p("B") },
            AxiomInstance::S { phi: p("A"), psi: p("B"), chi: p("C") },
            AxiomInstance::NegI { phi: p("A"), psi: p("B") },
            AxiomInstance::Efq { phi: p("A"), psi: p("B") },
            AxiomInstance::Dne { phi: p("A") },
            AxiomInstance::AllE {
                x: "x".into(),
                phi: Formula::atom("P", vec![Term::var("x")]),
                t: Term::constant("a"),
            },
            AxiomInstance::PiE {
                x: PVar::new("X", 1),
                phi: Formula::pvar_atom(&PVar::new("X", 1), vec![Term::constant("a")]).unwrap(),
                p: PredRef::constant("Q", 1),
            },
        ];
        for inst in insts {
            let f = inst.formula().unwrap();
            let got = AxiomInstance::recognize(inst.tag(), &f, inst.witness().as_ref());
            assert_eq!(got.as_ref(), Some(&inst));
        }
        let k = AxiomInstance::K { phi: p("A"), psi: p("B") }.formula().unwrap();
        assert!(AxiomInstance::recognize(AxiomTag::Dne, &k, None).is_none());
    }

    #[test]
    fn identity_proof_shape() {
        let mut pr = HilbertProof::new(SystemId::HI, vec![]);
        pr.identity(&p("P"));
        assert_eq!(pr.len(), 5);
        assert_eq!(pr.conclusion, Formula::imp(p("P"), p("P")));
    }
}
