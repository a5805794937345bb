use std::collections::BTreeMap;

use thiserror::Error;

use super::{Formula, PVar, Pred, PredRef, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substituting {var} would be captured by a binder")]
    Capture { var: String },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
}

impl Formula {
    /// `φ[x ↦ t]`: replace the free occurrences of `x` by `t`.
    ///
    /// Follows the four-case definition literally. When `t` is a variable
    /// that a binder on the path would capture, this errors instead of
    /// renaming.
    pub fn subst_ind(&self, x: &str, t: &Term) -> Result<Formula, SubstError> {
        let mut s = Subst::default();
        s.ivars.insert(x.to_string(), t.clone());
        s.apply(self)
    }

    /// `φ[X ↦ P]`: replace the free occurrences of the predicate variable
    /// `X` by `P`, which must have the same arity.
    pub fn subst_pred(&self, x: &PVar, p: &PredRef) -> Result<Formula, SubstError> {
        if x.arity != p.arity() {
            return Err(SubstError::ArityMismatch {
                expected: x.arity,
                found: p.arity(),
            });
        }
        let mut s = Subst::default();
        s.pvars.insert(x.clone(), p.clone());
        s.apply(self)
    }

    /// Reverse renaming `[c ↦ x]`: every occurrence of the individual
    /// constant `c` becomes the variable `x`.
    ///
    /// Errors if an occurrence sits under a binder for `x`, since the new
    /// variable would then be captured.
    pub fn replace_const(&self, c: &str, x: &str) -> Result<Formula, SubstError> {
        match self {
            Formula::Atom(p, args) => Ok(Formula::Atom(
                p.clone(),
                args.iter()
                    .map(|t| match t {
                        Term::Const(k) if k == c => Term::Var(x.to_string()),
                        other => other.clone(),
                    })
                    .collect(),
            )),
            Formula::Imp(a, b) => Ok(Formula::imp(a.replace_const(c, x)?, b.replace_const(c, x)?)),
            Formula::ForallI(y, body) => {
                if y == x && body.mentions_const(c) {
                    return Err(SubstError::Capture { var: x.to_string() });
                }
                Ok(Formula::forall_i(y.clone(), body.replace_const(c, x)?))
            }
            Formula::ForallP(v, body) => Ok(Formula::forall_p(v.clone(), body.replace_const(c, x)?)),
        }
    }

    /// Reverse renaming `[E ↦ X]` for a predicate constant of `x.arity`.
    pub fn replace_pred_const(&self, e: &str, x: &PVar) -> Result<Formula, SubstError> {
        match self {
            Formula::Atom(Pred::Const(k), args) if k == e && args.len() == x.arity => {
                Ok(Formula::Atom(Pred::Var(x.name.clone()), args.clone()))
            }
            Formula::Atom(..) => Ok(self.clone()),
            Formula::Imp(a, b) => Ok(Formula::imp(
                a.replace_pred_const(e, x)?,
                b.replace_pred_const(e, x)?,
            )),
            Formula::ForallI(y, body) => Ok(Formula::forall_i(y.clone(), body.replace_pred_const(e, x)?)),
            Formula::ForallP(v, body) => {
                if v == x && body.mentions_pred_const(e) {
                    return Err(SubstError::Capture { var: x.to_string() });
                }
                Ok(Formula::forall_p(v.clone(), body.replace_pred_const(e, x)?))
            }
        }
    }
}

/// A simultaneous substitution of individual and predicate variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subst {
    pub ivars: BTreeMap<String, Term>,
    pub pvars: BTreeMap<PVar, PredRef>,
}

impl Subst {
    pub fn is_empty(&self) -> bool {
        self.ivars.is_empty() && self.pvars.is_empty()
    }

    pub fn apply(&self, f: &Formula) -> Result<Formula, SubstError> {
        for (x, p) in &self.pvars {
            if x.arity != p.arity() {
                return Err(SubstError::ArityMismatch {
                    expected: x.arity,
                    found: p.arity(),
                });
            }
        }
        self.go(f, &mut Vec::new(), &mut Vec::new())
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.ivars.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::Const(_) => t.clone(),
        }
    }

    fn go<'a>(
        &self,
        f: &'a Formula,
        ibound: &mut Vec<&'a str>,
        pbound: &mut Vec<&'a PVar>,
    ) -> Result<Formula, SubstError> {
        match f {
            Formula::Atom(p, args) => {
                let mut new_args = Vec::with_capacity(args.len());
                for t in args {
                    match t {
                        Term::Var(v) if !ibound.contains(&v.as_str()) => match self.ivars.get(v) {
                            Some(Term::Var(w)) if ibound.contains(&w.as_str()) => {
                                return Err(SubstError::Capture { var: w.clone() });
                            }
                            Some(t2) => new_args.push(t2.clone()),
                            None => new_args.push(t.clone()),
                        },
                        _ => new_args.push(t.clone()),
                    }
                }
                let new_pred = match p {
                    Pred::Var(name) => {
                        let v = PVar::new(name.clone(), args.len());
                        if pbound.contains(&&v) {
                            p.clone()
                        } else {
                            match self.pvars.get(&v) {
                                Some(PredRef::Var(w)) if pbound.contains(&w) => {
                                    return Err(SubstError::Capture { var: w.to_string() });
                                }
                                Some(r) => r.as_pred(),
                                None => p.clone(),
                            }
                        }
                    }
                    Pred::Const(_) => p.clone(),
                };
                Ok(Formula::Atom(new_pred, new_args))
            }
            Formula::Imp(a, b) => Ok(Formula::imp(
                self.go(a, ibound, pbound)?,
                self.go(b, ibound, pbound)?,
            )),
            Formula::ForallI(y, body) => {
                ibound.push(y);
                let r = self.go(body, ibound, pbound);
                ibound.pop();
                Ok(Formula::forall_i(y.clone(), r?))
            }
            Formula::ForallP(y, body) => {
                pbound.push(y);
                let r = self.go(body, ibound, pbound);
                pbound.pop();
                Ok(Formula::forall_p(y.clone(), r?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Term {
        Term::constant(s)
    }
    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn atom_case() {
        let f = Formula::atom("P", vec![v("x")]);
        assert_eq!(f.subst_ind("x", &c("a")).unwrap(), Formula::atom("P", vec![c("a")]));
    }

    #[test]
    fn bound_same_variable_is_noop() {
        let f = Formula::forall_i("x", Formula::atom("P", vec![v("x")]));
        assert_eq!(f.subst_ind("x", &c("a")).unwrap(), f);
    }

    #[test]
    fn under_other_binder() {
        let f = Formula::forall_i("y", Formula::atom("R", vec![v("x"), v("y")]));
        let want = Formula::forall_i("y", Formula::atom("R", vec![c("c"), v("y")]));
        assert_eq!(f.subst_ind("x", &c("c")).unwrap(), want);
    }

    #[test]
    fn variable_capture_is_an_error() {
        let f = Formula::forall_i("y", Formula::atom("R", vec![v("x"), v("y")]));
        assert_eq!(
            f.subst_ind("x", &v("y")),
            Err(SubstError::Capture { var: "y".into() })
        );
        // no free site, no capture
        let g = Formula::forall_i("y", Formula::atom("R", vec![v("y"), v("y")]));
        assert_eq!(g.subst_ind("x", &v("y")).unwrap(), g);
    }

    #[test]
    fn pred_atom_case() {
        let x = PVar::new("X", 1);
        let f = Formula::pvar_atom(&x, vec![c("a")]).unwrap();
        let q = PredRef::constant("Q", 1);
        assert_eq!(f.subst_pred(&x, &q).unwrap(), Formula::atom("Q", vec![c("a")]));
    }

    #[test]
    fn pred_bound_same_is_noop() {
        let x = PVar::new("X", 1);
        let f = Formula::forall_p(x.clone(), Formula::pvar_atom(&x, vec![c("a")]).unwrap());
        assert_eq!(f.subst_pred(&x, &PredRef::constant("Q", 1)).unwrap(), f);
    }

    #[test]
    fn pred_under_individual_binder() {
        let x = PVar::new("X", 1);
        let f = Formula::forall_i("y", Formula::pvar_atom(&x, vec![v("y")]).unwrap());
        let want = Formula::forall_i("y", Formula::atom("Q", vec![v("y")]));
        assert_eq!(f.subst_pred(&x, &PredRef::constant("Q", 1)).unwrap(), want);
    }

    #[test]
    fn pred_arity_mismatch() {
        let x = PVar::new("X", 1);
        let f = Formula::pvar_atom(&x, vec![c("a")]).unwrap();
        assert!(matches!(
            f.subst_pred(&x, &PredRef::constant("Q", 2)),
            Err(SubstError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn reverse_renaming_restores() {
        let f = Formula::imp(
            Formula::atom("P", vec![v("x")]),
            Formula::forall_i("x", Formula::atom("P", vec![v("x")])),
        );
        let g = f.subst_ind("x", &c("$e0")).unwrap();
        assert_eq!(g.replace_const("$e0", "x").unwrap(), f);
    }

    #[test]
    fn reverse_renaming_capture() {
        let f = Formula::forall_i("x", Formula::atom("P", vec![c("e")]));
        assert!(f.replace_const("e", "x").is_err());
    }
}
