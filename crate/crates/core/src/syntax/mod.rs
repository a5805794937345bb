//! Terms, formulas and their basic operations.
//!
//! The core language has atoms, implication, first-order universal
//! quantification and second-order universal quantification. Everything else
//! (⊥, ∧, ∨, ¬, ∃) is surface sugar, see [`Surface`].
//!
//! Binders are name-carrying and formula equality is syntactic.

mod gen;
mod subst;
mod sugar;

use std::collections::BTreeSet;
use std::fmt;

pub use gen::{gen_formula, GenSlice};
pub(crate) use gen::gen_with;
pub use subst::{Subst, SubstError};
pub use sugar::{ExistsEncoding, ExpandOptions, Surface};

/// Prefix reserved for machine-generated symbols (eigen constants, eigen
/// predicates, flattened atoms). The parser refuses it in user input.
pub const RESERVED_PREFIX: char = '$';

/// An individual term: a constant or a variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

/// A predicate variable. Variables of different arities are different
/// variables, even when they share a name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PVar {
    pub name: String,
    pub arity: usize,
}

impl PVar {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        PVar { name: name.into(), arity }
    }
}

/// The predicate position of an atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pred {
    Const(String),
    Var(String),
}

/// A predicate with its arity, as used for second-order instantiation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PredRef {
    Const { name: String, arity: usize },
    Var(PVar),
}

impl PredRef {
    pub fn constant(name: impl Into<String>, arity: usize) -> Self {
        PredRef::Const { name: name.into(), arity }
    }

    pub fn arity(&self) -> usize {
        match self {
            PredRef::Const { arity, .. } => *arity,
            PredRef::Var(v) => v.arity,
        }
    }

    fn as_pred(&self) -> Pred {
        match self {
            PredRef::Const { name, .. } => Pred::Const(name.clone()),
            PredRef::Var(v) => Pred::Var(v.name.clone()),
        }
    }
}

/// A core formula.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// `P(t1, ..., tn)`; the arity is the argument count.
    Atom(Pred, Vec<Term>),
    Imp(Box<Formula>, Box<Formula>),
    ForallI(String, Box<Formula>),
    ForallP(PVar, Box<Formula>),
}

impl Formula {
    /// A 0-ary predicate constant.
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Atom(Pred::Const(name.into()), Vec::new())
    }

    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(Pred::Const(pred.into()), args)
    }

    pub fn pvar_atom(var: &PVar, args: Vec<Term>) -> Result<Self, SubstError> {
        if var.arity != args.len() {
            return Err(SubstError::ArityMismatch {
                expected: var.arity,
                found: args.len(),
            });
        }
        Ok(Formula::Atom(Pred::Var(var.name.clone()), args))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn forall_i(x: impl Into<String>, body: Formula) -> Self {
        Formula::ForallI(x.into(), Box::new(body))
    }

    pub fn forall_p(x: PVar, body: Formula) -> Self {
        Formula::ForallP(x, Box::new(body))
    }

    /// `⊥ := ΠX⁰. X⁰`.
    pub fn bot() -> Self {
        let x = PVar::new("X", 0);
        Formula::forall_p(x.clone(), Formula::Atom(Pred::Var(x.name), Vec::new()))
    }

    /// `¬φ := φ → ⊥`.
    pub fn not(a: Formula) -> Self {
        Formula::imp(a, Formula::bot())
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(..))
    }

    /// True for a 0-ary predicate-constant atom.
    pub fn is_prop_const(&self) -> bool {
        matches!(self, Formula::Atom(Pred::Const(_), args) if args.is_empty())
    }

    pub fn free_ivars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_ivars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_ivars<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => {
                for t in args {
                    if let Term::Var(v) = t {
                        if !bound.contains(&v.as_str()) {
                            out.insert(v.clone());
                        }
                    }
                }
            }
            Formula::Imp(a, b) => {
                a.collect_free_ivars(bound, out);
                b.collect_free_ivars(bound, out);
            }
            Formula::ForallI(x, body) => {
                bound.push(x);
                body.collect_free_ivars(bound, out);
                bound.pop();
            }
            Formula::ForallP(_, body) => body.collect_free_ivars(bound, out),
        }
    }

    pub fn free_pvars(&self) -> BTreeSet<PVar> {
        let mut out = BTreeSet::new();
        self.collect_free_pvars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_pvars<'a>(&'a self, bound: &mut Vec<&'a PVar>, out: &mut BTreeSet<PVar>) {
        match self {
            Formula::Atom(Pred::Var(name), args) => {
                let v = PVar::new(name.clone(), args.len());
                if !bound.contains(&&v) {
                    out.insert(v);
                }
            }
            Formula::Atom(Pred::Const(_), _) => {}
            Formula::Imp(a, b) => {
                a.collect_free_pvars(bound, out);
                b.collect_free_pvars(bound, out);
            }
            Formula::ForallI(_, body) => body.collect_free_pvars(bound, out),
            Formula::ForallP(x, body) => {
                bound.push(x);
                body.collect_free_pvars(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_ivars().is_empty() && self.free_pvars().is_empty()
    }

    /// Individual constants occurring anywhere in the formula.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_atoms(&mut |_, args| {
            for t in args {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            }
        });
        out
    }

    /// Predicate constants occurring anywhere, with their arities.
    pub fn pred_constants(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.walk_atoms(&mut |p, args| {
            if let Pred::Const(c) = p {
                out.insert((c.clone(), args.len()));
            }
        });
        out
    }

    /// Every individual variable name occurring, free or bound.
    pub fn all_ivars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            Formula::Atom(_, args) => {
                for t in args {
                    if let Term::Var(v) = t {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::ForallI(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    /// Every predicate variable occurring, free or bound.
    pub fn all_pvars(&self) -> BTreeSet<PVar> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            Formula::Atom(Pred::Var(v), args) => {
                out.insert(PVar::new(v.clone(), args.len()));
            }
            Formula::ForallP(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    pub fn mentions_const(&self, name: &str) -> bool {
        let mut found = false;
        self.walk_atoms(&mut |_, args| {
            found |= args.iter().any(|t| matches!(t, Term::Const(c) if c == name));
        });
        found
    }

    pub fn mentions_pred_const(&self, name: &str) -> bool {
        let mut found = false;
        self.walk_atoms(&mut |p, _| {
            found |= matches!(p, Pred::Const(c) if c == name);
        });
        found
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) => 1,
            Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::ForallI(_, b) | Formula::ForallP(_, b) => 1 + b.size(),
        }
    }

    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Atom(..) => {}
            Formula::Imp(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Formula::ForallI(_, b) | Formula::ForallP(_, b) => b.walk(f),
        }
    }

    fn walk_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Pred, &'a [Term])) {
        self.walk(&mut |g| {
            if let Formula::Atom(p, args) = g {
                f(p, args)
            }
        });
    }
}

/// Free individual variables of a set of formulas (pointwise union).
pub fn free_ivars_of<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<String> {
    fs.into_iter().flat_map(|f| f.free_ivars()).collect()
}

/// Free predicate variables of a set of formulas (pointwise union).
pub fn free_pvars_of<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<PVar> {
    fs.into_iter().flat_map(|f| f.free_pvars()).collect()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => f.write_str(c),
            Term::Var(v) => write!(f, "?{v}"),
        }
    }
}

impl fmt::Display for PVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}:{}", self.name, self.arity)
    }
}

impl fmt::Display for PredRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredRef::Const { name, .. } => f.write_str(name),
            PredRef::Var(v) => v.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: &str) -> Formula {
        Formula::atom("P", vec![Term::var(x)])
    }

    #[test]
    fn free_ivars_examples() {
        assert_eq!(p("x").free_ivars(), BTreeSet::from(["x".to_string()]));
        assert!(Formula::forall_i("x", p("x")).free_ivars().is_empty());
        let q = Formula::atom("Q", vec![Term::var("x"), Term::var("y")]);
        assert_eq!(
            Formula::forall_i("x", q).free_ivars(),
            BTreeSet::from(["y".to_string()])
        );
    }

    #[test]
    fn free_pvars_examples() {
        let x = PVar::new("X", 1);
        let xa = Formula::pvar_atom(&x, vec![Term::constant("a")]).unwrap();
        assert_eq!(xa.free_pvars(), BTreeSet::from([x.clone()]));
        assert!(Formula::forall_p(x, xa).free_pvars().is_empty());
        assert!(Formula::bot().free_pvars().is_empty());
    }

    #[test]
    fn pvar_atom_checks_arity() {
        let x = PVar::new("X", 2);
        assert!(Formula::pvar_atom(&x, vec![Term::constant("a")]).is_err());
    }

    #[test]
    fn same_name_different_arity_are_distinct() {
        let x0 = PVar::new("X", 0);
        let x1 = PVar::new("X", 1);
        let body = Formula::pvar_atom(&x1, vec![Term::constant("a")]).unwrap();
        let f = Formula::forall_p(x0, body);
        assert_eq!(f.free_pvars(), BTreeSet::from([x1]));
    }
}
