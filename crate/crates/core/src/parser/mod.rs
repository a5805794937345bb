//! Text syntax for formulas, atomic bases and proof scripts.
//!
//! Formulas:
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" or)?
//! and     := unary ("&" and)?
//! unary   := "all" ?x "." formula | "ALL" ?X ":" n "." formula
//!          | "ex" ?x "." formula  | "EX" ?X ":" n "." formula
//!          | "~" unary | "(" formula ")" | "bot" | Pred ("(" term ("," term)* ")")?
//! ```
//!
//! Quantifier bodies extend as far to the right as possible. `∀ Π ∃ → ⊥ ¬ ∧ ∨`
//! are accepted as input aliases; output is ASCII only.

mod base;
mod formula;
pub(crate) mod lexer;
mod print;
mod proof;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use base::{parse_base, parse_rule};
pub use formula::{parse_formula, parse_formula_list, parse_surface, parse_term};
pub use print::{print_formula, print_surface};
pub use proof::{parse_hilbert_proof, parse_nd_proof, print_hilbert_proof, print_nd_proof};

pub(crate) use base::{parse_rule_at, RuleItem};
pub(crate) use formula::Cursor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: String,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}..{}", self.file, self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: expected {expected}, found {found}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{span}: predicate {name} used with arity {found}, but its arity is {expected}")]
    ArityMismatch { span: SourceSpan, name: String, expected: usize, found: usize },
    #[error("{span}: `{name}` uses the reserved prefix `$`")]
    Reserved { span: SourceSpan, name: String },
    #[error("step {step}: reference to step {target}, which does not exist")]
    DanglingReference { step: usize, target: usize },
    #[error("{0}")]
    Invalid(String),
}

impl SyntaxError {
    /// Byte offset of the error, where one is known.
    pub fn offset(&self) -> Option<usize> {
        match self {
            SyntaxError::Parse(e) => Some(e.span.start),
            SyntaxError::ArityMismatch { span, .. } | SyntaxError::Reserved { span, .. } => Some(span.start),
            _ => None,
        }
    }
}

/// Arities of predicate constants. An arity is fixed by declaration or by
/// first use and cannot change afterwards.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub arities: BTreeMap<String, usize>,
    /// Accept symbols with the reserved `$` prefix (for machine-written
    /// files such as simulation-base dumps).
    pub allow_reserved: bool,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn permissive() -> Self {
        Signature { allow_reserved: true, ..Signature::default() }
    }

    pub fn declare(&mut self, name: impl Into<String>, arity: usize) -> &mut Self {
        self.arities.insert(name.into(), arity);
        self
    }

    pub(crate) fn use_pred(&mut self, name: &str, arity: usize, span: &SourceSpan) -> Result<(), SyntaxError> {
        match self.arities.get(name) {
            Some(&a) if a != arity => Err(SyntaxError::ArityMismatch {
                span: span.clone(),
                name: name.to_string(),
                expected: a,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.arities.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Formula, PVar, Pred, Term};

    #[test]
    fn spec_examples_parse() {
        let f = parse_formula("Human(socrates) -> Mortal(socrates)", &mut Signature::new()).unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Formula::atom("Human", vec![Term::constant("socrates")]),
                Formula::atom("Mortal", vec![Term::constant("socrates")])
            )
        );
        let g = parse_formula("all ?x. P(?x)", &mut Signature::new()).unwrap();
        assert_eq!(g, Formula::forall_i("x", Formula::atom("P", vec![Term::var("x")])));
        let e = parse_formula("P(", &mut Signature::new()).unwrap_err();
        assert_eq!(e.offset(), Some(2));
    }

    #[test]
    fn spec_examples_print() {
        assert_eq!(print_formula(&Formula::prop("P")), "P");
        let abc = Formula::imp(Formula::prop("A"), Formula::imp(Formula::prop("B"), Formula::prop("C")));
        assert_eq!(print_formula(&abc), "A -> B -> C");
        let x = PVar::new("X", 0);
        let f = Formula::forall_p(x, Formula::Atom(Pred::Var("X".into()), vec![]));
        assert_eq!(print_formula(&f), "ALL ?X:0. ?X");
    }
}
