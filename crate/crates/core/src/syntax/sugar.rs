use std::collections::BTreeSet;

use super::{Formula, PVar, Pred, Term};

/// How `∃` is encoded by [`Surface::expand`].
///
/// `AsPrinted` is `ΠX⁰((∀xφ → X⁰) → X⁰)`, a literal transcription of the
/// abbreviation used by the semantics this crate follows. `Conventional` is
/// the more common `ΠX⁰(∀x(φ → X⁰) → X⁰)`. Neither is treated as a
/// correction of the other; the second-order `∃X` is handled the same way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExistsEncoding {
    #[default]
    AsPrinted,
    Conventional,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExpandOptions {
    pub exists: ExistsEncoding,
}

/// A formula that may still contain the derived connectives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Surface {
    Atom(Pred, Vec<Term>),
    Imp(Box<Surface>, Box<Surface>),
    ForallI(String, Box<Surface>),
    ForallP(PVar, Box<Surface>),
    Bot,
    Not(Box<Surface>),
    And(Box<Surface>, Box<Surface>),
    Or(Box<Surface>, Box<Surface>),
    ExistsI(String, Box<Surface>),
    ExistsP(PVar, Box<Surface>),
}

impl Surface {
    pub fn imp(a: Surface, b: Surface) -> Self {
        Surface::Imp(Box::new(a), Box::new(b))
    }
    pub fn and(a: Surface, b: Surface) -> Self {
        Surface::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Surface, b: Surface) -> Self {
        Surface::Or(Box::new(a), Box::new(b))
    }
    pub fn not(a: Surface) -> Self {
        Surface::Not(Box::new(a))
    }
    pub fn exists_i(x: impl Into<String>, a: Surface) -> Self {
        Surface::ExistsI(x.into(), Box::new(a))
    }
    pub fn exists_p(x: PVar, a: Surface) -> Self {
        Surface::ExistsP(x, Box::new(a))
    }

    /// True if no derived connective occurs.
    pub fn is_core(&self) -> bool {
        match self {
            Surface::Atom(..) => true,
            Surface::Imp(a, b) => a.is_core() && b.is_core(),
            Surface::ForallI(_, a) | Surface::ForallP(_, a) => a.is_core(),
            _ => false,
        }
    }

    pub fn expand(&self) -> Formula {
        self.expand_with(ExpandOptions::default())
    }

    /// Replace every derived connective by its encoding. Each encoding step
    /// binds its own 0-ary predicate variable, named `X`, `X1`, `X2`, …,
    /// whichever is first not free in the encoded components.
    pub fn expand_with(&self, opts: ExpandOptions) -> Formula {
        match self {
            Surface::Atom(p, args) => Formula::Atom(p.clone(), args.clone()),
            Surface::Imp(a, b) => Formula::imp(a.expand_with(opts), b.expand_with(opts)),
            Surface::ForallI(x, a) => Formula::forall_i(x.clone(), a.expand_with(opts)),
            Surface::ForallP(x, a) => Formula::forall_p(x.clone(), a.expand_with(opts)),
            Surface::Bot => Formula::bot(),
            Surface::Not(a) => Formula::not(a.expand_with(opts)),
            Surface::And(a, b) => encode_and(a.expand_with(opts), b.expand_with(opts)),
            Surface::Or(a, b) => encode_or(a.expand_with(opts), b.expand_with(opts)),
            Surface::ExistsI(x, a) => {
                let body = a.expand_with(opts);
                let quantified = |inner: Formula| Formula::forall_i(x.clone(), inner);
                encode_exists(body, opts.exists, quantified, &[])
            }
            Surface::ExistsP(y, a) => {
                let body = a.expand_with(opts);
                let quantified = |inner: Formula| Formula::forall_p(y.clone(), inner);
                let avoid = if y.arity == 0 { vec![y.name.clone()] } else { vec![] };
                encode_exists(body, opts.exists, quantified, &avoid)
            }
        }
    }
}

impl From<&Formula> for Surface {
    fn from(f: &Formula) -> Self {
        match f {
            Formula::Atom(p, args) => Surface::Atom(p.clone(), args.clone()),
            Formula::Imp(a, b) => Surface::imp(a.as_ref().into(), b.as_ref().into()),
            Formula::ForallI(x, a) => Surface::ForallI(x.clone(), Box::new(a.as_ref().into())),
            Formula::ForallP(x, a) => Surface::ForallP(x.clone(), Box::new(a.as_ref().into())),
        }
    }
}

impl From<Formula> for Surface {
    fn from(f: Formula) -> Self {
        (&f).into()
    }
}

/// First of `X`, `X1`, `X2`, … that is neither a free 0-ary predicate
/// variable of `parts` nor listed in `avoid`.
pub(crate) fn fresh_prop_var(parts: &[&Formula], avoid: &[String]) -> PVar {
    let taken: BTreeSet<String> = parts
        .iter()
        .flat_map(|f| f.free_pvars())
        .filter(|v| v.arity == 0)
        .map(|v| v.name)
        .chain(avoid.iter().cloned())
        .collect();
    let mut n = 0usize;
    loop {
        let name = if n == 0 { "X".to_string() } else { format!("X{n}") };
        if !taken.contains(&name) {
            return PVar::new(name, 0);
        }
        n += 1;
    }
}

fn pvar_prop(x: &PVar) -> Formula {
    Formula::Atom(Pred::Var(x.name.clone()), Vec::new())
}

fn encode_and(a: Formula, b: Formula) -> Formula {
    let x = fresh_prop_var(&[&a, &b], &[]);
    let xf = pvar_prop(&x);
    Formula::forall_p(
        x,
        Formula::imp(Formula::imp(a, Formula::imp(b, xf.clone())), xf),
    )
}

fn encode_or(a: Formula, b: Formula) -> Formula {
    let x = fresh_prop_var(&[&a, &b], &[]);
    let xf = pvar_prop(&x);
    let cases = encode_and(Formula::imp(a, xf.clone()), Formula::imp(b, xf.clone()));
    Formula::forall_p(x, Formula::imp(cases, xf))
}

fn encode_exists(
    body: Formula,
    enc: ExistsEncoding,
    quantified: impl Fn(Formula) -> Formula,
    avoid: &[String],
) -> Formula {
    let x = fresh_prop_var(&[&body], avoid);
    let xf = pvar_prop(&x);
    let premise = match enc {
        ExistsEncoding::AsPrinted => Formula::imp(quantified(body), xf.clone()),
        ExistsEncoding::Conventional => quantified(Formula::imp(body, xf.clone())),
    };
    Formula::forall_p(x, Formula::imp(premise, xf))
}
