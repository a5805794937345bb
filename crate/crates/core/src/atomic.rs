//! Atomic rules, bases, and derivability `Ⓟ ⊢_S P`.
//!
//! Two procedures are provided. [`Mode::Saturate`] computes a least fixpoint
//! over sequents `(H, Q)` and decides derivability exactly; it is the only
//! procedure allowed to answer [`Verdict::NotDerivable`]. [`Mode::TopDown`]
//! is a goal-directed search with loop detection that yields a trace or
//! gives up.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::{Formula, Pred, Term};

/// A closed atom: a predicate constant applied to individual constants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtomError {
    #[error("atom {0} is not closed")]
    Open(String),
    #[error("{0} is not an atom")]
    NotAtomic(String),
}

impl Atom {
    pub fn prop(name: impl Into<String>) -> Self {
        Atom { pred: name.into(), args: Vec::new() }
    }

    pub fn new(pred: impl Into<String>, args: &[&str]) -> Self {
        Atom {
            pred: pred.into(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn to_formula(&self) -> Formula {
        Formula::Atom(
            Pred::Const(self.pred.clone()),
            self.args.iter().map(|a| Term::Const(a.clone())).collect(),
        )
    }

    pub fn from_formula(f: &Formula) -> Result<Atom, AtomError> {
        match f {
            Formula::Atom(Pred::Const(p), args) => {
                let mut out = Vec::with_capacity(args.len());
                for t in args {
                    match t {
                        Term::Const(c) => out.push(c.clone()),
                        Term::Var(_) => return Err(AtomError::Open(crate::parser::print_formula(f))),
                    }
                }
                Ok(Atom { pred: p.clone(), args: out })
            }
            Formula::Atom(Pred::Var(_), _) => Err(AtomError::Open(crate::parser::print_formula(f))),
            _ => Err(AtomError::NotAtomic(crate::parser::print_formula(f))),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(","))?;
        }
        Ok(())
    }
}

/// `{Ⓟ₁ ⇒ P₁, …, Ⓟₙ ⇒ Pₙ} ⇒ P`, generic over the atom representation so the
/// same shape serves concrete rules and templates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule<A: Ord> {
    pub premises: Vec<(BTreeSet<A>, A)>,
    pub conclusion: A,
}

pub type AtomicRule = Rule<Atom>;

/// An atom position in a rule template: concrete, or the wildcard `*`.
/// All wildcards in one template stand for the same atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomPattern {
    Atom(Atom),
    Any,
}

pub type RuleTemplate = Rule<AtomPattern>;

impl<A: Ord> Rule<A> {
    pub fn axiom(conclusion: A) -> Self {
        Rule { premises: Vec::new(), conclusion }
    }

    pub fn level(&self) -> u8 {
        if self.premises.is_empty() {
            0
        } else if self.premises.iter().all(|(h, _)| h.is_empty()) {
            1
        } else {
            2
        }
    }
}

impl AtomicRule {
    /// A first-level rule `P₁, …, Pₙ ⇒ P`.
    pub fn simple(premises: Vec<Atom>, conclusion: Atom) -> Self {
        Rule {
            premises: premises.into_iter().map(|p| (BTreeSet::new(), p)).collect(),
            conclusion,
        }
    }

    pub fn atoms(&self) -> BTreeSet<&Atom> {
        let mut out = BTreeSet::new();
        out.insert(&self.conclusion);
        for (h, p) in &self.premises {
            out.extend(h.iter());
            out.insert(p);
        }
        out
    }
}

impl RuleTemplate {
    pub fn has_wildcard(&self) -> bool {
        self.pattern_atoms().any(|p| *p == AtomPattern::Any)
    }

    fn pattern_atoms(&self) -> impl Iterator<Item = &AtomPattern> {
        std::iter::once(&self.conclusion).chain(
            self.premises
                .iter()
                .flat_map(|(h, p)| h.iter().chain(std::iter::once(p))),
        )
    }

    pub fn concrete_atoms(&self) -> BTreeSet<Atom> {
        self.pattern_atoms()
            .filter_map(|p| match p {
                AtomPattern::Atom(a) => Some(a.clone()),
                AtomPattern::Any => None,
            })
            .collect()
    }

    pub fn instantiate(&self, with: &Atom) -> AtomicRule {
        let inst = |p: &AtomPattern| match p {
            AtomPattern::Atom(a) => a.clone(),
            AtomPattern::Any => with.clone(),
        };
        Rule {
            premises: self
                .premises
                .iter()
                .map(|(h, p)| (h.iter().map(inst).collect(), inst(p)))
                .collect(),
            conclusion: inst(&self.conclusion),
        }
    }

    /// True if `rule` is `self` with its wildcard replaced by some atom.
    pub fn matches(&self, rule: &AtomicRule) -> bool {
        if !self.has_wildcard() {
            return self.instantiate(&Atom::prop("")) == *rule;
        }
        rule.atoms().into_iter().any(|a| self.instantiate(a) == *rule)
    }
}

impl From<&AtomicRule> for RuleTemplate {
    fn from(r: &AtomicRule) -> Self {
        let p = |a: &Atom| AtomPattern::Atom(a.clone());
        Rule {
            premises: r
                .premises
                .iter()
                .map(|(h, c)| (h.iter().map(p).collect(), p(c)))
                .collect(),
            conclusion: p(&r.conclusion),
        }
    }
}

impl fmt::Display for AtomPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomPattern::Atom(a) => a.fmt(f),
            AtomPattern::Any => f.write_str("*"),
        }
    }
}

impl<A: Ord + fmt::Display> fmt::Display for Rule<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (h, p)) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if h.is_empty() {
                write!(f, "{p}")?;
            } else {
                let hs: Vec<String> = h.iter().map(|a| a.to_string()).collect();
                write!(f, "([{}] => {p})", hs.join(", "))?;
            }
        }
        if !self.premises.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "=> {}", self.conclusion)
    }
}

/// A finite atomic system. Rules and templates have set semantics; the slice
/// lists extra atoms that templates must be instantiated over.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Base {
    pub name: String,
    pub rules: BTreeSet<AtomicRule>,
    pub templates: BTreeSet<RuleTemplate>,
    pub slice: BTreeSet<Atom>,
}

impl Base {
    pub fn new(name: impl Into<String>) -> Self {
        Base { name: name.into(), ..Base::default() }
    }

    pub fn with_rules(name: impl Into<String>, rules: impl IntoIterator<Item = AtomicRule>) -> Self {
        Base {
            name: name.into(),
            rules: rules.into_iter().collect(),
            ..Base::default()
        }
    }

    pub fn contains_rule(&self, r: &AtomicRule) -> bool {
        self.rules.contains(r) || self.templates.iter().any(|t| t.matches(r))
    }

    /// The highest rule level occurring (templates included).
    pub fn level(&self) -> u8 {
        self.rules
            .iter()
            .map(|r| r.level())
            .chain(self.templates.iter().map(|t| t.level()))
            .max()
            .unwrap_or(0)
    }

    /// Concrete rules plus template instances over `atoms`.
    pub fn instances(&self, atoms: &BTreeSet<Atom>) -> Vec<AtomicRule> {
        let mut out: BTreeSet<AtomicRule> = self.rules.clone();
        for t in &self.templates {
            if t.has_wildcard() {
                for a in atoms {
                    out.insert(t.instantiate(a));
                }
            } else {
                out.insert(t.instantiate(&Atom::prop("")));
            }
        }
        out.into_iter().collect()
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base {} {{", self.name)?;
        for r in &self.rules {
            writeln!(f, "  {r}")?;
        }
        for t in &self.templates {
            writeln!(f, "  {t}")?;
        }
        if !self.slice.is_empty() {
            let s: Vec<String> = self.slice.iter().map(|a| a.to_string()).collect();
            writeln!(f, "  slice {}", s.join(", "))?;
        }
        write!(f, "}}")
    }
}

/// The atoms relevant to a query: the least set containing the hypotheses,
/// the goal, the declared slice and every template's concrete atoms, closed
/// under "a rule touching the set contributes all its atoms".
pub fn atom_slice(base: &Base, hyps: &BTreeSet<Atom>, goal: &Atom) -> BTreeSet<Atom> {
    let mut s: BTreeSet<Atom> = hyps.iter().cloned().collect();
    s.insert(goal.clone());
    s.extend(base.slice.iter().cloned());
    for t in &base.templates {
        s.extend(t.concrete_atoms());
    }
    loop {
        let before = s.len();
        for r in &base.rules {
            let atoms = r.atoms();
            if atoms.iter().any(|a| s.contains(*a)) {
                s.extend(atoms.into_iter().cloned());
            }
        }
        if s.len() == before {
            return s;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Ref,
    App { rule: AtomicRule, children: Vec<DerivationTrace> },
}

/// A derivation tree; every node is a sequent `H ⊢ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTrace {
    pub hyps: BTreeSet<Atom>,
    pub goal: Atom,
    pub just: Justification,
}

impl DerivationTrace {
    pub fn size(&self) -> usize {
        match &self.just {
            Justification::Ref => 1,
            Justification::App { children, .. } => 1 + children.iter().map(|c| c.size()).sum::<usize>(),
        }
    }

    /// Indented text, one sequent per line with its justification tag.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        let hs: Vec<String> = self.hyps.iter().map(|a| a.to_string()).collect();
        let tag = match &self.just {
            Justification::Ref => "[ref]".to_string(),
            Justification::App { rule, .. } => format!("[app {rule}]"),
        };
        out.push_str(&format!(
            "{}{{{}}} |- {}  {}\n",
            "  ".repeat(depth),
            hs.join(", "),
            self.goal,
            tag
        ));
        if let Justification::App { children, .. } = &self.just {
            for c in children {
                c.render_into(depth + 1, out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Derivable(DerivationTrace),
    NotDerivable,
    /// The bounded search gave up; nothing is claimed.
    Unknown,
}

impl Verdict {
    pub fn is_derivable(&self) -> bool {
        matches!(self, Verdict::Derivable(_))
    }

    pub fn trace(&self) -> Option<&DerivationTrace> {
        match self {
            Verdict::Derivable(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Saturate,
    /// Depth-first search; `None` means no depth bound (loop detection
    /// still guarantees termination).
    TopDown(Option<usize>),
}

pub fn derive(base: &Base, hyps: &BTreeSet<Atom>, goal: &Atom, mode: Mode) -> Verdict {
    let atoms = atom_slice(base, hyps, goal);
    let rules = base.instances(&atoms);
    match mode {
        Mode::Saturate => {
            let sat = Saturation::run(&rules, hyps);
            match sat.trace(goal) {
                Some(t) => Verdict::Derivable(t),
                None => Verdict::NotDerivable,
            }
        }
        Mode::TopDown(depth) => match TopDown::new(&rules).prove(hyps, goal, depth) {
            Some(t) => Verdict::Derivable(t),
            None => Verdict::Unknown,
        },
    }
}

/// Checks every node of `trace` against `base`.
pub fn check_trace(base: &Base, trace: &DerivationTrace) -> bool {
    match &trace.just {
        Justification::Ref => trace.hyps.contains(&trace.goal),
        Justification::App { rule, children } => {
            rule.conclusion == trace.goal
                && base.contains_rule(rule)
                && children.len() == rule.premises.len()
                && rule.premises.iter().zip(children).all(|((h, p), c)| {
                    c.goal == *p
                        && c.hyps == trace.hyps.union(h).cloned().collect::<BTreeSet<_>>()
                        && check_trace(base, c)
                })
        }
    }
}

type Ctx = Vec<u32>;

fn union_ctx(a: &Ctx, b: &[u32]) -> Ctx {
    let mut out: Ctx = a.iter().chain(b.iter()).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

struct Interned {
    atoms: Vec<Atom>,
    index: HashMap<Atom, u32>,
}

impl Interned {
    fn new() -> Self {
        Interned { atoms: Vec::new(), index: HashMap::new() }
    }

    fn id(&mut self, a: &Atom) -> u32 {
        if let Some(&i) = self.index.get(a) {
            return i;
        }
        let i = self.atoms.len() as u32;
        self.atoms.push(a.clone());
        self.index.insert(a.clone(), i);
        i
    }
}

struct IRule {
    premises: Vec<(Vec<u32>, u32)>,
    conclusion: u32,
}

/// The least fixpoint of (Ref)/(App) over every context reachable from the
/// starting hypotheses.
pub struct Saturation<'r> {
    rules: &'r [AtomicRule],
    irules: Vec<IRule>,
    interned: Interned,
    ctxs: Vec<Ctx>,
    ctx_index: HashMap<Ctx, usize>,
    /// For each context, derived atoms with the rule that first produced
    /// them (`None` for Ref).
    derived: Vec<HashMap<u32, Option<usize>>>,
}

impl<'r> Saturation<'r> {
    pub fn run(rules: &'r [AtomicRule], hyps: &BTreeSet<Atom>) -> Self {
        let mut interned = Interned::new();
        let irules: Vec<IRule> = rules
            .iter()
            .map(|r| IRule {
                premises: r
                    .premises
                    .iter()
                    .map(|(h, p)| {
                        let mut hs: Vec<u32> = h.iter().map(|a| interned.id(a)).collect();
                        hs.sort_unstable();
                        (hs, interned.id(p))
                    })
                    .collect(),
                conclusion: interned.id(&r.conclusion),
            })
            .collect();
        let mut root: Ctx = hyps.iter().map(|a| interned.id(a)).collect();
        root.sort_unstable();

        let mut sat = Saturation {
            rules,
            irules,
            interned,
            ctxs: Vec::new(),
            ctx_index: HashMap::new(),
            derived: Vec::new(),
        };
        sat.add_ctx(root);
        let mut i = 0;
        while i < sat.ctxs.len() {
            let ctx = sat.ctxs[i].clone();
            let mut new = Vec::new();
            for r in &sat.irules {
                for (h, _) in &r.premises {
                    if !h.is_empty() {
                        new.push(union_ctx(&ctx, h));
                    }
                }
            }
            for c in new {
                sat.add_ctx(c);
            }
            i += 1;
        }
        sat.fixpoint();
        sat
    }

    fn add_ctx(&mut self, c: Ctx) -> usize {
        if let Some(&i) = self.ctx_index.get(&c) {
            return i;
        }
        let i = self.ctxs.len();
        let refl = c.iter().map(|&a| (a, None)).collect();
        self.ctx_index.insert(c.clone(), i);
        self.ctxs.push(c);
        self.derived.push(refl);
        i
    }

    fn fixpoint(&mut self) {
        // Premise contexts per (context, rule, premise), resolved once.
        let succ: Vec<Vec<Vec<usize>>> = self
            .ctxs
            .iter()
            .map(|ctx| {
                self.irules
                    .iter()
                    .map(|r| {
                        r.premises
                            .iter()
                            .map(|(h, _)| self.ctx_index[&union_ctx(ctx, h)])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        loop {
            let mut changed = false;
            for c in 0..self.ctxs.len() {
                for (ri, r) in self.irules.iter().enumerate() {
                    if self.derived[c].contains_key(&r.conclusion) {
                        continue;
                    }
                    let ok = r
                        .premises
                        .iter()
                        .zip(&succ[c][ri])
                        .all(|((_, p), &pc)| self.derived[pc].contains_key(p));
                    if ok {
                        self.derived[c].insert(r.conclusion, Some(ri));
                        changed = true;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Atoms derivable from the starting hypotheses.
    pub fn derivable(&self) -> BTreeSet<Atom> {
        self.derived[0]
            .keys()
            .map(|&i| self.interned.atoms[i as usize].clone())
            .collect()
    }

    pub fn is_derivable(&self, goal: &Atom) -> bool {
        self.interned
            .index
            .get(goal)
            .is_some_and(|i| self.derived[0].contains_key(i))
    }

    pub fn trace(&self, goal: &Atom) -> Option<DerivationTrace> {
        let g = *self.interned.index.get(goal)?;
        if !self.derived[0].contains_key(&g) {
            return None;
        }
        Some(self.build(0, g))
    }

    fn build(&self, c: usize, q: u32) -> DerivationTrace {
        let hyps: BTreeSet<Atom> = self.ctxs[c]
            .iter()
            .map(|&i| self.interned.atoms[i as usize].clone())
            .collect();
        let goal = self.interned.atoms[q as usize].clone();
        let just = match self.derived[c][&q] {
            None => Justification::Ref,
            Some(ri) => {
                let r = &self.irules[ri];
                let children = r
                    .premises
                    .iter()
                    .map(|(h, p)| self.build(self.ctx_index[&union_ctx(&self.ctxs[c], h)], *p))
                    .collect();
                Justification::App { rule: self.rules[ri].clone(), children }
            }
        };
        DerivationTrace { hyps, goal, just }
    }
}

/// Depth-first backward search with loop detection.
struct TopDown<'r> {
    rules: &'r [AtomicRule],
    by_conclusion: BTreeMap<&'r Atom, Vec<usize>>,
    success: HashMap<(BTreeSet<Atom>, Atom), DerivationTrace>,
    failure: HashSet<(BTreeSet<Atom>, Atom)>,
}

impl<'r> TopDown<'r> {
    fn new(rules: &'r [AtomicRule]) -> Self {
        let mut by_conclusion: BTreeMap<&Atom, Vec<usize>> = BTreeMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_conclusion.entry(&r.conclusion).or_default().push(i);
        }
        TopDown {
            rules,
            by_conclusion,
            success: HashMap::new(),
            failure: HashSet::new(),
        }
    }

    fn prove(&mut self, hyps: &BTreeSet<Atom>, goal: &Atom, depth: Option<usize>) -> Option<DerivationTrace> {
        let mut path = HashSet::new();
        self.go(hyps, goal, depth, &mut path).0
    }

    /// Returns the trace, if any, and whether a failure is independent of
    /// the current path and depth budget (and may therefore be memoised).
    fn go(
        &mut self,
        hyps: &BTreeSet<Atom>,
        goal: &Atom,
        depth: Option<usize>,
        path: &mut HashSet<(BTreeSet<Atom>, Atom)>,
    ) -> (Option<DerivationTrace>, bool) {
        if hyps.contains(goal) {
            let t = DerivationTrace { hyps: hyps.clone(), goal: goal.clone(), just: Justification::Ref };
            return (Some(t), true);
        }
        let key = (hyps.clone(), goal.clone());
        if let Some(t) = self.success.get(&key) {
            return (Some(t.clone()), true);
        }
        if self.failure.contains(&key) {
            return (None, true);
        }
        if path.contains(&key) || depth == Some(0) {
            return (None, false);
        }
        let next = depth.map(|d| d - 1);
        path.insert(key.clone());
        let mut clean = true;
        let candidates = self.by_conclusion.get(goal).cloned().unwrap_or_default();
        let mut found = None;
        'rules: for ri in candidates {
            let rule = &self.rules[ri];
            let mut children = Vec::with_capacity(rule.premises.len());
            for (h, p) in &rule.premises {
                let ctx: BTreeSet<Atom> = hyps.union(h).cloned().collect();
                let (t, c) = self.go(&ctx, p, next, path);
                match t {
                    Some(t) => children.push(t),
                    None => {
                        clean &= c;
                        continue 'rules;
                    }
                }
            }
            found = Some(DerivationTrace {
                hyps: hyps.clone(),
                goal: goal.clone(),
                just: Justification::App { rule: rule.clone(), children },
            });
            break;
        }
        path.remove(&key);
        match found {
            Some(t) => {
                self.success.insert(key, t.clone());
                (Some(t), true)
            }
            None => {
                if clean {
                    self.failure.insert(key);
                }
                (None, clean)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Atom {
        Atom::prop(s)
    }

    fn aristotle() -> Base {
        let h = Atom::new("H", &["s"]);
        let m = Atom::new("M", &["s"]);
        Base::with_rules("a", [Rule::axiom(h.clone()), AtomicRule::simple(vec![h], m)])
    }

    fn counterexample() -> Base {
        let mut b = Base::with_rules(
            "cx",
            [Rule {
                premises: vec![(BTreeSet::from([a("A")]), a("B"))],
                conclusion: a("B"),
            }],
        );
        b.templates.insert(Rule {
            premises: vec![(BTreeSet::new(), AtomPattern::Atom(a("B")))],
            conclusion: AtomPattern::Any,
        });
        b.slice = BTreeSet::from([a("A"), a("B"), a("C")]);
        b
    }

    #[test]
    fn levels() {
        let b = aristotle();
        let levels: Vec<u8> = b.rules.iter().map(|r| r.level()).collect();
        assert!(levels.contains(&0) && levels.contains(&1));
        let second = Rule {
            premises: vec![(BTreeSet::from([a("A")]), a("B"))],
            conclusion: a("B"),
        };
        assert_eq!(second.level(), 2);
    }

    #[test]
    fn aristotle_slice_and_derivation() {
        let b = aristotle();
        let m = Atom::new("M", &["s"]);
        let s = atom_slice(&b, &BTreeSet::new(), &m);
        assert_eq!(s, BTreeSet::from([Atom::new("H", &["s"]), m.clone()]));
        for mode in [Mode::Saturate, Mode::TopDown(None)] {
            let v = derive(&b, &BTreeSet::new(), &m, mode);
            let t = v.trace().expect("derivable");
            assert!(check_trace(&b, t));
        }
    }

    #[test]
    fn empty_base_slice() {
        assert_eq!(atom_slice(&Base::new("e"), &BTreeSet::new(), &a("P")), BTreeSet::from([a("P")]));
    }

    #[test]
    fn reflexivity() {
        let v = derive(&Base::new("e"), &BTreeSet::from([a("P")]), &a("P"), Mode::Saturate);
        assert_eq!(v.trace().unwrap().just, Justification::Ref);
    }

    #[test]
    fn counterexample_not_derivable() {
        let b = counterexample();
        assert_eq!(
            atom_slice(&b, &BTreeSet::new(), &a("A")),
            BTreeSet::from([a("A"), a("B"), a("C")])
        );
        assert_eq!(derive(&b, &BTreeSet::new(), &a("A"), Mode::Saturate), Verdict::NotDerivable);
        assert_eq!(derive(&b, &BTreeSet::new(), &a("B"), Mode::Saturate), Verdict::NotDerivable);
        assert_eq!(derive(&b, &BTreeSet::new(), &a("A"), Mode::TopDown(None)), Verdict::Unknown);
        // With A assumed, B is still underivable but C follows from nothing.
        assert!(derive(&b, &BTreeSet::from([a("B")]), &a("C"), Mode::Saturate).is_derivable());
    }

    #[test]
    fn second_level_discharge() {
        // ([A] => B) => B together with A => B gives ⊢ B.
        let mut b = counterexample();
        b.rules.insert(AtomicRule::simple(vec![a("A")], a("B")));
        let v = derive(&b, &BTreeSet::new(), &a("B"), Mode::Saturate);
        assert!(check_trace(&b, v.trace().unwrap()));
    }

    #[test]
    fn bad_traces_rejected() {
        let b = aristotle();
        let bad_ref = DerivationTrace { hyps: BTreeSet::new(), goal: a("P"), just: Justification::Ref };
        assert!(!check_trace(&b, &bad_ref));
        let foreign = DerivationTrace {
            hyps: BTreeSet::new(),
            goal: a("Q"),
            just: Justification::App { rule: Rule::axiom(a("Q")), children: vec![] },
        };
        assert!(!check_trace(&b, &foreign));
    }

    #[test]
    fn template_instances_count_as_members() {
        let b = counterexample();
        assert!(b.contains_rule(&AtomicRule::simple(vec![a("B")], a("Zed"))));
        assert!(!b.contains_rule(&AtomicRule::simple(vec![a("C")], a("Zed"))));
    }

    #[test]
    fn rule_display() {
        let r = Rule {
            premises: vec![(BTreeSet::from([a("A")]), a("B")), (BTreeSet::new(), a("C"))],
            conclusion: a("B"),
        };
        assert_eq!(r.to_string(), "([A] => B), C => B");
        assert_eq!(Rule::axiom(Atom::new("H", &["s"])).to_string(), "=> H(s)");
    }
}
