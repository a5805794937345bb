//! Bounded evaluation of base-extension support.
//!
//! The support clauses quantify over all individual constants, all
//! predicate constants and all extensions of a base within a basis. Here
//! those ranges are cut down to a finite [`SupportUniverse`]: extensions are
//! unions of the base with admissible subsets of a finite rule list, and
//! quantifiers range over the declared constant and predicate slices plus
//! `budget` fresh eigen symbols. Inside the universe everything is decided
//! exactly; the verdict says whether truncation was involved.
//!
//! Templates (rules containing `*`) count as one unit: a base either
//! contains every instance of a template or none.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::atomic::{derive, Atom, AtomicRule, Base, Mode, RuleTemplate};
use crate::parser::{parse_rule_at, print_formula, Cursor, RuleItem, Signature, SyntaxError};
use crate::parser::lexer::Tok;
use crate::syntax::{ExistsEncoding, ExpandOptions, Formula, PVar, PredRef, Surface, Term};

/// Which rule levels a base may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisPolicy {
    /// Zero- and first-level rules only.
    C,
    /// Zero-, first- and second-level rules.
    I,
}

impl BasisPolicy {
    pub fn admits_level(self, level: u8) -> bool {
        match self {
            BasisPolicy::C => level <= 1,
            BasisPolicy::I => level <= 2,
        }
    }
}

impl fmt::Display for BasisPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisPolicy::C => "C",
            BasisPolicy::I => "I",
        })
    }
}

impl std::str::FromStr for BasisPolicy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "C" => Ok(BasisPolicy::C),
            "I" => Ok(BasisPolicy::I),
            other => Err(format!("unknown basis policy {other:?} (expected C or I)")),
        }
    }
}

/// A rule or a template, as one selectable unit of the universe.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnitRule {
    Rule(AtomicRule),
    Template(RuleTemplate),
}

impl UnitRule {
    pub fn level(&self) -> u8 {
        match self {
            UnitRule::Rule(r) => r.level(),
            UnitRule::Template(t) => t.level(),
        }
    }
}

impl fmt::Display for UnitRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitRule::Rule(r) => r.fmt(f),
            UnitRule::Template(t) => t.fmt(f),
        }
    }
}

impl From<RuleItem> for UnitRule {
    fn from(r: RuleItem) -> Self {
        match r {
            RuleItem::Rule(r) => UnitRule::Rule(r),
            RuleItem::Template(t) => UnitRule::Template(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportUniverse {
    pub rules: Vec<UnitRule>,
    pub consts: Vec<String>,
    pub preds: Vec<(String, usize)>,
    /// Fresh eigen constants (and eigen predicates per arity) added to the
    /// quantifier ranges.
    pub budget: usize,
    pub policy: BasisPolicy,
    /// Maximum nesting of clause evaluations.
    pub depth: usize,
}

/// Largest rule list whose subsets are enumerated.
pub const MAX_UNIVERSE_RULES: usize = 20;

impl SupportUniverse {
    pub fn new(rules: Vec<UnitRule>, policy: BasisPolicy) -> Self {
        SupportUniverse { rules, consts: Vec::new(), preds: Vec::new(), budget: 1, policy, depth: 24 }
    }

    /// The ranges of the quantifiers: slice constants then eigens.
    pub fn term_range(&self) -> Vec<Term> {
        let mut out: Vec<Term> = self.consts.iter().map(|c| Term::constant(c.clone())).collect();
        for i in 1..=self.budget {
            out.push(Term::constant(format!("$c{i}")));
        }
        out
    }

    pub fn pred_range(&self, arity: usize) -> Vec<PredRef> {
        let mut out: Vec<PredRef> = self
            .preds
            .iter()
            .filter(|(_, n)| *n == arity)
            .map(|(p, n)| PredRef::constant(p.clone(), *n))
            .collect();
        for i in 1..=self.budget {
            out.push(PredRef::constant(format!("$P{arity}_{i}"), arity));
        }
        out
    }

    /// Every atom over the predicate and constant slices.
    pub fn slice_atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for (p, n) in &self.preds {
            let mut tuples: Vec<Vec<String>> = vec![Vec::new()];
            for _ in 0..*n {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        self.consts.iter().map(move |c| {
                            let mut t = t.clone();
                            t.push(c.clone());
                            t
                        })
                    })
                    .collect();
            }
            for args in tuples {
                out.insert(Atom { pred: p.clone(), args });
            }
        }
        out
    }

    fn admissible_mask(&self) -> u64 {
        self.rules
            .iter()
            .enumerate()
            .filter(|(_, r)| self.policy.admits_level(r.level()))
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    /// The base made of the rules selected by `mask`.
    pub fn base_of(&self, mask: u64) -> Base {
        let mut b = Base::new("sub");
        for (i, r) in self.rules.iter().enumerate() {
            if mask & (1 << i) != 0 {
                match r {
                    UnitRule::Rule(r) => {
                        b.rules.insert(r.clone());
                    }
                    UnitRule::Template(t) => {
                        b.templates.insert(t.clone());
                    }
                }
            }
        }
        b.slice = self.slice_atoms();
        b
    }

    /// The selection mask of `base`, which must consist of whole units of
    /// the universe.
    pub fn mask_of(&self, base: &Base) -> Result<u64, SupportError> {
        let mut mask = 0u64;
        for r in &base.rules {
            let i = self
                .rules
                .iter()
                .position(|u| *u == UnitRule::Rule(r.clone()))
                .ok_or_else(|| SupportError::NotInUniverse(r.to_string()))?;
            mask |= 1 << i;
        }
        for t in &base.templates {
            let i = self
                .rules
                .iter()
                .position(|u| *u == UnitRule::Template(t.clone()))
                .ok_or_else(|| SupportError::NotInUniverse(t.to_string()))?;
            mask |= 1 << i;
        }
        if mask & !self.admissible_mask() != 0 {
            let bad = (0..self.rules.len()).find(|i| mask & !self.admissible_mask() & (1 << i) != 0).unwrap();
            return Err(SupportError::InadmissibleBase(self.rules[bad].to_string()));
        }
        Ok(mask)
    }
}

impl fmt::Display for SupportUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "universe {{")?;
        writeln!(f, "  rules {{")?;
        for r in &self.rules {
            writeln!(f, "    {r}")?;
        }
        writeln!(f, "  }}")?;
        if !self.consts.is_empty() {
            writeln!(f, "  slice_consts {}", self.consts.join(", "))?;
        }
        if !self.preds.is_empty() {
            let ps: Vec<String> = self.preds.iter().map(|(p, n)| format!("{p}:{n}")).collect();
            writeln!(f, "  slice_preds {}", ps.join(", "))?;
        }
        writeln!(f, "  budget {}", self.budget)?;
        writeln!(f, "  policy {}", self.policy)?;
        writeln!(f, "  depth {}", self.depth)?;
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupportError {
    #[error("rule {0} is not in the universe")]
    NotInUniverse(String),
    #[error("rule {0} is not admissible under the basis policy")]
    InadmissibleBase(String),
    #[error("{0} is not closed")]
    NotClosed(String),
    #[error("evaluation exceeded the depth bound {0}")]
    DepthExceeded(usize),
    #[error("universe has {0} rules; at most {MAX_UNIVERSE_RULES} are supported")]
    TooLarge(usize),
}

/// A base at which a support claim fails, checkable by re-evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Where `hyps ⊩ goal` fails.
    pub base: Base,
    pub hyps: Vec<Formula>,
    pub goal: Formula,
    /// An extension of `base` supporting every hypothesis (and, for an
    /// implication goal, its antecedent) but not the goal (consequent).
    pub extension: Option<Base>,
    /// For a universal goal, the failing instance.
    pub instance: Option<Formula>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.hyps.iter().map(print_formula).collect();
        writeln!(f, "fails: {{{}}} |- {} at", hs.join(", "), print_formula(&self.goal))?;
        writeln!(f, "{}", self.base)?;
        if let Some(e) = &self.extension {
            writeln!(f, "via extension")?;
            writeln!(f, "{e}")?;
        }
        if let Some(i) = &self.instance {
            writeln!(f, "via instance {}", print_formula(i))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportVerdict {
    /// Holds, and no truncated quantifier was involved.
    Holds,
    Fails(Box<Counterexample>),
    /// No counterexample inside the universe.
    BoundedHolds,
}

impl SupportVerdict {
    pub fn is_fails(&self) -> bool {
        matches!(self, SupportVerdict::Fails(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            SupportVerdict::Holds => "Holds",
            SupportVerdict::Fails(_) => "Fails",
            SupportVerdict::BoundedHolds => "BoundedHolds",
        }
    }
}

/// Evaluates support inside one universe, memoizing on (base, formula).
pub struct Evaluator<'u> {
    u: &'u SupportUniverse,
    admissible: u64,
    terms: Vec<Term>,
    preds: BTreeMap<usize, Vec<PredRef>>,
    memo: HashMap<(u64, Formula), bool>,
    atoms: HashMap<(u64, Atom), bool>,
}

impl<'u> Evaluator<'u> {
    pub fn new(u: &'u SupportUniverse) -> Result<Self, SupportError> {
        if u.rules.len() > MAX_UNIVERSE_RULES {
            return Err(SupportError::TooLarge(u.rules.len()));
        }
        Ok(Evaluator {
            u,
            admissible: u.admissible_mask(),
            terms: u.term_range(),
            preds: BTreeMap::new(),
            memo: HashMap::new(),
            atoms: HashMap::new(),
        })
    }

    fn pred_range(&mut self, arity: usize) -> Vec<PredRef> {
        let u = self.u;
        self.preds.entry(arity).or_insert_with(|| u.pred_range(arity)).clone()
    }

    /// Admissible supersets of `mask`, `mask` first.
    pub fn extensions(&self, mask: u64) -> Vec<u64> {
        let free = self.admissible & !mask;
        let mut out = Vec::new();
        let mut sub = 0u64;
        loop {
            out.push(mask | sub);
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
        out
    }

    /// Every admissible base.
    pub fn all_bases(&self) -> Vec<u64> {
        self.extensions(0)
    }

    fn atom(&mut self, mask: u64, a: &Atom) -> bool {
        if let Some(&v) = self.atoms.get(&(mask, a.clone())) {
            return v;
        }
        let base = self.u.base_of(mask);
        let v = derive(&base, &BTreeSet::new(), a, Mode::Saturate).is_derivable();
        self.atoms.insert((mask, a.clone()), v);
        v
    }

    /// `⊩_mask f`.
    pub fn sat(&mut self, mask: u64, f: &Formula) -> Result<bool, SupportError> {
        self.sat_at(mask, f, 0)
    }

    fn sat_at(&mut self, mask: u64, f: &Formula, depth: usize) -> Result<bool, SupportError> {
        if depth > self.u.depth {
            return Err(SupportError::DepthExceeded(self.u.depth));
        }
        if let Some(&v) = self.memo.get(&(mask, f.clone())) {
            return Ok(v);
        }
        let v = match f {
            Formula::Atom(..) => {
                let a = Atom::from_formula(f).map_err(|_| SupportError::NotClosed(print_formula(f)))?;
                self.atom(mask, &a)
            }
            Formula::Imp(a, b) => self.inf_at(mask, std::slice::from_ref(a), b, depth + 1)?.is_none(),
            Formula::ForallI(x, body) => {
                let mut ok = true;
                for t in self.terms.clone() {
                    let inst = body.subst_ind(x, &t).map_err(|_| SupportError::NotClosed(print_formula(f)))?;
                    if !self.sat_at(mask, &inst, depth + 1)? {
                        ok = false;
                        break;
                    }
                }
                ok
            }
            Formula::ForallP(x, body) => {
                let mut ok = true;
                for p in self.pred_range(x.arity) {
                    let inst = body.subst_pred(x, &p).map_err(|_| SupportError::NotClosed(print_formula(f)))?;
                    if !self.sat_at(mask, &inst, depth + 1)? {
                        ok = false;
                        break;
                    }
                }
                ok
            }
        };
        self.memo.insert((mask, f.clone()), v);
        Ok(v)
    }

    /// `hyps ⊩_mask f` by the inference clause: the first extension that
    /// supports every hypothesis but not `f`, if any.
    pub fn inf(&mut self, mask: u64, hyps: &[Formula], f: &Formula) -> Result<Option<u64>, SupportError> {
        self.inf_at(mask, hyps, f, 0)
    }

    fn inf_at(&mut self, mask: u64, hyps: &[Formula], f: &Formula, depth: usize) -> Result<Option<u64>, SupportError> {
        if hyps.is_empty() {
            return Ok(if self.sat_at(mask, f, depth)? { None } else { Some(mask) });
        }
        for c in self.extensions(mask) {
            let mut all = true;
            for h in hyps {
                if !self.sat_at(c, h, depth)? {
                    all = false;
                    break;
                }
            }
            if all && !self.sat_at(c, f, depth)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Why `⊩_mask f` fails, one level deep.
    fn explain(&mut self, mask: u64, hyps: &[Formula], f: &Formula) -> Result<Counterexample, SupportError> {
        let base = self.u.base_of(mask);
        let mut cx = Counterexample { base, hyps: hyps.to_vec(), goal: f.clone(), extension: None, instance: None };
        if !hyps.is_empty() {
            if let Some(c) = self.inf(mask, hyps, f)? {
                cx.extension = Some(self.u.base_of(c));
            }
            return Ok(cx);
        }
        match f {
            Formula::Imp(a, b) => {
                if let Some(c) = self.inf(mask, std::slice::from_ref(a), b)? {
                    cx.extension = Some(self.u.base_of(c));
                }
            }
            Formula::ForallI(x, body) => {
                for t in self.terms.clone() {
                    let inst = body.subst_ind(x, &t).map_err(|_| SupportError::NotClosed(print_formula(f)))?;
                    if !self.sat(mask, &inst)? {
                        cx.instance = Some(inst);
                        break;
                    }
                }
            }
            Formula::ForallP(x, body) => {
                for p in self.pred_range(x.arity) {
                    let inst = body.subst_pred(x, &p).map_err(|_| SupportError::NotClosed(print_formula(f)))?;
                    if !self.sat(mask, &inst)? {
                        cx.instance = Some(inst);
                        break;
                    }
                }
            }
            Formula::Atom(..) => {}
        }
        Ok(cx)
    }
}

fn ensure_closed(fs: &[&Formula]) -> Result<(), SupportError> {
    match fs.iter().find(|f| !f.is_closed()) {
        Some(f) => Err(SupportError::NotClosed(print_formula(f))),
        None => Ok(()),
    }
}

/// `⊩_base φ` inside the universe.
pub fn supports(base: &Base, phi: &Formula, u: &SupportUniverse) -> Result<SupportVerdict, SupportError> {
    ensure_closed(&[phi])?;
    let mut ev = Evaluator::new(u)?;
    let mask = u.mask_of(base)?;
    if ev.sat(mask, phi)? {
        Ok(if phi.is_atom() { SupportVerdict::Holds } else { SupportVerdict::BoundedHolds })
    } else {
        let mut cx = ev.explain(mask, &[], phi)?;
        cx.base = base.clone();
        Ok(SupportVerdict::Fails(Box::new(cx)))
    }
}

/// `Γ ⊩ φ`: `Γ ⊩_B φ` for every admissible base of the universe.
pub fn supports_consequence(hyps: &[Formula], phi: &Formula, u: &SupportUniverse) -> Result<SupportVerdict, SupportError> {
    let all: Vec<&Formula> = hyps.iter().chain(std::iter::once(phi)).collect();
    ensure_closed(&all)?;
    if hyps.contains(phi) {
        return Ok(SupportVerdict::Holds);
    }
    let mut ev = Evaluator::new(u)?;
    for b in ev.all_bases() {
        if ev.inf(b, hyps, phi)?.is_some() {
            let cx = if hyps.is_empty() { ev.explain(b, &[], phi)? } else { ev.explain(b, hyps, phi)? };
            return Ok(SupportVerdict::Fails(Box::new(cx)));
        }
    }
    Ok(if hyps.is_empty() && phi.is_atom() { SupportVerdict::Holds } else { SupportVerdict::BoundedHolds })
}

/// Agreement of `Γ ⊩ φ` over all bases with `Γ ⊩_∅ φ`.
pub fn empty_base_reduction(hyps: &[Formula], phi: &Formula, u: &SupportUniverse) -> Result<bool, SupportError> {
    let all = supports_consequence(hyps, phi, u)?;
    let mut ev = Evaluator::new(u)?;
    let at_empty = ev.inf(0, hyps, phi)?.is_none();
    Ok(all.is_fails() != at_empty)
}

/// Re-evaluates a counterexample.
pub fn verify_witness(cx: &Counterexample, u: &SupportUniverse) -> Result<bool, SupportError> {
    let mut ev = Evaluator::new(u)?;
    let mask = u.mask_of(&strip(&cx.base))?;
    if ev.inf(mask, &cx.hyps, &cx.goal)?.is_none() {
        return Ok(false);
    }
    if let Some(e) = &cx.extension {
        let c = u.mask_of(&strip(e))?;
        if c & mask != mask {
            return Ok(false);
        }
        let (pre, post): (Vec<Formula>, Formula) = match (&cx.goal, cx.hyps.is_empty()) {
            (Formula::Imp(a, b), true) => (vec![(**a).clone()], (**b).clone()),
            _ => (cx.hyps.clone(), cx.goal.clone()),
        };
        for h in &pre {
            if !ev.sat(c, h)? {
                return Ok(false);
            }
        }
        if ev.sat(c, &post)? {
            return Ok(false);
        }
    }
    if let Some(i) = &cx.instance {
        if ev.sat(mask, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn strip(b: &Base) -> Base {
    Base { slice: BTreeSet::new(), ..b.clone() }
}

/// A derived connective together with its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedClause {
    Bot,
    And(Formula, Formula),
    Or(Formula, Formula),
    ExistsI(String, Formula),
    ExistsP(PVar, Formula),
}

impl DerivedClause {
    /// The connective as a surface formula.
    pub fn surface(&self) -> Surface {
        match self {
            DerivedClause::Bot => Surface::Bot,
            DerivedClause::And(a, b) => Surface::and(a.into(), b.into()),
            DerivedClause::Or(a, b) => Surface::or(a.into(), b.into()),
            DerivedClause::ExistsI(x, a) => Surface::exists_i(x.clone(), a.into()),
            DerivedClause::ExistsP(x, a) => Surface::exists_p(x.clone(), a.into()),
        }
    }
}

/// Outcome of comparing an encoding with its derived clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseComparison {
    pub encoded: bool,
    pub direct: bool,
}

impl ClauseComparison {
    pub fn agrees(&self) -> bool {
        self.encoded == self.direct
    }
}

/// Evaluates the expanded encoding of `clause` and, separately, the derived
/// support clause for it:
///
/// * `⊥`: every 0-ary predicate of the range is derivable;
/// * `φ ∧ ψ`: for every extension `C` and 0-ary `P`, `φ, ψ ⊩_C P` implies `⊩_C P`;
/// * `φ ∨ ψ`: for every `C` and `P`, `φ ⊩_C P` and `ψ ⊩_C P` imply `⊩_C P`;
/// * `∃x φ`: for every `C` and `P`, `φ[x ↦ t] ⊩_C P` for every `t` implies `⊩_C P`
///   (and likewise for `∃X`).
///
/// Existentials are expanded with the conventional encoding, the one this
/// clause describes.
pub fn compare_derived_clause(base: &Base, clause: &DerivedClause, u: &SupportUniverse) -> Result<ClauseComparison, SupportError> {
    let mut ev = Evaluator::new(u)?;
    let mask = u.mask_of(base)?;
    let opts = ExpandOptions { exists: ExistsEncoding::Conventional };
    let enc = clause.surface().expand_with(opts);
    ensure_closed(&[&enc])?;
    let encoded = ev.sat(mask, &enc)?;
    let props: Vec<Formula> = ev
        .pred_range(0)
        .into_iter()
        .map(|p| match p {
            PredRef::Const { name, .. } => Formula::prop(name),
            PredRef::Var(_) => unreachable!("ranges hold constants"),
        })
        .collect();
    let direct = match clause {
        DerivedClause::Bot => {
            let mut ok = true;
            for p in &props {
                ok &= ev.sat(mask, p)?;
            }
            ok
        }
        _ => {
            let mut ok = true;
            'outer: for c in ev.extensions(mask) {
                for p in &props {
                    let premise = match clause {
                        DerivedClause::And(a, b) => ev.inf(c, &[a.clone(), b.clone()], p)?.is_none(),
                        DerivedClause::Or(a, b) => {
                            ev.inf(c, std::slice::from_ref(a), p)?.is_none() && ev.inf(c, std::slice::from_ref(b), p)?.is_none()
                        }
                        DerivedClause::ExistsI(x, a) => {
                            let mut all = true;
                            for t in u.term_range() {
                                let inst = a.subst_ind(x, &t).map_err(|_| SupportError::NotClosed(print_formula(a)))?;
                                if ev.inf(c, &[inst], p)?.is_some() {
                                    all = false;
                                    break;
                                }
                            }
                            all
                        }
                        DerivedClause::ExistsP(x, a) => {
                            let mut all = true;
                            for q in ev.pred_range(x.arity) {
                                let inst = a.subst_pred(x, &q).map_err(|_| SupportError::NotClosed(print_formula(a)))?;
                                if ev.inf(c, &[inst], p)?.is_some() {
                                    all = false;
                                    break;
                                }
                            }
                            all
                        }
                        DerivedClause::Bot => unreachable!(),
                    };
                    if premise && !ev.sat(c, p)? {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            ok
        }
    };
    Ok(ClauseComparison { encoded, direct })
}

/// True iff the encoding and the derived clause agree.
pub fn derived_clause_check(base: &Base, clause: &DerivedClause, u: &SupportUniverse) -> Result<bool, SupportError> {
    compare_derived_clause(base, clause, u).map(|c| c.agrees())
}

/// Reads `universe { rules { … } slice_consts … slice_preds … budget k policy I|C depth d }`.
pub fn parse_universe(text: &str) -> Result<SupportUniverse, SyntaxError> {
    let mut sig = Signature::new();
    let mut c = Cursor::new(text, "<input>", 0, &mut sig)?;
    c.expect_keyword("universe")?;
    c.expect(Tok::LBrace, "`{`")?;
    let mut u = SupportUniverse::new(Vec::new(), BasisPolicy::I);
    loop {
        if c.eat(&Tok::RBrace) {
            break;
        }
        let kw = c.ident("a universe field")?;
        match kw.as_str() {
            "rules" => {
                c.expect(Tok::LBrace, "`{`")?;
                while !c.eat(&Tok::RBrace) {
                    let r: UnitRule = parse_rule_at(&mut c)?.into();
                    if !u.rules.contains(&r) {
                        u.rules.push(r);
                    }
                }
            }
            "slice_consts" => loop {
                let name = c.ident("a constant")?;
                u.consts.push(name);
                if !c.eat(&Tok::Comma) {
                    break;
                }
            },
            "slice_preds" => loop {
                let name = c.ident("a predicate")?;
                c.expect(Tok::Colon, "`:` and an arity")?;
                let n = c.nat("an arity")?;
                u.preds.push((name, n));
                if !c.eat(&Tok::Comma) {
                    break;
                }
            },
            "budget" => u.budget = c.nat("a number")?,
            "depth" => u.depth = c.nat("a number")?,
            "policy" => {
                u.policy = match c.ident("I or C")?.as_str() {
                    "I" => BasisPolicy::I,
                    "C" => BasisPolicy::C,
                    _ => return Err(SyntaxError::Invalid("policy must be I or C".into())),
                }
            }
            other => return Err(SyntaxError::Invalid(format!("unknown universe field {other}"))),
        }
    }
    c.expect_eof()?;
    Ok(u)
}

/// The universe used for the classical-vs-intuitionistic separation: the
/// second-level rule `([A] ⇒ B) ⇒ B`, the axiom `⇒ A`, and the templates
/// `B ⇒ *` and `A ⇒ *`, over the 0-ary slice `A, B, C`.
pub fn separation_universe(policy: BasisPolicy) -> SupportUniverse {
    let text = format!(
        "universe {{ rules {{ ([A] => B) => B  B => *  => A  A => * }} slice_preds A:0, B:0, C:0 budget 1 policy {policy} depth 24 }}"
    );
    parse_universe(&text).expect("fixed universe text parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_base, parse_formula};

    fn f(s: &str) -> Formula {
        parse_formula(s, &mut Signature::new()).unwrap()
    }

    fn aristotle() -> (Base, SupportUniverse) {
        let b = parse_base("base a { => H(s)  H(s) => M(s) }").unwrap();
        let rules = b.rules.iter().cloned().map(UnitRule::Rule).collect();
        let mut u = SupportUniverse::new(rules, BasisPolicy::C);
        u.consts = vec!["s".into()];
        u.preds = vec![("H".into(), 1), ("M".into(), 1)];
        (b, u)
    }

    #[test]
    fn aristotle_atom_holds() {
        let (b, u) = aristotle();
        assert_eq!(supports(&b, &f("M(s)"), &u).unwrap(), SupportVerdict::Holds);
    }

    #[test]
    fn empty_universe_atom_fails() {
        let u = SupportUniverse::new(vec![], BasisPolicy::I);
        assert!(supports(&Base::new("e"), &f("P"), &u).unwrap().is_fails());
    }

    #[test]
    fn reflexivity_holds() {
        let u = SupportUniverse::new(vec![], BasisPolicy::I);
        assert_eq!(supports_consequence(&[f("A")], &f("A"), &u).unwrap(), SupportVerdict::Holds);
    }

    #[test]
    fn k_instance_bounded() {
        let u = separation_universe(BasisPolicy::I);
        assert_eq!(supports_consequence(&[], &f("A -> B -> A"), &u).unwrap(), SupportVerdict::BoundedHolds);
    }

    #[test]
    fn policy_separation() {
        let dne = f("~~A -> A");
        let ui = separation_universe(BasisPolicy::I);
        let v = supports_consequence(&[], &dne, &ui).unwrap();
        let SupportVerdict::Fails(cx) = v else { panic!("expected Fails, got {v:?}") };
        assert!(verify_witness(&cx, &ui).unwrap());
        let uc = separation_universe(BasisPolicy::C);
        assert!(!supports_consequence(&[], &dne, &uc).unwrap().is_fails());
    }

    #[test]
    fn counterexample_base_fails_at_itself() {
        let ui = separation_universe(BasisPolicy::I);
        let a = parse_base("base a { ([A] => B) => B  B => * }").unwrap();
        let v = supports(&a, &f("A"), &ui).unwrap();
        assert!(v.is_fails());
        assert!(!supports(&a, &f("~~A"), &ui).unwrap().is_fails());
    }

    #[test]
    fn inadmissible_base_rejected() {
        let uc = separation_universe(BasisPolicy::C);
        let a = parse_base("base a { ([A] => B) => B }").unwrap();
        assert!(matches!(supports(&a, &f("A"), &uc), Err(SupportError::InadmissibleBase(_))));
    }

    #[test]
    fn derived_clause_fixtures() {
        let u = separation_universe(BasisPolicy::I);
        let all = parse_base("base x { => A  A => * }").unwrap();
        assert!(derived_clause_check(&all, &DerivedClause::Bot, &u).unwrap());
        let c = compare_derived_clause(&all, &DerivedClause::Bot, &u).unwrap();
        assert!(c.encoded && c.direct);
        let e = Base::new("e");
        let or = DerivedClause::Or(f("B"), f("C"));
        let c = compare_derived_clause(&e, &or, &u).unwrap();
        assert!(c.agrees());
        assert!(derived_clause_check(&e, &DerivedClause::And(f("A"), f("B")), &u).unwrap());
    }

    #[test]
    fn extensions_enumerate_supersets() {
        let u = separation_universe(BasisPolicy::I);
        let ev = Evaluator::new(&u).unwrap();
        assert_eq!(ev.all_bases().len(), 16);
        assert_eq!(ev.extensions(0b0101).len(), 4);
        let uc = separation_universe(BasisPolicy::C);
        assert_eq!(Evaluator::new(&uc).unwrap().all_bases().len(), 8);
    }

    #[test]
    fn universe_display_round_trips() {
        let u = separation_universe(BasisPolicy::C);
        assert_eq!(parse_universe(&u.to_string()).unwrap(), u);
    }
}
