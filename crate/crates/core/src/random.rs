//! Seeded generators for bases, proofs and support universes, used by the
//! property tests and the acceptance run.

use std::collections::BTreeSet;

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atomic::{Atom, AtomPattern, AtomicRule, Base, Rule, RuleTemplate};
use crate::hilbert::{check_hilbert, AxiomInstance, HilbertProof, SystemId};
use crate::support::{BasisPolicy, SupportUniverse, UnitRule};
use crate::syntax::{free_ivars_of, free_pvars_of, gen_with, Formula, GenSlice, PredRef, Term};

/// A base over the 0-ary atoms `Q0 … Q{atoms-1}` with up to `max_rules`
/// rules of level at most `max_level`.
pub fn random_base(seed: u64, atoms: usize, max_rules: usize, max_level: u8) -> Base {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<Atom> = (0..atoms.max(1)).map(|i| Atom::prop(format!("Q{i}"))).collect();
    let mut base = Base::new(format!("r{seed}"));
    let n = rng.gen_range(0..=max_rules);
    for _ in 0..n {
        base.rules.insert(random_rule(&mut rng, &pool, max_level));
    }
    base
}

fn random_rule<R: Rng>(rng: &mut R, pool: &[Atom], max_level: u8) -> AtomicRule {
    let level = rng.gen_range(0..=max_level);
    let conclusion = pool.choose(rng).unwrap().clone();
    let premises = match level {
        0 => Vec::new(),
        _ => {
            let k = rng.gen_range(1..=2);
            (0..k)
                .map(|i| {
                    let mut hyps = BTreeSet::new();
                    if level == 2 && (i == 0 || rng.gen_bool(0.5)) {
                        for _ in 0..rng.gen_range(1..=2) {
                            hyps.insert(pool.choose(rng).unwrap().clone());
                        }
                    }
                    (hyps, pool.choose(rng).unwrap().clone())
                })
                .collect()
        }
    };
    Rule { premises, conclusion }
}

/// A small open hypothesis set drawn from atoms of `base`.
pub fn random_hyps(seed: u64, atoms: usize) -> BTreeSet<Atom> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let k = rng.gen_range(0..=2);
    (0..k).map(|_| Atom::prop(format!("Q{}", rng.gen_range(0..atoms.max(1))))).collect()
}

/// A Hilbert proof of roughly `len` steps that checks in `system`.
///
/// With `closed`, every formula in the proof is closed (so it can be
/// compiled into a simulation base). The generator only emits steps whose
/// side conditions it has verified; the result is checked before returning.
pub fn random_hilbert_proof(seed: u64, system: SystemId, len: usize, closed: bool) -> HilbertProof {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slice = if closed { GenSlice::closed() } else { GenSlice::default() };
    let nhyps = rng.gen_range(0..=2);
    let hyps: Vec<Formula> = (0..nhyps).map(|_| gen_with(&mut rng, 3, &slice)).collect();
    let mut p = HilbertProof::new(system, hyps.clone());
    let hyp_iv = free_ivars_of(&hyps);
    let hyp_pv = free_pvars_of(&hyps);
    let mut attempts = 0;
    while p.len() < len.max(1) && attempts < 20 * len.max(1) {
        attempts += 1;
        let f1 = gen_with(&mut rng, 2, &slice);
        let f2 = gen_with(&mut rng, 2, &slice);
        let pick = |rng: &mut ChaCha8Rng, p: &HilbertProof| -> Option<Formula> {
            p.steps.choose(rng).map(|s| s.formula.clone())
        };
        match rng.gen_range(0..10) {
            0 if !hyps.is_empty() => {
                let h = hyps.choose(&mut rng).unwrap().clone();
                p.hyp(h);
            }
            1 => {
                // K with an earlier step as antecedent, then MP: a cheap way
                // to get chains of implications.
                let a = pick(&mut rng, &p).unwrap_or_else(|| f1.clone());
                let k = p.axiom_unchecked(AxiomInstance::K { phi: a.clone(), psi: f2 });
                if let Some(j) = p.steps.iter().position(|s| s.formula == a) {
                    if j != k {
                        p.mp(k, j).expect("K is an implication");
                    }
                }
            }
            2 => {
                let chi = gen_with(&mut rng, 2, &slice);
                p.axiom_unchecked(AxiomInstance::S { phi: f1, psi: f2, chi });
            }
            3 => {
                let x = slice.ivars.choose(&mut rng).unwrap().clone();
                let t = if closed || rng.gen_bool(0.5) {
                    Term::constant(slice.consts.choose(&mut rng).unwrap().clone())
                } else {
                    Term::var(slice.ivars.choose(&mut rng).unwrap().clone())
                };
                let body = if closed { close_over_ivar(&f1, &x) } else { f1 };
                let _ = p.axiom(AxiomInstance::AllE { x, phi: body, t });
            }
            4 => {
                let x = slice.pvars.choose(&mut rng).unwrap().clone();
                let q = if closed || rng.gen_bool(0.6) {
                    let cands: Vec<&(String, usize)> = slice.preds.iter().filter(|(_, n)| *n == x.arity).collect();
                    match cands.choose(&mut rng) {
                        Some((name, n)) => PredRef::constant(name.clone(), *n),
                        None => continue,
                    }
                } else {
                    PredRef::Var(slice.pvars.iter().filter(|v| v.arity == x.arity).choose(&mut rng).unwrap().clone())
                };
                let _ = p.axiom(AxiomInstance::PiE { x, phi: f1, p: q });
            }
            5 => {
                p.axiom_unchecked(AxiomInstance::NegI { phi: f1, psi: f2 });
            }
            6 => {
                p.axiom_unchecked(AxiomInstance::Efq { phi: f1, psi: f2 });
            }
            7 if system == SystemId::HC => {
                p.axiom_unchecked(AxiomInstance::Dne { phi: f1 });
            }
            8 => {
                // MP on any matching pair.
                let n = p.len();
                let mut pairs = Vec::new();
                for i in 0..n {
                    if let Some((a, _)) = p.steps[i].formula.as_imp() {
                        for j in 0..n {
                            if p.steps[j].formula == *a {
                                pairs.push((i, j));
                            }
                        }
                    }
                }
                if let Some(&(i, j)) = pairs.choose(&mut rng) {
                    p.mp(i, j).expect("implication");
                }
            }
            _ => {
                // Generalization on the consequent of some implication.
                let n = p.len();
                if n == 0 {
                    continue;
                }
                let i = rng.gen_range(0..n);
                let Some((a, _)) = p.steps[i].formula.as_imp() else { continue };
                if rng.gen_bool(0.5) {
                    let x = slice.ivars.choose(&mut rng).unwrap().clone();
                    if !a.free_ivars().contains(&x) && !hyp_iv.contains(&x) {
                        p.gen1(i, &x).expect("implication");
                    }
                } else {
                    let x = slice.pvars.choose(&mut rng).unwrap().clone();
                    if !a.free_pvars().contains(&x) && !hyp_pv.contains(&x) {
                        p.gen2(i, &x).expect("implication");
                    }
                }
            }
        }
    }
    if p.is_empty() {
        let f = gen_with(&mut rng, 2, &slice);
        p.identity(&f);
    }
    debug_assert!(check_hilbert(system, &p).is_ok(), "generator produced a non-checking proof");
    p
}

/// `f` with free occurrences of every individual variable other than `x`
/// replaced by a constant, so that `∀x f` is closed.
fn close_over_ivar(f: &Formula, x: &str) -> Formula {
    let mut g = f.clone();
    for v in f.free_ivars() {
        if v != x {
            g = g.subst_ind(&v, &Term::constant("a")).expect("constants never capture");
        }
    }
    g
}

/// A small support universe over `A, B, C` and `P(a)`, with at most four
/// units (rules or templates) of level admissible under `policy`.
pub fn random_universe(seed: u64, policy: BasisPolicy) -> SupportUniverse {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = [Atom::prop("A"), Atom::prop("B"), Atom::prop("C"), Atom::new("P", &["a"])];
    let max_level = if policy == BasisPolicy::I { 2 } else { 1 };
    let n = rng.gen_range(1..=4);
    let mut rules: Vec<UnitRule> = Vec::new();
    while rules.len() < n {
        let u = if rng.gen_ratio(1, 5) {
            let trigger = pool.choose(&mut rng).unwrap().clone();
            let t: RuleTemplate = Rule {
                premises: vec![(BTreeSet::new(), AtomPattern::Atom(trigger))],
                conclusion: AtomPattern::Any,
            };
            UnitRule::Template(t)
        } else {
            UnitRule::Rule(random_rule(&mut rng, &pool, max_level))
        };
        if !rules.contains(&u) {
            rules.push(u);
        }
    }
    let mut u = SupportUniverse::new(rules, policy);
    u.consts = vec!["a".into()];
    u.preds = vec![("A".into(), 0), ("B".into(), 0), ("C".into(), 0), ("P".into(), 1)];
    u.budget = 1;
    u
}

/// A random admissible base inside `u`.
pub fn random_sub_base(seed: u64, u: &SupportUniverse) -> Base {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bd1_e995);
    let mut mask = 0u64;
    for (i, r) in u.rules.iter().enumerate() {
        if u.policy.admits_level(r.level()) && rng.gen_bool(0.4) {
            mask |= 1 << i;
        }
    }
    let mut b = u.base_of(mask);
    b.slice.clear();
    b
}
