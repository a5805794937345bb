//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use sol_bes::atomic::{check_trace, derive, Atom, Mode, Verdict};
use sol_bes::corpus::{corpus, hc_corpus, hi_corpus};
use sol_bes::flatten::{compile, extract, FlatMap};
use sol_bes::hilbert::{check_hilbert, search, SearchResult, SystemId};
use sol_bes::natded::{check_nd, hilbert_to_nd, nd_to_hilbert, NdSystem};
use sol_bes::parser::{
    parse_base, parse_formula, parse_hilbert_proof, parse_nd_proof, print_formula, print_hilbert_proof, print_nd_proof,
    Signature,
};
use sol_bes::random::{random_base, random_hilbert_proof, random_hyps, random_sub_base, random_universe};
use sol_bes::support::{
    compare_derived_clause, separation_universe, supports_consequence, verify_witness, BasisPolicy, DerivedClause,
    SupportVerdict,
};
use sol_bes::syntax::{gen_formula, Formula, GenSlice, PVar, PredRef, Term};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn f(s: &str) -> Formula {
    parse_formula(s, &mut Signature::new()).expect("fixture formula")
}

fn derivable_with_trace(base: &sol_bes::atomic::Base, hyps: &[Atom], goal: &Atom) -> bool {
    let hs: BTreeSet<Atom> = hyps.iter().cloned().collect();
    match derive(base, &hs, goal, Mode::Saturate) {
        Verdict::Derivable(t) => check_trace(base, &t),
        _ => false,
    }
}

fn aristotle() -> Outcome {
    let base = parse_base("base aristotle { => H(s)  H(s) => M(s) }").unwrap();
    if derivable_with_trace(&base, &[], &Atom::new("M", &["s"])) {
        pass("M(s) derivable from no hypotheses; trace checks")
    } else {
        fail("M(s) not derived")
    }
}

fn tammy() -> Outcome {
    let base = parse_base("base tammy { V(t) => Fe(t)  V(t) => Fo(t)  Fe(t), Fo(t) => V(t) }").unwrap();
    let (v, fe, fo) = (Atom::new("V", &["t"]), Atom::new("Fe", &["t"]), Atom::new("Fo", &["t"]));
    let a = derivable_with_trace(&base, &[v.clone()], &fe);
    let b = derivable_with_trace(&base, &[fe, fo], &v);
    if a && b {
        pass("{V(t)} |- Fe(t) and {Fe(t), Fo(t)} |- V(t)")
    } else {
        fail(format!("V(t) |- Fe(t): {a}; Fe(t), Fo(t) |- V(t): {b}"))
    }
}

fn counterexample() -> Outcome {
    let base = parse_base("base counter { ([A] => B) => B  B => *  slice A, B, C }").unwrap();
    let empty = BTreeSet::new();
    let a = derive(&base, &empty, &Atom::prop("A"), Mode::Saturate);
    let b = derive(&base, &empty, &Atom::prop("B"), Mode::Saturate);
    if a != Verdict::NotDerivable || b != Verdict::NotDerivable {
        return fail("A or B derivable in the counterexample base");
    }
    let dne = f("~~A -> A");
    let ui = separation_universe(BasisPolicy::I);
    let vi = supports_consequence(&[], &dne, &ui).unwrap();
    let SupportVerdict::Fails(cx) = &vi else {
        return fail(format!("policy I: expected Fails, got {}", vi.label()));
    };
    if !verify_witness(cx, &ui).unwrap() {
        return fail("policy I witness does not re-check");
    }
    let uc = separation_universe(BasisPolicy::C);
    let vc = supports_consequence(&[], &dne, &uc).unwrap();
    if vc.is_fails() {
        return fail("policy C: unexpected Fails");
    }
    pass(format!("A, B NotDerivable; policy I Fails (witness re-checks); policy C {}", vc.label()))
}

fn separation() -> Outcome {
    let g = f("~~P -> P");
    let hc = search(SystemId::HC, &[], &g, 2);
    let SearchResult::Found(p) = &hc else {
        return fail("no HC proof at depth 2");
    };
    if check_hilbert(SystemId::HC, p).is_err() || !p.uses_dne() {
        return fail("HC proof does not check or avoids DNE");
    }
    match search(SystemId::HI, &[], &g, 8) {
        SearchResult::NotFound { depth } => pass(format!(
            "HC proof with {} step(s); HI NotFound up to {depth} steps (bounded evidence only)",
            p.len()
        )),
        SearchResult::Found(_) => fail("HI search returned a proof of ~~P -> P"),
    }
}

fn substitution_laws() -> Outcome {
    let slice = GenSlice::default();
    let mut failures = 0;
    for seed in 0..1000u64 {
        let phi = gen_formula(seed, 1 + (seed % 6) as usize, &slice);
        for x in ["x", "y"] {
            let e = Term::constant("$e1");
            let back = phi.subst_ind(x, &e).and_then(|g| g.replace_const("$e1", x));
            if back.as_ref() != Ok(&phi) {
                failures += 1;
            }
        }
        for x in ["x", "y", "z"] {
            if !phi.free_ivars().contains(x) && phi.subst_ind(x, &Term::constant("a")).as_ref() != Ok(&phi) {
                failures += 1;
            }
        }
        for xv in [PVar::new("X", 0), PVar::new("Y", 1), PVar::new("Z", 2)] {
            let q = PredRef::constant("Q", xv.arity);
            if !phi.free_pvars().contains(&xv) && phi.subst_pred(&xv, &q).as_ref() != Ok(&phi) {
                failures += 1;
            }
        }
    }
    if failures == 0 {
        pass("1000 formulas: fresh-constant round trip and vacuous substitution")
    } else {
        fail(format!("{failures} failures"))
    }
}

fn flat_map_laws() -> Outcome {
    let slice = GenSlice::closed();
    let mut m = FlatMap::new();
    let mut seen: HashMap<Atom, Formula> = HashMap::new();
    let mut failures = 0;
    for seed in 0..10_000u64 {
        let phi = gen_formula(seed, 1 + (seed % 6) as usize, &slice);
        let a = match m.flat(&phi) {
            Ok(a) => a,
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        if let Some(prev) = seen.insert(a.clone(), phi.clone()) {
            if prev != phi {
                failures += 1;
            }
        }
        if m.nat(&a) != phi {
            failures += 1;
        }
        if phi.is_prop_const() && a.to_formula() != phi {
            failures += 1;
        }
    }
    for p in ["A", "B"] {
        if m.flat(&Formula::prop(p)).map(|a| a.to_formula()) != Ok(Formula::prop(p)) {
            failures += 1;
        }
    }
    if failures == 0 {
        pass(format!("10000 closed formulas, {} distinct flat atoms; injective with left inverse", seen.len()))
    } else {
        fail(format!("{failures} failures"))
    }
}

fn translation() -> Outcome {
    let (hi, hc) = (hi_corpus(), hc_corpus());
    let mut failures = Vec::new();
    for e in hi.iter().chain(hc.iter()) {
        let nd = NdSystem::of_hilbert(e.system);
        let ok = hilbert_to_nd(&e.proof).ok().filter(|t| check_nd(nd, t).is_ok() && t.conclusion == e.proof.conclusion).and_then(|t| {
            nd_to_hilbert(&t, nd).ok().filter(|p| check_hilbert(e.system, p).is_ok() && p.conclusion == e.proof.conclusion)
        });
        if ok.is_none() {
            failures.push(e.name);
        }
    }
    if failures.is_empty() {
        pass(format!("{} HI theorems under NI/HI, {} HC theorems under NC/HC", hi.len(), hc.len()))
    } else {
        fail(format!("failed: {}", failures.join(", ")))
    }
}

fn round_trip() -> Outcome {
    let mut failures = Vec::new();
    let all = corpus();
    for e in &all {
        let ok = compile(&e.proof).ok().filter(|(sim, t)| check_trace(&sim.base, t)).and_then(|(sim, t)| {
            extract(&sim, &t).ok().filter(|p| check_hilbert(e.system, p).is_ok() && p.conclusion == e.proof.conclusion)
        });
        if ok.is_none() {
            failures.push(e.name);
        }
    }
    if failures.is_empty() {
        pass(format!("{} theorems compiled, traces checked, proofs extracted and re-checked", all.len()))
    } else {
        fail(format!("failed: {}", failures.join(", ")))
    }
}

fn saturate_vs_top_down() -> Outcome {
    let mut disagreements = 0;
    let mut queries = 0;
    for seed in 0..500u64 {
        let base = random_base(seed, 12, 20, 2);
        for hyps in [BTreeSet::new(), random_hyps(seed, 12)] {
            for i in 0..12 {
                let g = Atom::prop(format!("Q{i}"));
                queries += 1;
                let s = derive(&base, &hyps, &g, Mode::Saturate);
                let t = derive(&base, &hyps, &g, Mode::TopDown(None));
                let traces_ok = [&s, &t].iter().all(|v| match v {
                    Verdict::Derivable(tr) => check_trace(&base, tr),
                    _ => true,
                });
                if s.is_derivable() != t.is_derivable() || !traces_ok {
                    disagreements += 1;
                }
            }
        }
    }
    if disagreements == 0 {
        pass(format!("500 bases, {queries} queries, no disagreement"))
    } else {
        fail(format!("{disagreements} disagreements in {queries} queries"))
    }
}

fn derived_clauses() -> Outcome {
    let fixtures = [
        DerivedClause::Bot,
        DerivedClause::And(f("A"), f("B")),
        DerivedClause::And(f("P(a)"), f("A -> C")),
        DerivedClause::Or(f("A"), f("B")),
        DerivedClause::Or(f("B"), f("C -> A")),
        DerivedClause::ExistsI("x".into(), f("P(?x)")),
        DerivedClause::ExistsP(PVar::new("X", 0), f("?X -> A")),
    ];
    let mut failures = Vec::new();
    let mut checks = 0;
    for seed in 0..100u64 {
        let policy = if seed % 2 == 0 { BasisPolicy::I } else { BasisPolicy::C };
        let u = random_universe(seed, policy);
        let bases = [sol_bes::atomic::Base::new("empty"), random_sub_base(seed, &u)];
        for b in &bases {
            for c in &fixtures {
                checks += 1;
                match compare_derived_clause(b, c, &u) {
                    Ok(r) if r.agrees() => {}
                    Ok(r) => failures.push(format!("seed {seed} {c:?}: encoded {} direct {}", r.encoded, r.direct)),
                    Err(e) => failures.push(format!("seed {seed} {c:?}: {e}")),
                }
            }
        }
    }
    if failures.is_empty() {
        pass(format!("100 universes, {checks} comparisons (bot, and, or, ex, EX)"))
    } else {
        let shown: Vec<&String> = failures.iter().take(3).collect();
        fail(format!("{} of {checks} disagree, e.g. {shown:?}", failures.len()))
    }
}

fn parser_round_trip() -> Outcome {
    let mut failures = 0;
    let slice = GenSlice::default();
    for seed in 0..1000u64 {
        let phi = gen_formula(seed, 1 + (seed % 7) as usize, &slice);
        if parse_formula(&print_formula(&phi), &mut Signature::new()).as_ref() != Ok(&phi) {
            failures += 1;
        }
    }
    for seed in 0..200u64 {
        let b = random_base(seed, 10, 12, 2);
        if parse_base(&b.to_string()).as_ref() != Ok(&b) {
            failures += 1;
        }
    }
    for seed in 0..100u64 {
        let sys = if seed % 2 == 0 { SystemId::HI } else { SystemId::HC };
        let p = random_hilbert_proof(seed, sys, 12, seed % 3 == 0);
        if parse_hilbert_proof(&print_hilbert_proof(&p)).as_ref() != Ok(&p) {
            failures += 1;
        }
        let t = hilbert_to_nd(&p).expect("checking proof");
        if parse_nd_proof(&print_nd_proof(&t)).as_ref() != Ok(&t) {
            failures += 1;
        }
    }
    if failures == 0 {
        pass("1000 formulas, 200 bases, 100 Hilbert and 100 ND scripts")
    } else {
        fail(format!("{failures} failures"))
    }
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(u32, &str, Check, Duration); 11] = [
        (1, "aristotle fixture", aristotle, Duration::from_millis(100)),
        (2, "tammy fixture", tammy, Duration::from_millis(100)),
        (3, "counterexample and policy separation", counterexample, Duration::from_secs(5)),
        (4, "calculi separation by search", separation, Duration::from_secs(60)),
        (5, "substitution laws", substitution_laws, Duration::MAX),
        (6, "flat map laws", flat_map_laws, Duration::MAX),
        (7, "translation soundness", translation, Duration::from_secs(30)),
        (8, "completeness round trip", round_trip, Duration::from_secs(60)),
        (9, "saturate vs top-down", saturate_vs_top_down, Duration::MAX),
        (10, "derived-clause agreement", derived_clauses, Duration::MAX),
        (11, "parser round trip", parser_round_trip, Duration::MAX),
    ];
    let mut failed = 0;
    for (n, name, check, limit) in criteria {
        let start = Instant::now();
        let out = check();
        let took = start.elapsed();
        let in_time = took < limit;
        let ok = out.ok && in_time;
        if !ok {
            failed += 1;
        }
        let limit_text = if limit == Duration::MAX { String::new() } else { format!(", limit {limit:?}") };
        let late = if in_time { "" } else { " [too slow]" };
        println!(
            "criterion {n:>2} {}: {name}: {} ({took:.2?}{limit_text}){late}",
            if ok { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
