use std::collections::BTreeSet;

use proptest::prelude::*;

use sol_bes::atomic::{check_trace, derive, Mode, Verdict};
use sol_bes::flatten::{compile, extract, FlatMap, SimSystem, SimulationBase};
use sol_bes::hilbert::{
    check_hilbert, deduction_elim, deduction_intro, rename_eigen, search, Eigen, SearchResult, SystemId,
};
use sol_bes::natded::{check_nd, hilbert_to_nd, nd_to_hilbert, NdSystem};
use sol_bes::parser::{
    parse_base, parse_formula, parse_hilbert_proof, parse_nd_proof, parse_surface, print_formula, print_hilbert_proof,
    print_nd_proof, print_surface, Signature,
};
use sol_bes::random::{random_base, random_hilbert_proof, random_hyps, random_sub_base, random_universe};
use sol_bes::support::{supports, verify_witness, BasisPolicy, Evaluator, SupportVerdict};
use sol_bes::syntax::{gen_formula, Formula, GenSlice, PVar, PredRef, Surface, Term};

fn sig() -> Signature {
    Signature::new()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // Syntax

    #[test]
    fn fresh_constant_round_trip(seed in any::<u64>(), depth in 1usize..6) {
        let f = gen_formula(seed, depth, &GenSlice::default());
        for x in ["x", "y"] {
            let there = f.subst_ind(x, &Term::constant("$e1")).unwrap();
            prop_assert_eq!(there.replace_const("$e1", x).unwrap(), f.clone());
        }
    }

    #[test]
    fn vacuous_substitution_is_identity(seed in any::<u64>(), depth in 1usize..6) {
        let f = gen_formula(seed, depth, &GenSlice::default());
        if !f.free_ivars().contains("z") {
            prop_assert_eq!(f.subst_ind("z", &Term::constant("a")).unwrap(), f.clone());
        }
        let x = PVar::new("X", 0);
        if !f.free_pvars().contains(&x) {
            prop_assert_eq!(f.subst_pred(&x, &PredRef::constant("A", 0)).unwrap(), f.clone());
        }
    }

    #[test]
    fn expand_is_idempotent(seed in any::<u64>(), depth in 1usize..5) {
        let a = gen_formula(seed, depth, &GenSlice::default());
        let b = gen_formula(seed.wrapping_add(1), depth, &GenSlice::default());
        let s = Surface::or(Surface::and((&a).into(), Surface::not((&b).into())), Surface::exists_i("x", (&a).into()));
        let once = s.expand();
        prop_assert_eq!(Surface::from(&once).expand(), once);
    }

    // Parser

    #[test]
    fn formula_round_trip(seed in any::<u64>(), depth in 1usize..7) {
        let f = gen_formula(seed, depth, &GenSlice::default());
        let text = print_formula(&f);
        prop_assert_eq!(parse_formula(&text, &mut sig()).unwrap(), f, "{}", text);
    }

    #[test]
    fn surface_round_trip(seed in any::<u64>(), depth in 1usize..4) {
        let a: Surface = gen_formula(seed, depth, &GenSlice::default()).into();
        let b: Surface = gen_formula(seed ^ 7, depth, &GenSlice::default()).into();
        for s in [
            Surface::and(a.clone(), b.clone()),
            Surface::or(Surface::not(a.clone()), b.clone()),
            Surface::imp(Surface::exists_p(PVar::new("X", 0), a.clone()), Surface::Bot),
            Surface::and(Surface::or(a.clone(), b.clone()), Surface::exists_i("y", b.clone())),
        ] {
            let text = print_surface(&s);
            prop_assert_eq!(parse_surface(&text, &mut sig()).unwrap(), s, "{}", text);
        }
    }

    #[test]
    fn base_round_trip(seed in any::<u64>()) {
        let b = random_base(seed, 8, 10, 2);
        prop_assert_eq!(parse_base(&b.to_string()).unwrap(), b);
    }

    #[test]
    fn proof_script_round_trip(seed in any::<u64>(), closed in any::<bool>()) {
        let p = random_hilbert_proof(seed, SystemId::HC, 10, closed);
        let text = print_hilbert_proof(&p);
        prop_assert_eq!(parse_hilbert_proof(&text).unwrap(), p.clone(), "{}", text);
        let t = hilbert_to_nd(&p).unwrap();
        let text = print_nd_proof(&t);
        prop_assert_eq!(parse_nd_proof(&text).unwrap(), t, "{}", text);
    }

    // Atomic systems

    #[test]
    fn saturate_agrees_with_top_down(seed in any::<u64>()) {
        let b = random_base(seed, 6, 10, 2);
        let hyps = random_hyps(seed, 6);
        for i in 0..6 {
            let g = sol_bes::atomic::Atom::prop(format!("Q{i}"));
            let s = derive(&b, &hyps, &g, Mode::Saturate);
            let t = derive(&b, &hyps, &g, Mode::TopDown(None));
            prop_assert_eq!(s.is_derivable(), t.is_derivable());
            for v in [s, t] {
                if let Verdict::Derivable(tr) = v {
                    prop_assert!(check_trace(&b, &tr));
                }
            }
        }
    }

    #[test]
    fn derivability_is_monotone(seed in any::<u64>()) {
        let small = random_base(seed, 6, 8, 2);
        let extra = random_base(seed ^ 0xabc, 6, 6, 2);
        let mut big = small.clone();
        big.rules.extend(extra.rules);
        let hyps = random_hyps(seed, 6);
        let mut more = hyps.clone();
        more.insert(sol_bes::atomic::Atom::prop("Q5"));
        for i in 0..6 {
            let g = sol_bes::atomic::Atom::prop(format!("Q{i}"));
            if derive(&small, &hyps, &g, Mode::Saturate).is_derivable() {
                prop_assert!(derive(&big, &hyps, &g, Mode::Saturate).is_derivable());
                prop_assert!(derive(&small, &more, &g, Mode::Saturate).is_derivable());
            }
        }
    }

    // Hilbert calculi

    #[test]
    fn hi_proofs_check_in_hc(seed in any::<u64>()) {
        let mut p = random_hilbert_proof(seed, SystemId::HI, 12, false);
        prop_assert!(check_hilbert(SystemId::HI, &p).is_ok());
        p.system = SystemId::HC;
        prop_assert!(check_hilbert(SystemId::HC, &p).is_ok());
    }

    #[test]
    fn transformations_preserve_checking(seed in any::<u64>()) {
        let p = random_hilbert_proof(seed, SystemId::HC, 12, false);
        if let Some(h) = p.hyps.first().cloned() {
            if let Ok(q) = deduction_intro(&p, &h) {
                prop_assert!(check_hilbert(q.system, &q).is_ok());
                prop_assert_eq!(&q.conclusion, &Formula::imp(h.clone(), p.conclusion.clone()));
                let r = deduction_elim(&q).unwrap();
                prop_assert!(check_hilbert(r.system, &r).is_ok());
                let hs = |v: &[Formula]| v.iter().cloned().collect::<BTreeSet<_>>();
                prop_assert_eq!(hs(&r.hyps), hs(&p.hyps));
                prop_assert_eq!(&r.conclusion, &p.conclusion);
            }
        }
        if let Ok(q) = rename_eigen(&p, &Eigen::Const("a".into()), "z") {
            prop_assert!(check_hilbert(q.system, &q).is_ok());
        }
    }

    // Natural deduction

    #[test]
    fn translations_are_sound(seed in any::<u64>(), classical in any::<bool>()) {
        let sys = if classical { SystemId::HC } else { SystemId::HI };
        let p = random_hilbert_proof(seed, sys, 10, false);
        let nd = NdSystem::of_hilbert(sys);
        let t = hilbert_to_nd(&p).unwrap();
        prop_assert!(check_nd(nd, &t).is_ok());
        prop_assert_eq!(&t.conclusion, &p.conclusion);
        let used: BTreeSet<Formula> = p.steps.iter().filter(|s| s.just == sol_bes::hilbert::Justification::Hyp).map(|s| s.formula.clone()).collect();
        prop_assert!(t.open_assumptions().is_subset(&used));
        if !classical {
            prop_assert!(check_nd(NdSystem::NC, &t).is_ok());
        }
        let back = nd_to_hilbert(&t, nd).unwrap();
        prop_assert!(check_hilbert(sys, &back).is_ok());
        prop_assert_eq!(&back.conclusion, &p.conclusion);
        prop_assert_eq!(back.hyps.iter().cloned().collect::<BTreeSet<_>>(), t.open_assumptions());
    }

    // Flattening

    #[test]
    fn flat_map_is_injective_with_left_inverse(seed in any::<u64>()) {
        let mut m = FlatMap::new();
        let fs: Vec<Formula> = (0..20).map(|i| gen_formula(seed.wrapping_add(i), 4, &GenSlice::closed())).collect();
        let atoms: Vec<_> = fs.iter().map(|f| m.flat(f).unwrap()).collect();
        for (i, f) in fs.iter().enumerate() {
            prop_assert_eq!(&m.nat(&atoms[i]), f);
            for (j, g) in fs.iter().enumerate() {
                prop_assert_eq!(atoms[i] == atoms[j], f == g);
            }
            if f.is_prop_const() {
                prop_assert_eq!(atoms[i].to_formula(), f.clone());
            }
        }
    }

    #[test]
    fn closed_random_proofs_round_trip(seed in any::<u64>(), classical in any::<bool>()) {
        let sys = if classical { SystemId::HC } else { SystemId::HI };
        let p = random_hilbert_proof(seed, sys, 10, true);
        let (sim, trace) = compile(&p).unwrap();
        prop_assert!(check_trace(&sim.base, &trace));
        prop_assert!(sim.audit().is_empty());
        prop_assert!(!sim.has_dne_rule() || p.uses_dne());
        let back = extract(&sim, &trace).unwrap();
        prop_assert!(check_hilbert(sys, &back).is_ok());
        prop_assert_eq!(&back.conclusion, &p.conclusion);
    }

    #[test]
    fn j_never_emits_dne_rows(seed in any::<u64>()) {
        let needed: BTreeSet<Formula> = (0..6).map(|i| gen_formula(seed.wrapping_add(i), 4, &GenSlice::closed())).collect();
        let mut j = SimulationBase::new(SimSystem::J);
        j.instantiate_rules(&needed).unwrap();
        prop_assert!(!j.has_dne_rule());
        prop_assert!(j.audit().is_empty());
    }

    // Support

    #[test]
    fn support_agrees_with_derivability_at_atoms(seed in any::<u64>(), classical in any::<bool>()) {
        let policy = if classical { BasisPolicy::C } else { BasisPolicy::I };
        let u = random_universe(seed, policy);
        let b = random_sub_base(seed, &u);
        for atom in u.slice_atoms() {
            let v = supports(&b, &atom.to_formula(), &u).unwrap();
            let d = derive(&u.base_of(u.mask_of(&b).unwrap()), &BTreeSet::new(), &atom, Mode::Saturate);
            prop_assert_eq!(v == SupportVerdict::Holds, d.is_derivable());
        }
    }

    #[test]
    fn atomic_support_is_monotone(seed in any::<u64>()) {
        let u = random_universe(seed, BasisPolicy::I);
        let mut ev = Evaluator::new(&u).unwrap();
        for b in ev.all_bases() {
            for c in ev.extensions(b) {
                for atom in u.slice_atoms() {
                    let f = atom.to_formula();
                    if ev.sat(b, &f).unwrap() {
                        prop_assert!(ev.sat(c, &f).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn failure_witnesses_recheck(seed in any::<u64>(), depth in 1usize..4) {
        let u = random_universe(seed, BasisPolicy::I);
        let b = random_sub_base(seed, &u);
        let slice = GenSlice {
            consts: vec!["a".into()],
            preds: vec![("A".into(), 0), ("B".into(), 0), ("C".into(), 0), ("P".into(), 1)],
            ivars: vec!["x".into()],
            pvars: vec![PVar::new("X", 0)],
            open: false,
        };
        let f = gen_formula(seed, depth, &slice);
        if let SupportVerdict::Fails(cx) = supports(&b, &f, &u).unwrap() {
            prop_assert!(verify_witness(&cx, &u).unwrap());
        }
    }
}

#[test]
fn search_results_check() {
    let goals = ["A -> A", "A -> B -> A", "(A -> B) -> (B -> C) -> A -> C", "bot -> A", "~~A -> A"];
    for g in goals {
        let f = parse_formula(g, &mut sig()).unwrap();
        for sys in [SystemId::HI, SystemId::HC] {
            if let SearchResult::Found(p) = search(sys, &[], &f, 4) {
                assert!(check_hilbert(sys, &p).is_ok(), "{g}");
                assert_eq!(p.conclusion, f);
            }
        }
    }
}
