use std::path::PathBuf;

use sol_bes::cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn solbes(args: &[&str]) -> (i32, String) {
    run(std::iter::once("solbes".to_string()).chain(args.iter().map(|s| s.to_string())))
}

#[test]
fn derive_aristotle() {
    let (code, out) = solbes(&["derive", "--base", &fixture("aristotle.base"), "--goal", "M(s)"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("Derivable"));
    assert!(out.contains("H(s)"));
}

#[test]
fn derive_negative_and_tsv() {
    let (code, out) = solbes(&["derive", "--base", &fixture("aristotle.base"), "--goal", "H(p)", "--format", "tsv"]);
    assert_eq!(code, 1);
    assert_eq!(out, "derive\tH(p)\tNotDerivable\n");
}

#[test]
fn derive_with_hypotheses() {
    let base = fixture("tammy.base");
    assert_eq!(solbes(&["derive", "--base", &base, "--goal", "Fe(t)", "--hyps", "V(t)"]).0, 0);
    assert_eq!(solbes(&["derive", "--base", &base, "--goal", "V(t)", "--hyps", "Fe(t), Fo(t)"]).0, 0);
    assert_eq!(solbes(&["derive", "--base", &base, "--goal", "V(t)", "--hyps", "Fe(t)"]).0, 1);
}

#[test]
fn missing_file_and_bad_goal_are_usage_errors() {
    assert_eq!(solbes(&["derive", "--base", "/nonexistent.base", "--goal", "A"]).0, 2);
    assert_eq!(solbes(&["derive", "--base", &fixture("aristotle.base"), "--goal", "M("]).0, 2);
    assert_eq!(solbes(&["derive", "--base", &fixture("aristotle.base"), "--goal", "A -> B"]).0, 2);
    assert_eq!(solbes(&[]).0, 2);
}

#[test]
fn check_dne_script_by_system() {
    let (code, out) = solbes(&["check", "--system", "HI", &fixture("dne.hp")]);
    assert_eq!(code, 1);
    assert!(out.contains("DNE not in HI"), "{out}");
    assert_eq!(solbes(&["check", "--system", "HC", &fixture("dne.hp")]).0, 0);
    assert_eq!(solbes(&["check", &fixture("identity.hp")]).0, 0);
    assert_eq!(solbes(&["check", &fixture("identity.nd")]).0, 0);
}

#[test]
fn translate_both_ways() {
    let (code, out) = solbes(&["translate", &fixture("identity.hp")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("nd NI\n"));
    let (code, out) = solbes(&["translate", &fixture("identity.nd")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("hilbert HI proof of \"A -> A\""), "{out}");
}

#[test]
fn prove_separates_calculi() {
    let (code, out) = solbes(&["prove", "--system", "HC", "--goal", "~~P -> P", "--depth", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("axiom DNE"));
    let (code, out) = solbes(&["prove", "--system", "HI", "--goal", "~~P -> P", "--depth", "4"]);
    assert_eq!(code, 1);
    assert!(out.contains("bounded evidence"));
}

#[test]
fn flatten_and_extract() {
    let (code, out) = solbes(&["flatten", &fixture("identity.hp")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("base "));
    assert!(out.contains("$F1"));
    let (code, tsv) = solbes(&["flatten", "--format", "tsv", &fixture("identity.hp")]);
    assert_eq!(code, 0);
    assert!(tsv.lines().all(|l| l.split('\t').count() == 2), "{tsv}");
    let (code, out) = solbes(&["extract", &fixture("identity.hp")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("hilbert HI proof of \"A -> A\""));
}

#[test]
fn support_policies() {
    let u = fixture("counter.universe");
    let (code, out) = solbes(&["support", "--universe", &u, "--goal", "~~A -> A"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("witness re-checked: true"));
    let (code, out) = solbes(&["support", "--universe", &u, "--policy", "C", "--goal", "~~A -> A"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("BoundedHolds"));
    let (code, _) = solbes(&["support", "--universe", &u, "--base", &fixture("counter.base"), "--goal", "~~A"]);
    assert_eq!(code, 0);
    let (code, _) = solbes(&["support", "--universe", &u, "--base", &fixture("counter.base"), "--goal", "A"]);
    assert_eq!(code, 1);
    let (code, out) = solbes(&["support", "--universe", &u, "--policy", "C", "--base", &fixture("counter.base"), "--goal", "A"]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn parse_round_trips_files() {
    for f in ["aristotle.base", "counter.universe", "identity.hp", "identity.nd"] {
        let (code, out) = solbes(&["parse", &fixture(f)]);
        assert_eq!(code, 0, "{f}: {out}");
        let tmp = std::env::temp_dir().join(format!("solbes-{}-{f}", std::process::id()));
        std::fs::write(&tmp, &out).unwrap();
        let (code, again) = solbes(&["parse", &tmp.display().to_string()]);
        std::fs::remove_file(&tmp).ok();
        assert_eq!(code, 0);
        assert_eq!(again, out, "{f}");
    }
}

#[test]
fn demos_are_deterministic() {
    for d in ["aristotle", "tammy", "dne-counterexample", "completeness-roundtrip"] {
        let a = solbes(&["demo", d]);
        assert_eq!(a.0, 0, "{d}: {}", a.1);
        assert_eq!(a, solbes(&["demo", d]));
    }
    assert_eq!(solbes(&["demo", "unknown"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_solbes");
    let status = std::process::Command::new(bin).args(["demo", "aristotle"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = std::process::Command::new(bin)
        .args(["check", "--system", "HI", &fixture("dne.hp")])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&status.stdout).contains("DNE"));
    let status = std::process::Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}
