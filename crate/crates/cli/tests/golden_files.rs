//! Golden-file regression. Set `VERMALAB_BLESS=1` to rewrite the goldens.

use std::path::PathBuf;
use std::process::Command;

use serde_json::json;
use vermalab::commands::Outcome;
use vermalab::golden::{compare_or_bless, GoldenOutcome};
use vermalab::{render, run_capture};
use vermalab_core::exactalg::FieldElem;
use vermalab_core::verma::{check_gl_relations_with, padded_window, GlFamily, Weights};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn bless() -> bool {
    std::env::var("VERMALAB_BLESS").is_ok_and(|v| v == "1")
}

const RUNS: &[&[&str]] = &[
    &["patterns", "--n", "3", "--degree", "1,1"],
    &["patterns", "--n", "2", "--degree", "1", "--global"],
    &["verify-gl", "--n", "2", "--max-degree", "3"],
    &["verify-gl", "--n", "3", "--max-degree", "2"],
    &["gt-spectrum", "--n", "3", "--degree", "2,1"],
    &["gt-spectrum", "--n", "3", "--max-degree", "2"],
    &["whittaker", "--n", "3", "--degree", "1,1"],
    &["ring", "--n", "3", "--degree", "1,1", "--spec", "x1=0,x2=1,x3=2,h=1"],
    &["qc-check", "--n", "4", "--max-degree", "1"],
    &["flatness", "--n", "3", "--max-degree", "2"],
    &["global-verify", "--n", "2", "--max-degree", "2"],
    &["ktheory", "--n", "3", "--max-degree", "2"],
];

fn check(args: &[&str]) -> GoldenOutcome {
    let argv: Vec<&str> = std::iter::once("verma-lab").chain(args.iter().copied()).collect();
    let (outcome, text) = run_capture(argv).unwrap();
    compare_or_bless(&golden_dir(), &render::document(&outcome), &text, bless()).unwrap()
}

#[test]
fn outputs_match_goldens() {
    let mut bad = Vec::new();
    for args in RUNS {
        match check(args) {
            GoldenOutcome::Match | GoldenOutcome::Blessed(_) => {}
            GoldenOutcome::Mismatch(lines) => bad.push(format!("{args:?}: {lines:?}")),
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

/// Exact results do not depend on the seed, which is not even echoed.
#[test]
fn changed_seed_in_exact_mode_still_matches() {
    if bless() {
        return;
    }
    let out = check(&["verify-gl", "--n", "3", "--max-degree", "2", "--seed", "99"]);
    assert_eq!(out, GoldenOutcome::Match);
}

#[test]
fn golden_flag_on_the_binary() {
    let dir = golden_dir();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_verma-lab"))
            .args(args)
            .args(["--golden", dir.to_str().unwrap()])
            .output()
            .unwrap()
    };
    if !bless() {
        let ok = run(&["verify-gl", "--n", "2", "--max-degree", "3"]);
        assert_eq!(ok.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&ok.stderr).contains("golden: match"));
    }
    let missing = run(&["verify-gl", "--n", "2", "--max-degree", "7"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("--bless"));
}

/// A family whose lowering operators are doubled breaks `[E12,E21]`; the
/// comparison must name that item.
#[test]
fn perturbed_family_is_caught_by_name() {
    if bless() {
        return;
    }
    let w = Weights::<FieldElem>::symbolic(2);
    let fam = GlFamily::build(&w, &padded_window(2, 3)).unwrap();
    let two = FieldElem::from_i64(2);
    let mutant = GlFamily::from_seeds(
        2,
        vec![fam.e(1).clone()],
        vec![fam.f(1).scale(&two)],
        vec![fam.get(1, 1).clone(), fam.get(2, 2).clone()],
    );
    let mut config = serde_json::Map::new();
    config.insert("n".into(), json!(2));
    config.insert("max_degree".into(), json!(3));
    config.insert("mode".into(), json!("exact"));
    let outcome = Outcome {
        command: "verify-gl",
        config,
        reports: vec![check_gl_relations_with(&mutant, 3)],
        data: None,
    };
    let doc = render::document(&outcome);
    let res = compare_or_bless(&golden_dir(), &doc, &render::to_json(&doc), false).unwrap();
    let GoldenOutcome::Mismatch(lines) = res else { panic!("mutant matched the golden") };
    assert!(lines.iter().any(|l| l.starts_with("item verify-gl: [E12,E21] on 4 blocks changed")), "{lines:#?}");
}
