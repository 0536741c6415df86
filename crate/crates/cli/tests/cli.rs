use std::path::PathBuf;
use std::process::Command;

use htc_cli::{run, ModelDocument, EXIT_BUDGET, EXIT_OK, EXIT_USAGE};
use serde_json::{json, Value};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn htc(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["htc".to_string()];
    argv.extend(args.iter().map(|a| {
        if a.ends_with(".lc") {
            data(a)
        } else {
            a.to_string()
        }
    }));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_of(s: &str) -> Value {
    serde_json::from_str(s.trim()).unwrap_or_else(|e| panic!("{e}: {s}"))
}

#[test]
fn ysum_golden() {
    let (code, out, _) = htc(&["solve", "ysum.lc", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "{\"stable_models\":[{\"p\":true,\"y\":5}]}\n");
}

#[test]
fn vicious_circle_has_no_models() {
    let (code, out, _) = htc(&["solve", "vicious.lc", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json_of(&out), json!({"stable_models": []}));
    let (_, text, _) = htc(&["solve", "vicious.lc"]);
    assert_eq!(text, "Models: 0\n");
}

#[test]
fn tax_toy_sums_residents_only() {
    let (code, out, _) = htc(&["solve", "tax-toy.lc", "--json"]);
    assert_eq!(code, EXIT_OK);
    let want = json!({"stable_models": [{
        "lives_a": true, "lives_b": true, "region": true,
        "tax_a": 3, "tax_b": 4, "tax_c": 5, "total": 7
    }]});
    assert_eq!(json_of(&out), want);
}

#[test]
fn text_output() {
    let (code, out, _) = htc(&["solve", "ysum.lc"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "Model 1: {(p,t), (y,5)}\nModels: 1\n");
}

#[test]
fn ht_models_and_limit() {
    let (code, out, _) = htc(&["solve", "p.lc", "--ht", "--json"]);
    assert_eq!(code, EXIT_OK);
    let doc: ModelDocument = serde_json::from_str(out.trim()).unwrap();
    assert!(doc.stable_models.is_none());
    // p must hold at h; q is free with h below t: (q at neither), (q at t only), (q at both).
    let ht = doc.ht_models.unwrap();
    assert_eq!(ht.len(), 3);
    assert!(ht.iter().all(|m| m.h.get("p") == Some(&htc_core::semantics::Value::True)));
    let (_, out, _) = htc(&["solve", "p.lc", "--ht", "--models", "1"]);
    assert_eq!(out.lines().count(), 2);
    assert!(out.ends_with("Models: 3\n"), "{out}");
}

#[test]
fn model_document_round_trips() {
    let (_, out, _) = htc(&["solve", "tax-toy.lc", "--json"]);
    let doc: ModelDocument = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(serde_json::to_string(&doc).unwrap(), out.trim());
    assert!(serde_json::from_str::<ModelDocument>("{\"extra\":[]}").is_err());
}

#[test]
fn translate_delta_prints_five_implications() {
    let (code, out, _) = htc(&["translate", "cond.lc", "--pass", "delta"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("x + __c0 <= 4.\n"), "{out}");
    assert_eq!(out.lines().filter(|l| l.contains(" -> ")).count(), 5);
    assert!(out.starts_with("#int __c0 -9..0.\n"), "{out}");
}

#[test]
fn translate_passes() {
    let (_, out, _) = htc(&["translate", "ysum.lc", "--pass", "desugar"]);
    assert!(!out.contains("sum") && out.contains("(x | 0 : def(x))"), "{out}");
    let (_, out, _) = htc(&["translate", "ruleset.lc", "--pass", "unfold"]);
    assert!(!out.contains(":="), "{out}");
    let (code, out, _) = htc(&["translate", "tax-toy.lc", "--pass", "all"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains(":=") && !out.contains(" | 0 :") && out.contains("__c"), "{out}");
}

#[test]
fn translations_reparse_and_preserve_models() {
    let dir = std::env::temp_dir().join(format!("htc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (_, unfolded, _) = htc(&["translate", "ruleset.lc", "--pass", "unfold"]);
    let path = dir.join("unfolded.lc");
    std::fs::write(&path, unfolded).unwrap();
    let (code, out, _) = htc(&["check", "ruleset.lc", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json_of(&out)["report"]["verdict"], "equal");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_outcomes() {
    let (code, out, _) = htc(&["check", "p.lc", "q.lc"]);
    assert_eq!(code, EXIT_OK);
    let r = &json_of(&out)["report"];
    assert_eq!(r["mode"], "ht");
    assert_eq!(r["verdict"], "different");
    assert_eq!(r["witness"]["kind"], "interpretation");

    let (_, out, _) = htc(&["check", "p.lc", "p.lc", "--stable"]);
    assert_eq!(json_of(&out)["report"]["verdict"], "equal");

    let (_, out, _) = htc(&["check", "p.lc", "q.lc", "--project", "p"]);
    let r = &json_of(&out)["report"];
    assert_eq!(r["mode"], "stable");
    assert_eq!(r["projection"], json!(["p"]));
    assert_eq!(r["verdict"], "different");
}

#[test]
fn strong_check_of_conditional_elimination() {
    let dir = std::env::temp_dir().join(format!("htc-cli-strong-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (_, translated, _) = htc(&["translate", "orig.lc", "--pass", "delta"]);
    let path = dir.join("delta.lc");
    std::fs::write(&path, translated).unwrap();
    let (code, out, _) = htc(&[
        "check",
        "orig.lc",
        path.to_str().unwrap(),
        "--stable",
        "--project",
        "y,p",
        "--strong",
    ]);
    assert_eq!(code, EXIT_OK);
    let r = &json_of(&out)["report"];
    assert_eq!(r["mode"], "strong");
    assert_eq!(r["verdict"], "equal");
    // y = 0..9 gives ten facts plus p: 11 singles, 1 + 11 + 55 = 67 capped at 64.
    assert_eq!(r["contexts_checked"], 64);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn props_report() {
    let (code, out, _) = htc(&["props", "--suite", "persistence", "--seed", "5", "--count", "10"]);
    assert_eq!(code, EXIT_OK);
    let r = &json_of(&out)["report"];
    assert_eq!(r["suite"], "persistence");
    assert_eq!(r["seed"], 5);
    assert_eq!(r["count"], 10);
    assert_eq!(r["violations"], 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(htc(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(htc(&["solve"]).0, EXIT_USAGE);
    assert_eq!(htc(&["props", "--suite", "nope"]).0, EXIT_USAGE);
    let (code, _, err) = htc(&["solve", "missing.lc"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cannot read"), "{err}");
    assert_eq!(htc(&["--help"]).0, EXIT_OK);
}

#[test]
fn parse_errors_exit_one_with_position() {
    let dir = std::env::temp_dir().join(format!("htc-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.lc");
    std::fs::write(&path, "#int x 0..2.\nx <= z.\n").unwrap();
    let (code, _, err) = htc(&["solve", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("bad.lc") && err.contains('z'), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn budget_exceeded_exits_two() {
    let (code, _, err) = htc(&["--max-interps", "10", "solve", "ysum.lc"]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(!err.is_empty());
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_htc"))
}

#[test]
fn binary_exit_codes() {
    let ok = binary().args(["solve", &data("ysum.lc"), "--json"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "{\"stable_models\":[{\"p\":true,\"y\":5}]}\n");
    let usage = binary().arg("nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
    let budget = binary()
        .args(["solve", &data("ysum.lc")])
        .env("HTC_MAX_INTERPS", "10")
        .output()
        .unwrap();
    assert_eq!(budget.status.code(), Some(EXIT_BUDGET));
}

#[test]
fn binary_reruns_are_byte_identical() {
    let args = ["props", "--suite", "min-max", "--seed", "2", "--count", "15", "--jobs", "2"];
    let a = binary().args(args).output().unwrap();
    let b = binary().args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
}
