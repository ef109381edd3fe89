//! End-to-end drives of the command-line binary: exit codes, file
//! round-trips, determinism of sampling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weakmonads"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("weakmonads-test-{}-{name}", std::process::id()));
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn generate_check_classify_lift_pipeline() {
    let wba = tmp("wba.json");
    let ent = tmp("ent.json");
    let coring = tmp("coring.json");
    let out = run(&[
        "generate",
        "groupoid-algebra",
        "--objects",
        "2",
        "--field",
        "Q",
        "--out",
        wba.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(run(&["check", wba.to_str().unwrap()]).status.success());
    assert!(run(&[
        "generate",
        "psi-r",
        wba.to_str().unwrap(),
        "--out",
        ent.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&["classify", ent.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["weak"], serde_json::json!(true));
    assert_eq!(v["mixed_dl"], serde_json::json!(false));
    let out = run(&[
        "lift",
        ent.to_str().unwrap(),
        "--kind",
        "iota",
        "--out",
        coring.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(run(&["check", coring.to_str().unwrap()]).status.success());
    assert!(run(&["roundtrip", "psi", ent.to_str().unwrap()])
        .status
        .success());
    assert!(run(&["characterize-wba", wba.to_str().unwrap()])
        .status
        .success());
    for f in [wba, ent, coring] {
        let _ = std::fs::remove_file(f);
    }
}

#[test]
fn failing_check_exits_one_and_bad_input_exits_two() {
    // A weak bialgebra with a sabotaged counit: parseable, fails checks.
    let path = tmp("bad.json");
    std::fs::write(
        &path,
        r#"{
  "field": "Q",
  "kind": "weak_bialgebra",
  "dim": 2,
  "maps": {
    "mult": [["1","0","0","0"],["0","0","0","1"]],
    "unit": [["1"],["1"]],
    "comult": [["1","0"],["0","0"],["0","0"],["0","1"]],
    "counit": [["1","2"]]
  }
}"#,
    )
    .unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // Malformed JSON exits 2 with a located error.
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn sampling_is_deterministic_and_valid() {
    let a = tmp("sample-a.json");
    let b = tmp("sample-b.json");
    for (path, seed) in [(&a, "42"), (&b, "42")] {
        let out = run(&[
            "sample",
            "strict_wreath",
            "--field",
            "F5",
            "--seed",
            seed,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap()
    );
    // The emitted wreath passes its checker and round-trips.
    assert!(run(&["check", a.to_str().unwrap()]).status.success());
    assert!(run(&["roundtrip", "thm23", a.to_str().unwrap()])
        .status
        .success());
    let _ = std::fs::remove_file(a);
    let _ = std::fs::remove_file(b);
}

#[test]
fn wreath_premonad_cli_cycle() {
    let wreath = tmp("wreath.json");
    let pre = tmp("pre.json");
    let alg = tmp("alg.json");
    let back = tmp("back.json");
    assert!(run(&[
        "sample",
        "weak_wreath",
        "--field",
        "Q",
        "--seed",
        "3",
        "--out",
        wreath.to_str().unwrap()
    ])
    .status
    .success());
    assert!(run(&[
        "wreath",
        "to-premonad",
        wreath.to_str().unwrap(),
        "--out",
        pre.to_str().unwrap()
    ])
    .status
    .success());
    // Extract the base algebra from the wreath file by parsing it here.
    let text = std::fs::read_to_string(&wreath).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let t_dim = doc["dims"]["t"].as_u64().unwrap();
    let alg_doc = serde_json::json!({
        "field": "Q",
        "kind": "algebra",
        "dim": t_dim,
        "maps": { "mult": doc["maps"]["t_mult"], "unit": doc["maps"]["t_unit"] }
    });
    std::fs::write(&alg, serde_json::to_string(&alg_doc).unwrap()).unwrap();
    let s_dim = doc["dims"]["s"].as_u64().unwrap().to_string();
    assert!(run(&[
        "wreath",
        "from-premonad",
        pre.to_str().unwrap(),
        "--s-dim",
        &s_dim,
        "--t",
        alg.to_str().unwrap(),
        "--out",
        back.to_str().unwrap()
    ])
    .status
    .success());
    // The cycle reproduces the wreath file verbatim.
    assert_eq!(
        std::fs::read_to_string(&wreath).unwrap(),
        std::fs::read_to_string(&back).unwrap()
    );
    assert!(run(&["roundtrip", "prop38", wreath.to_str().unwrap(), "--trials", "5"])
        .status
        .success());
    for f in [wreath, pre, alg, back] {
        let _ = std::fs::remove_file(f);
    }
}
