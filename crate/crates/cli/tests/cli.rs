use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use syzex_cli::{run, EXIT_BUDGET, EXIT_INVALID};

fn invoke(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("syzex").chain(args.iter().copied()));
    (out.code, out.output)
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out) = invoke(&full);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("syzex-cli-{}-{name}", std::process::id()))
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

#[test]
fn kronecker_ed_at_zero() {
    let r = json(&["ed", "kron2", "--i", "0"]);
    let iv = &r["results"]["intervals"][0];
    assert_eq!((iv["exact"].as_bool(), iv["lower"].as_u64()), (Some(true), Some(1)));
    let line = r["provenance"][0].as_str().unwrap();
    assert!(line.contains("lower by R1") && line.contains("upper by R3"), "{line}");
}

#[test]
fn syzygy_file_round_trips() {
    let out = temp("omega.json");
    let path = out.to_str().unwrap();
    let r = json(&["mod", "syzygy", "--n", "1", "kron2", "S0", "--out", path]);
    assert_eq!(r["results"]["dims"], serde_json::json!([0, 2]));
    let s = &r["results"]["summands"];
    assert_eq!(s.as_array().unwrap().len(), 1);
    assert_eq!(
        (s[0]["dims"].clone(), s[0]["multiplicity"].as_u64()),
        (serde_json::json!([0, 1]), Some(2))
    );

    let v = json(&["mod", "validate", "kron2", path]);
    assert_eq!(v["results"]["valid"], true);
    assert_eq!(v["results"]["dims"], serde_json::json!([0, 2]));
    let _ = std::fs::remove_file(&out);
}

#[test]
fn corpus_lists_every_example() {
    let r = json(&["corpus", "list"]);
    let ids: Vec<&str> = r["results"]["algebras"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["id"].as_str().unwrap())
        .collect();
    for id in "kron2 beilinson2 fivevertex euclideanB nodeA nodeB bm23 xiA xiB".split(' ') {
        assert!(ids.contains(&id), "{id} missing from {ids:?}");
    }
}

#[test]
fn invalid_input_exits_two_with_violations() {
    let (code, out) = invoke(&["mod", "validate", "kron2", "S7"]);
    assert_eq!(code, EXIT_INVALID, "{out}");
    assert_eq!(invoke(&["no-such-command"]).0, EXIT_INVALID);
    assert_eq!(invoke(&["ed", "no-such-algebra"]).0, EXIT_INVALID);

    // x0 should be 1 x 2 for dimensions (2, 1)
    let bad = temp("bad.json");
    std::fs::write(
        &bad,
        r#"{"algebra":"kron2","dim":{"0":2,"1":1},"action":{"x0":[[1]],"x1":[[0,1]]}}"#,
    )
    .unwrap();
    let (code, out) = invoke(&["--format", "json", "mod", "validate", "kron2", bad.to_str().unwrap()]);
    let _ = std::fs::remove_file(&bad);
    assert_eq!(code, EXIT_INVALID);
    let r: Value = serde_json::from_str(&out).unwrap();
    let errors = r["errors"].as_array().unwrap();
    assert!(errors.iter().any(|e| e.as_str().unwrap().contains("x0")), "{errors:?}");
}

#[test]
fn exhausted_budget_exits_one() {
    let (code, out) = invoke(&["--budget", "1", "ext", "kron2", "S0", "S1", "--enumerate"]);
    assert_eq!(code, EXIT_BUDGET, "{out}");

    let status = Command::new(env!("CARGO_BIN_EXE_syzex"))
        .args(["bullet", "kron2", "--left", "S1", "--right", "S0", "--dim-bound", "4"])
        .env("SYZEX_BUDGET", "1")
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(EXIT_BUDGET));
}

#[test]
fn enumeration_counts_classes() {
    let r = json(&["ext", "kron2", "S0", "S1", "--enumerate"]);
    assert_eq!(r["results"]["dim"], 2);
    let classes = r["results"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 4);
    assert_eq!(classes.iter().filter(|c| c["split"] == true).count(), 1);
}

#[test]
fn same_seed_same_bytes() {
    for line in [
        "--seed 7 --format json mod decompose kron2 S0+P0+I1",
        "--seed 7 --format json layer kron2 --gen S0,S1 --n 2 --dim-bound 4",
        "--seed 7 ed euclideanB --i 0,1",
    ] {
        let args: Vec<&str> = line.split(' ').collect();
        let args = args.as_slice();
        assert_eq!(invoke(args), invoke(args));
    }
}

fn json_numbers(v: &Value, out: &mut BTreeMap<String, usize>) {
    match v {
        Value::Number(n) => *out.entry(n.to_string()).or_default() += 1,
        Value::Array(xs) => xs.iter().for_each(|x| json_numbers(x, out)),
        Value::Object(m) => m.values().for_each(|x| json_numbers(x, out)),
        _ => {}
    }
}

fn text_numbers(s: &str) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for tok in s.split(|c: char| !c.is_ascii_digit()).filter(|t| !t.is_empty()) {
        *out.entry(tok.to_string()).or_default() += 1;
    }
    out
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    for args in [
        ["ed", "kron2", "--i", "0,1"].as_slice(),
        ["mod", "syzygy", "--n", "2", "beilinson2", "S0"].as_slice(),
        ["reptype", "fivevertex", "--dim-bound", "8"].as_slice(),
        ["syzcat", "euclideanB", "--n", "1", "--dim-bound", "5"].as_slice(),
    ] {
        let (_, text) = invoke(args);
        let mut want = BTreeMap::new();
        json_numbers(&json(args), &mut want);
        let have = text_numbers(&text);
        for (n, k) in want {
            assert!(
                have.get(&n).copied().unwrap_or(0) >= k,
                "{args:?}: {n} appears {k} times in json"
            );
        }
    }
}

#[test]
fn reports_match_the_schema() {
    let v = schema();
    let cases: [&[&str]; 6] = [
        &["corpus", "show", "fivevertex"],
        &["--timings", "ed", "kron2", "--i", "0,1"],
        &["algebra", "info", "beilinson2"],
        &["bullet", "kron2", "--left", "S0", "--right", "S1", "--dim-bound", "4"],
        &["tilting", "fivevertex", "T"],
        &["mod", "validate", "kron2", "S9"],
    ];
    for args in cases {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let (_, out) = invoke(&full);
        let r: Value = serde_json::from_str(&out).unwrap();
        let errors: Vec<String> = v.iter_errors(&r).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}
