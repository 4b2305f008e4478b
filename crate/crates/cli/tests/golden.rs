use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use morgan_unify_cli::run_cli;
use serde_json::Value;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let argv = std::iter::once("morgan-unify").chain(args.iter().copied());
    let out = run_cli(argv, &mut std::io::empty());
    (out.code, out.stdout)
}

fn path(name: &str) -> String {
    golden(name).to_str().unwrap().to_string()
}

#[test]
fn documents_round_trip_byte_identically() {
    let mut seen = 0;
    for entry in std::fs::read_dir(golden("")).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "json") {
            let text = std::fs::read_to_string(&p).unwrap();
            let (code, out) = run(&["validate", p.to_str().unwrap()]);
            assert_eq!(code, 0, "{}", p.display());
            assert_eq!(out, text, "{}", p.display());
            seen += 1;
        }
    }
    assert!(seen >= 10);
}

#[test]
fn command_outputs_match_goldens() {
    let cases: &[(&str, i32, &[&str])] = &[
        ("classify_crown", 0, &["classify", "crown.json", "--variety", "bdl"]),
        ("classify_empty", 2, &["classify", "empty.json", "--variety", "bdl"]),
        ("classify_antichain2", 0, &["classify", "antichain2.json", "--variety", "bdl"]),
        ("classify_diamond_poset", 0, &["classify", "diamond_poset.json", "--variety", "bdl"]),
        ("classify_two_fixed_kleene", 0, &["classify", "two_fixed.json", "--variety", "kleene"]),
        ("classify_k1", 0, &["classify", "k1_instance.json", "--variety", "kleene"]),
        ("classify_k2", 0, &["classify", "k2_instance.json", "--variety", "kleene"]),
        ("classify_m1", 0, &["classify", "m1_instance.json", "--variety", "dm"]),
        ("classify_m2", 0, &["classify", "m2_instance.json", "--variety", "dm"]),
        ("classify_m3", 0, &["classify", "m3_instance.json", "--variety", "dm"]),
        ("classify_swap", 2, &["classify", "swap.json", "--variety", "dm"]),
        ("free_dm_1", 0, &["free", "--variety", "dm", "--n", "1"]),
        ("free_kleene_2", 0, &["free", "--variety", "kleene", "--n", "2"]),
        ("dualize_free_dm1", 0, &["dualize", "free_dm1.json", "--direction", "to-dual"]),
        ("dualize_diamond", 0, &["dualize", "diamond.json", "--direction", "to-algebra"]),
        ("projective_diamond_kleene", 0, &["projective", "diamond.json", "--variety", "kleene"]),
        ("projective_swap_dm", 0, &["projective", "swap.json", "--variety", "dm"]),
        ("core_k1", 0, &["core", "k1_instance.json", "--variety", "kleene"]),
        ("witness_bdl_2", 0, &["witness", "--family", "bdl", "--n", "2", "--schema"]),
        ("embed_diamond", 0, &["embed", "diamond.json"]),
        ("retract_diamond", 0, &["retract", "diamond.json", "--variety", "dm"]),
        ("retract_swap", 3, &["retract", "swap.json", "--variety", "dm"]),
        ("oracle_antichain2", 0, &["oracle", "antichain2.json", "--check", "retraction"]),
        ("oracle_unifiers_two_fixed", 0, &["oracle", "two_fixed.json", "--check", "unifiers", "--bound", "2"]),
    ];
    for (name, code, args) in cases {
        let args: Vec<String> = args.iter().map(|a| if a.ends_with(".json") { path(a) } else { a.to_string() }).collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (got_code, out) = run(&args);
        let expected = std::fs::read_to_string(golden(&format!("expected/{name}.out"))).unwrap();
        assert_eq!(got_code, *code, "{name}");
        assert_eq!(out, expected, "{name}");
    }
}

#[test]
fn free_objects() {
    let (_, out) = run(&["free", "--variety", "dm", "--n", "2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let elements: Vec<&str> = v["elements"].as_array().unwrap().iter().map(|e| e.as_str().unwrap()).collect();
    assert_eq!(elements.len(), 16);
    assert_eq!(elements.first(), Some(&"22"));
    assert!(elements.contains(&"00") && elements.contains(&"33"));
    assert_eq!(std::fs::read_to_string(golden("d2.json")).unwrap(), out);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["free", "--variety", "dm", "--n", "7"]).0, 4);
    assert_eq!(run(&["witness", "--family", "m2", "--n", "2"]).0, 3);
    assert_eq!(run(&["classify", &path("swap.json"), "--variety", "kleene"]).0, 3);
    assert_eq!(run(&["classify", &path("crown.json"), "--variety", "dm"]).0, 3);
    assert_eq!(run(&["oracle", &path("crown.json"), "--check", "retraction"]).0, 4);
    assert_eq!(run(&["classify", "/nonexistent.json", "--variety", "bdl"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn malformed_documents_report_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"kind":"poset","elements":["a","b"],"covers":[["a","b"],["b","a"]]}"#, "antisymmetry", vec!["a", "b", "a"]),
        (r#"{"kind":"poset","elements":["a","a"],"covers":[]}"#, "duplicate_element", vec!["a"]),
        (r#"{"kind":"invposet","elements":["a","b"],"covers":[["a","b"]],"inv":{"a":"a","b":"b"}}"#, "not_antitone", vec!["a", "b"]),
        (r#"{"kind":"algebra","elements":["a","b"],"covers":[]}"#, "not_a_lattice", vec!["a", "b"]),
        (r#"{"kind":"poset","elements":["a"],"covers":[["a","q"]]}"#, "unknown_element", vec!["q"]),
        (r#"{"kind":"poset","elements":"a"}"#, "document", vec![]),
    ];
    for (k, (text, kind, witness)) in cases.into_iter().enumerate() {
        let p = dir.path().join(format!("bad{k}.json"));
        std::fs::write(&p, text).unwrap();
        let (code, out) = run(&["validate", p.to_str().unwrap()]);
        assert_eq!(code, 1, "{text}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], kind, "{text}");
        let got: Vec<&str> = v["error"]["witness"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
        assert_eq!(got, witness, "{text}");
    }
}

fn binary(args: &[&str], input: Option<&str>) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_morgan-unify"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut stdin = child.stdin.take().unwrap();
    if let Some(text) = input {
        stdin.write_all(text.as_bytes()).unwrap();
    }
    drop(stdin);
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn witness_domains_pipe_into_classify_as_most_general() {
    // each T_n is the dual of a projective algebra, so it is its own most general unifier
    let cases = [
        ("bdl", "bdl", 3),
        ("k1", "kleene", 3),
        ("k2", "kleene", 2),
        ("m1", "dm", 3),
        ("m2", "dm", 3),
        ("m3", "dm", 2),
    ];
    for (family, variety, n) in cases {
        let (code, doc) = binary(&["witness", "--family", family, "--n", &n.to_string()], None);
        assert_eq!(code, 0);
        let (code, out) = binary(&["classify", "-", "--variety", variety], Some(&doc));
        assert_eq!(code, 0, "{family}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["type"], "unitary", "{family}");
        let domain = &v["certificate"]["most_general"]["domain"];
        let t: Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(domain["elements"].as_array().unwrap().len(), t["elements"].as_array().unwrap().len());
    }
}

#[test]
fn pattern_instances_pipe_into_classify_as_nullary() {
    let cases = [
        ("crown.json", "bdl", "bdl"),
        ("k1_instance.json", "kleene", "k1"),
        ("k2_instance.json", "kleene", "k2"),
        ("m1_instance.json", "dm", "m1"),
        ("m2_instance.json", "dm", "m2"),
        // M1 forces M3 on intervals, so this shape is caught by the m1 search first
        ("m3_instance.json", "dm", "m1"),
    ];
    for (file, variety, family) in cases {
        let doc = std::fs::read_to_string(golden(file)).unwrap();
        let (code, out) = binary(&["classify", "-", "--variety", variety], Some(&doc));
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["type"], "nullary", "{file}");
        assert_eq!(v["certificate"]["family"], family, "{file}");
    }
}
