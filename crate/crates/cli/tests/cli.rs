use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opforge")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&o.stderr)));
    (code(&o), v)
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&v).expect("schema compiles")
}

const REPORTS: &[&[&str]] = &[
    &["koszul", "check", "--operad", "pois", "--n", "2", "--max-arity", "3"],
    &["koszul", "check-module", "--module", "sphere-diagonal", "--n", "2", "--d", "2", "--max-arity", "3"],
    &["layers", "--n", "2", "--k", "3"],
    &["layers", "--n", "3", "--k", "4"],
    &["operad", "show", "pois", "--n", "2", "--arity", "3", "--basis"],
    &["operad", "show", "--name", "lie", "--suspend", "-1", "--arity", "4"],
    &["operad", "list"],
    &["module", "show", "--kind", "config", "--n", "2", "--arity", "0"],
    &["module", "restrict", "--along", "lie-to-pois", "--n", "2", "--arity", "3", "--basis"],
    &["module", "show", "--kind", "torus", "--shift", "1,-1", "--arity", "2", "--basis"],
    &["bar", "homology", "--operad", "pois", "--n", "2", "--arity", "3"],
    &["bar", "homology", "--module", "sphere", "--n", "1", "--arity", "3", "--prime", "5"],
    &["selftest", "--criterion", "5"],
];

#[test]
fn koszul_check_passes() {
    let (c, v) = json(&["koszul", "check", "--operad", "pois", "--n", "2", "--max-arity", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["2"]["pass"], true);
    assert_eq!(v["3"]["pass"], true);
    assert_eq!(v["3"]["bar_homology"], "2q^2 + 3q^3 + q^4");
}

#[test]
fn layers_exit_codes() {
    let (c, v) = json(&["layers", "--n", "2", "--k", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["total_fiber"], "2q^2");
    let (c, v) = json(&["layers", "--n", "2", "--k", "4"]);
    assert_eq!(c, 1);
    assert_eq!(v["pass"], false);
    let o = run(&["layers", "--n", "2", "--k", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("formal immersions"));
}

#[test]
fn caps_and_force() {
    let o = run(&["operad", "show", "--name", "lie", "--arity", "10"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    let (c, v) = json(&["operad", "show", "--name", "lie", "--arity", "8", "--force"]);
    assert_eq!(c, 0);
    assert_eq!(v["dimensions"]["-7"], 5040);
}

#[test]
fn usage_errors() {
    for args in [
        &["frobnicate"][..],
        &["operad", "show", "--name", "assoc", "--arity", "3"],
        &["operad", "show", "--name", "pois", "--arity", "3"],
        &["module", "show", "--kind", "klein", "--arity", "2"],
        &["koszul", "check", "--operad", "com", "--max-arity", "3"],
        &["bar", "homology", "--operad", "com", "--arity", "3", "--prime", "4"],
        &["module", "restrict", "--n", "2", "--arity", "2"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    let o = run(&["operad", "show", "--name", "assoc", "--arity", "3"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("com"));
}

#[test]
fn failed_duality_exits_one() {
    let (c, v) = json(&["koszul", "check", "--operad", "pois", "--n", "2", "--dual-shift", "1", "--max-arity", "3"]);
    assert_eq!(c, 1);
    assert_eq!(v["2"]["pass"], false);
}

#[test]
fn output_to_file() {
    let dir = std::env::temp_dir().join(format!("opforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&["koszul", "check", "--operad", "pois", "--n", "1", "--max-arity", "3", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["3"]["pass"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn csv_output() {
    let o = run(&["bar", "homology", "--operad", "com", "--arity", "3", "--csv"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "degree,complex,homology\n1,1,0\n2,3,2\n");
    let o = run(&["koszul", "check", "--operad", "pois", "--n", "2", "--max-arity", "2", "--csv"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "arity,source,bar_homology,predicted,pass\n2,1 + q,q + q^2,q + q^2,true\n");
}

#[test]
fn reports_validate_against_schema() {
    let s = schema();
    for args in REPORTS {
        let (_, v) = json(args);
        let msgs: Vec<String> = match s.validate(&v) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{args:?}: {msgs:?}");
    }
    assert!(!s.is_valid(&serde_json::json!({"2": {"source": "1", "pass": true}})));
}

#[test]
fn outputs_are_deterministic() {
    for args in REPORTS {
        for fmt in [None, Some("--json"), Some("--csv")] {
            if args[0] == "selftest" && fmt.is_none() {
                // the text form reports timings
                continue;
            }
            let mut a = args.to_vec();
            a.extend(fmt);
            let first = run(&a);
            let second = Command::new(env!("CARGO_BIN_EXE_opforge"))
                .args(&a)
                .env("OPFORGE_THREADS", "1")
                .output()
                .unwrap();
            assert_eq!(first.stdout, second.stdout, "{a:?}");
            assert_eq!(first.status, second.status, "{a:?}");
        }
    }
}

#[test]
fn thread_variable_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_opforge"))
        .args(["layers", "--n", "2", "--k", "2"])
        .env("OPFORGE_THREADS", "none")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}
