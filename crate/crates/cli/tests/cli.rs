use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn catalog(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/catalog").join(format!("{name}.alg"));
    p.to_str().unwrap().to_string()
}

fn phopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phopf")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = phopf(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_invocations() {
    let gk3 = catalog("gk3");
    let typea = catalog("typea");
    let out = stdout(&["check", "all", &gk3, "--degree", "3"]);
    assert!(out.lines().all(|l| l.ends_with(": PASS")), "{out}");
    assert_eq!(stdout(&["uea", "nf", &typea, "-e", "h(x)*m(g)"]), "g*h(x) + g*x\n");
    let cb = stdout(&["hb", "cobracket", &gk3]);
    assert!(cb.lines().any(|l| l == "d'(y3) = 2*(y1@y2 - y2@y1)"), "{cb}");
}

#[test]
fn files_and_example_names_agree() {
    for name in ["typea", "gk3", "symplectic", "gr-typea"] {
        assert_eq!(stdout(&["check", "all", name]), stdout(&["check", "all", &catalog(name)]), "{name}");
    }
}

#[test]
fn uea_operations() {
    assert_eq!(stdout(&["uea", "delta", "typea", "-e", "h(g)"]), "g@h(g) + h(g)@g\n");
    assert_eq!(stdout(&["uea", "antipode", "typea", "-e", "h(g)"]), "-g^-2*h(g)\n");
    let v: Value = serde_json::from_str(&stdout(&["--json", "uea", "nf", "typea", "-e", "h(x)*m(g)"])).unwrap();
    assert_eq!(v["nf"], "g*h(x) + g*x");
    assert_eq!(phopf(&["uea", "nf", "typea", "-e", "h(q)"]).status.code(), Some(2));
}

#[test]
fn quotient_maps() {
    assert_eq!(stdout(&["hb", "pi", "typea", "-e", "g*h(x)"]), "pi(g*h(x)) = y2\n");
    assert_eq!(stdout(&["hb", "lambda", "line", "-e", "h(x)"]), "lambda(h(x)) = h(x)@1 + 1@y1\n");
    assert_eq!(stdout(&["hb", "lie", "gk3"]), "[y3, y1] = y1 + y2\n[y3, y2] = y2\n");
}

#[test]
fn json_and_text_verdicts_agree() {
    for name in ["typea", "group-scalar", "xyzg"] {
        let text = phopf(&["check", "poisson-hopf", name]);
        let json = phopf(&["--json", "check", "poisson-hopf", name]);
        assert_eq!(text.status.code(), json.status.code(), "{name}");
        let rows: Value = serde_json::from_slice(&json.stdout).unwrap();
        let from_json: Vec<(String, String)> = rows
            .as_array()
            .unwrap()
            .iter()
            .map(|r| (r["name"].as_str().unwrap().to_string(), r["status"].as_str().unwrap().to_uppercase()))
            .collect();
        let from_text: Vec<(String, String)> = String::from_utf8(text.stdout)
            .unwrap()
            .lines()
            .map(|l| {
                let rest = l.strip_prefix("CHECK ").unwrap();
                let (n, s) = rest.split_once(": ").unwrap();
                (n.to_string(), s.split_whitespace().next().unwrap().to_string())
            })
            .collect();
        assert_eq!(from_json, from_text, "{name}");
    }
    assert_eq!(phopf(&["check", "poisson-hopf", "group-scalar"]).status.code(), Some(1));
}

#[test]
fn timing_adds_millis() {
    let out = stdout(&["--timing", "check", "hopf", "typea"]);
    assert!(out.lines().all(|l| l.contains(" millis=")), "{out}");
    let v: Value = serde_json::from_str(&stdout(&["--timing", "--json", "check", "hopf", "typea"])).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["millis"].is_u64()));
}

#[test]
fn examples_listing_and_dump() {
    let list = stdout(&["examples", "list"]);
    assert!(list.lines().any(|l| l.starts_with("gk3 ")));
    let json = stdout(&["--json", "examples", "list"]);
    let names: Vec<String> = json
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names.len(), list.lines().count());
    for name in names {
        let dumped = stdout(&["examples", "dump", &name]);
        assert_eq!(dumped, std::fs::read_to_string(catalog(&name)).unwrap(), "{name}");
    }
    assert_eq!(phopf(&["examples", "dump", "nope"]).status.code(), Some(2));
}

#[test]
fn parameter_bindings() {
    let lie = stdout(&["--set", "lambda1=2", "--set", "lambda2=3", "--set", "alpha=0", "hb", "lie", "gk3"]);
    assert_eq!(lie, "[y3, y1] = 2*y1\n[y3, y2] = 3*y2\n");
    let bad = phopf(&["--set", "lambda1=1", "--set", "lambda2=2", "hb", "lie", "gk3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("alpha"));
    assert_eq!(phopf(&["--set", "lambda", "check", "all", "typea"]).status.code(), Some(2));
}

#[test]
fn prime_field_opt_in() {
    let refused = phopf(&["check", "poisson", "restricted-p3"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("--prime-field"));
    assert_eq!(phopf(&["--prime-field", "check", "poisson", &catalog("restricted-p3")]).status.code(), Some(0));
}

#[test]
fn cohomology_dimensions() {
    assert_eq!(stdout(&["cohomology", "--s", "1", "--max-degree", "2", "symplectic"]), "HP^1_0 = 0\nHP^1_1 = 0\nHP^1_2 = 0\n");
    let v: Value = serde_json::from_str(&stdout(&["--json", "cohomology", "--s", "0", "--max-degree", "2", "line"])).unwrap();
    assert_eq!(v["dims"], serde_json::json!([1, 1, 1]));
    assert_eq!(phopf(&["cohomology", "--s", "1", "--max-degree", "2", "typea"]).status.code(), Some(2));
}

#[test]
fn smash_checks() {
    let out = stdout(&["smash", "check", "gr-typea"]);
    assert!(out.lines().any(|l| l == "CHECK smash-associativity: PASS"), "{out}");
    assert_eq!(phopf(&["smash", "check", "typea"]).status.code(), Some(2));
}
