use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn run_env(args: &[&str], limits: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_torsorlab"));
    cmd.args(args).env_remove("TORSORLAB_LIMITS");
    if let Some(l) = limits {
        cmd.env("TORSORLAB_LIMITS", l);
    }
    cmd.output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON object")
}

fn display(v: &Value) -> &str {
    v["display"].as_str().unwrap()
}

fn fan_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const P2: &str = "rank 2\nray 1 0\nray 0 1\nray -1 -1\ncone 0 1\ncone 1 2\ncone 2 0\n";

#[test]
fn fan_reports() {
    let f = fan_file(P2);
    let v = json(&["fan", "--input", f.path().to_str().unwrap()]);
    assert_eq!(display(&v["result"]["class_group"]), "Z");
    assert_eq!(v["result"]["class_group"]["free_rank"], 1);
    assert_eq!(v["result"]["class_group"]["invariant_factors"], serde_json::json!([]));
    assert_eq!(v["result"]["cox"]["all_certified"], true);

    let rot = fan_file(&format!("{P2}action 0 -1 1 -1\n"));
    let v = json(&["fan", "--input", rot.path().to_str().unwrap(), "--report", "galois"]);
    assert_eq!(v["result"]["galois"]["orbit_sizes"], serde_json::json!([3]));
}

#[test]
fn fan_errors() {
    let line = fan_file("rank 2\nray 1 0\nray -1 0\ncone 0\ncone 1\n");
    let out = run(&["fan", "--input", line.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FanDoesNotSpan"));

    let bad = fan_file("rank 2\nray 1 0\nray 0 one\n");
    let out = run(&["fan", "--input", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = run(&["fan", "--input", "/nonexistent/fan.txt"]);
    assert_eq!(out.status.code(), Some(2));

    let f = fan_file(P2);
    let out = run(&["fan", "--input", f.path().to_str().unwrap(), "--report", "galois"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology() {
    let h = |g: &str, m: &str, d: &str| {
        let v = json(&["cohom", "--group", g, "--module", m, "--degree", d]);
        display(&v["result"]["cohomology"]).to_string()
    };
    assert_eq!(h("cyclic:2", "trivial", "2"), "Z/2");
    assert_eq!(h("sym:3", "regular", "1"), "0");
    assert_eq!(h("cyclic:4", "trivial", "0"), "Z");
    assert_eq!(h("cyclic:4", "induced:0,2", "2"), "Z/2");

    let v = json(&["cohom", "--group", "cyclic:6", "--degree", "2", "--cyclic"]);
    assert_eq!(display(&v["result"]["cohomology"]), "Z/6");
    assert_eq!(v["result"]["method"], "cyclic-periodic");
    let v = json(&["cohom", "--group", "cyclic:6", "--degree", "2"]);
    assert_eq!(v["result"]["method"], "bar");
}

#[test]
fn cohomology_errors() {
    assert_eq!(run(&["cohom", "--group", "bogus:1", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(run(&["cohom", "--group", "cyclic:2", "--degree", "4"]).status.code(), Some(2));
    assert_eq!(run(&["cohom", "--group", "cyclic:4", "--module", "induced:0,1", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(run(&["cohom", "--group", "sym:3", "--degree", "1", "--cyclic"]).status.code(), Some(2));
    let out = run(&["cohom", "--group", "sym:4", "--degree", "3", "--max-cochain-dim", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SizeLimitExceeded"));
    assert_eq!(run(&["cohom", "--group", "sym:5", "--degree", "0"]).status.code(), Some(3));
}

#[test]
fn limits_precedence() {
    let args = ["cohom", "--group", "cyclic:4", "--degree", "3"];
    assert_eq!(run_env(&args, None).status.code(), Some(0));
    assert_eq!(run_env(&args, Some("cochain_dim=10")).status.code(), Some(3));
    let mut with_flag = args.to_vec();
    with_flag.extend(["--max-cochain-dim", "1000"]);
    assert_eq!(run_env(&with_flag, Some("cochain_dim=10")).status.code(), Some(0));
    let mut with_limits = args.to_vec();
    with_limits.extend(["--limits", "cochain_dim=1000"]);
    assert_eq!(run_env(&with_limits, Some("cochain_dim=10")).status.code(), Some(0));
    assert_eq!(run_env(&args, Some("nonsense")).status.code(), Some(2));
    assert_eq!(run_env(&["cohom", "--group", "sym:4", "--degree", "0"], Some("group_order=6")).status.code(), Some(3));
}

#[test]
fn binorm() {
    let v = json(&["binorm", "--g1", "cyclic:2", "--g2", "cyclic:3"]);
    assert_eq!(display(&v["result"]["h2"]), "0");
    assert_eq!(v["result"]["vanishing_predicted"], true);
    assert_eq!(v["result"]["agrees_with_kunneth"], true);
    let v = json(&["binorm", "--g1", "cyclic:2", "--g2", "cyclic:2"]);
    assert_eq!(display(&v["result"]["h2"]), "Z/2");
    assert_eq!(v["result"]["agrees_with_kunneth"], true);
    let v = json(&["binorm", "--g1", "trivial", "--g2", "cyclic:4"]);
    assert_eq!(display(&v["result"]["h2"]), "0");
    assert_eq!(run(&["binorm", "--g1", "sym:3", "--g2", "sym:3"]).status.code(), Some(3));
}

#[test]
fn example() {
    let v = json(&["example", "--p", "19", "--q", "17"]);
    let r = &v["result"];
    assert_eq!(r["product"], -1);
    assert_eq!(r["search"]["solutions"], serde_json::json!([]));
    assert_eq!(display(&r["pic"]), "Z/2");
    let minus: Vec<&str> =
        r["invariants"].as_array().unwrap().iter().filter(|e| e["value"] == -1).map(|e| e["place"].as_str().unwrap()).collect();
    assert_eq!(minus, ["17"]);

    let table = |k: &str| {
        let v = json(&["example", "--p", "19", "--q", "17", "--precision", k]);
        v["result"]["invariants"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e["place"].clone(), e["value"].clone(), e["case"].clone()))
            .collect::<Vec<_>>()
    };
    assert_eq!(table("5"), table("20"));

    let out = run(&["example", "--p", "19", "--q", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q ≡ 1 mod 8 failed"));
    assert_eq!(run(&["example", "--p", "19", "--q", "17", "--precision", "100000"]).status.code(), Some(3));
}

#[test]
fn multinorm() {
    let pic = |k: &str, l: &str, s: &str| {
        let v = json(&["multinorm", "--degrees-k", k, "--degrees-l", l, "--exponents", s]);
        assert_eq!(v["result"]["units_constant"], true);
        assert_eq!(v["result"]["torsor_map_agrees"], true);
        display(&v["result"]["pic"]).to_string()
    };
    assert_eq!(pic("1,1", "1", "2"), "Z/2");
    assert_eq!(pic("1", "1", "1"), "0");
    assert_eq!(pic("1,1,1", "1", "2"), "Z/2 ⊕ Z/2");
    assert_eq!(run(&["multinorm", "--degrees-k", "1,x", "--degrees-l", "1", "--exponents", "2"]).status.code(), Some(2));
    assert_eq!(run(&["multinorm", "--degrees-k", "1", "--degrees-l", "1", "--exponents", "2,3"]).status.code(), Some(2));
    assert_eq!(run(&["multinorm", "--degrees-k", "1", "--degrees-l", "1", "--exponents", "1", "--c", "0"]).status.code(), Some(2));
}

#[test]
fn deterministic_json() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        serde_json::to_string(&v).unwrap()
    };
    for args in [
        vec!["example", "--p", "19", "--q", "17", "--search-bound", "20"],
        vec!["binorm", "--g1", "cyclic:2", "--g2", "cyclic:4"],
        vec!["multinorm", "--degrees-k", "2,1", "--degrees-l", "3", "--exponents", "2"],
    ] {
        let (a, b) = (json(&args), json(&args));
        let keys: Vec<&String> = a.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["command", "arguments", "input_digest", "result", "wall_time_ms"]);
        assert_eq!(a["input_digest"].as_str().unwrap().len(), 64);
        assert_eq!(strip(a), strip(b));
    }
}
