use std::path::Path;
use std::process::Command;

use hcgl::gadgets::Implementation;
use hcgl::graphs::is_bipartite;
use hcgl::numerics::rational::{int, rat, BigRational};
use hcgl::partition::z_exact_scaled;
use serde_json::Value;
use tempfile::TempDir;

fn hcgl(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_hcgl")).args(args).output().expect("runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().expect("exit code"), json)
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

fn k4(dir: &TempDir) -> String {
    write(dir, "k4.json", r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#)
}

fn load_gadget(p: &Path) -> Implementation {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn eval_examples() {
    let d = TempDir::new().unwrap();
    let p4 = write(&d, "p4.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#);
    let (code, v) = hcgl(&["eval", "--graph", &p4, "--lambda", "-1", "--vertex", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["z_in"], "1");
    assert_eq!(v["payload"]["z_out"], "-1");
    assert_eq!(v["payload"]["z"], "0");

    let p2 = write(&d, "p2.json", r#"{"n":2,"edges":[[0,1]]}"#);
    let (code, v) = hcgl(&["eval", "--graph", &p2, "--lambda", "-1/2"]);
    assert_eq!((code, &v["payload"]["z"]), (0, &Value::from("0")));
    assert!(v["payload"].get("z_in").is_none());

    let empty = write(&d, "e.json", r#"{"n":0,"edges":[]}"#);
    let (code, v) = hcgl(&["eval", "--graph", &empty, "--lambda", "3"]);
    assert_eq!((code, &v["payload"]["z"]), (0, &Value::from("1")));
}

#[test]
fn eval_with_activity_file() {
    let d = TempDir::new().unwrap();
    let p2 = write(&d, "p2.json", r#"{"n":2,"edges":[[0,1]]}"#);
    let acts = write(&d, "a.json", r#"["-1/3", "2"]"#);
    let (code, v) = hcgl(&["eval", "--graph", &p2, "--activities", &acts, "--vertex", "1"]);
    assert_eq!(code, 0);
    // 1 + (-1/3) + 2
    assert_eq!(v["payload"]["z"], "8/3");
    assert_eq!(v["payload"]["z_in"], "2");
}

#[test]
fn eval_errors() {
    let d = TempDir::new().unwrap();
    let bad = write(&d, "bad.json", r#"{"n":2,"edges":[[0,0]]}"#);
    assert_eq!(hcgl(&["eval", "--graph", &bad, "--lambda", "1"]).0, 4);
    let p2 = write(&d, "p2.json", r#"{"n":2,"edges":[[0,1]]}"#);
    assert_eq!(hcgl(&["eval", "--graph", &p2, "--lambda", "1", "--vertex", "5"]).0, 4);
    assert_eq!(hcgl(&["eval", "--graph", &p2, "--lambda", "one"]).0, 4);
    assert_eq!(hcgl(&["eval", "--graph", &p2]).0, 4);
    assert_eq!(hcgl(&["frobnicate"]).0, 4);
    // A 40-cycle is one block beyond the enumeration cap.
    let edges: Vec<String> = (0..40).map(|i| format!("[{i},{}]", (i + 1) % 40)).collect();
    let c40 = write(&d, "c40.json", &format!(r#"{{"n":40,"edges":[{}]}}"#, edges.join(",")));
    let (code, v) = hcgl(&["eval", "--graph", &c40, "--lambda", "1"]);
    assert_eq!((code, &v["status"]), (3, &Value::from("capacity")));
}

fn implement_and_check(lambda: &str, target: &str, eps: &str, want_route: &str) -> Implementation {
    let d = TempDir::new().unwrap();
    let out = d.path().join("g.json");
    let (code, v) = hcgl(&[
        "implement", "--delta", "3", "--lambda", lambda, "--target", target, "--eps", eps, "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["trace"]["route"], want_route);
    let imp = load_gadget(&out);
    let g = &imp.gadget;
    assert!(g.graph.max_degree() <= 3);
    assert!(is_bipartite(&g.graph).is_some());
    let split = z_exact_scaled(&g.graph, &g.lambda, Some(g.terminal)).unwrap();
    assert!(split.ratio_equals(&g.claimed_ratio));
    assert_eq!(v["payload"]["ratio"], g.claimed_ratio.to_string());
    imp
}

#[test]
fn implement_examples() {
    let imp = implement_and_check("-1", "-2", "0", "pingpong");
    assert_eq!(imp.gadget.claimed_ratio, int(-2));

    let eps = rat(1, 1000);
    let imp = implement_and_check("-3/10", "-13/6", "1/1000", "path");
    let r: &BigRational = &imp.gadget.claimed_ratio;
    assert!((r - rat(-13, 6)) <= eps && (rat(-13, 6) - r) <= eps);

    let imp = implement_and_check("-1/5", "-9/10", "1/1000", "boosted_path");
    let r = &imp.gadget.claimed_ratio;
    assert!((r - rat(-9, 10)) <= eps && (rat(-9, 10) - r) <= eps);
}

#[test]
fn implement_statuses() {
    let (code, v) = hcgl(&["implement", "--delta", "3", "--lambda", "-1/8", "--target", "-2", "--eps", "1/1000"]);
    assert_eq!((code, &v["status"]), (4, &Value::from("domain_error")));
    let (code, v) = hcgl(&[
        "implement", "--delta", "3", "--lambda", "-3/10", "--target", "-13/6", "--eps", "1/1000000000", "--n-max",
        "5",
    ]);
    assert_eq!((code, &v["status"]), (5, &Value::from("search_exhausted")));
}

#[test]
fn implement_is_deterministic() {
    let args = ["implement", "--delta", "3", "--lambda", "-1/2", "--target", "3/7", "--eps", "1/1000"];
    let a = Command::new(env!("CARGO_BIN_EXE_hcgl")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_hcgl")).args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reduce_and_verify_k4() {
    let d = TempDir::new().unwrap();
    let h = k4(&d);
    let red = d.path().join("red.json");
    let red_s = red.to_str().unwrap();
    let (code, v) = hcgl(&[
        "reduce", "--h-graph", &h, "--delta", "3", "--lambda", "-1", "--lambda1", "-13/6", "--lambda2", "-9/10",
        "--eps", "0", "--out", red_s,
    ]);
    assert_eq!(code, 0, "{v}");
    let p = &v["payload"];
    assert_eq!(p["beta"]["a"], "83/372");
    assert_eq!(p["gamma"]["a"], "3/62");
    assert_eq!((p["n1"].as_u64(), p["n2"].as_u64(), p["g_vertices"].as_u64()), (Some(12), Some(6), Some(22)));
    // Gadget-level check of the witness quadratic: B < 0 at (83/372, 3/62).
    assert!(p["witness"]["b"]["a"].as_str().unwrap().starts_with('-'));

    let report = d.path().join("report.json");
    let (code, v) = hcgl(&["verify", "--reduction", red_s, "--out", report.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["passed"], true);
    let checks = v["payload"]["checks"].as_array().unwrap();
    let skipped: Vec<_> = checks.iter().filter(|c| c["status"] == "skipped").collect();
    assert_eq!(skipped.len(), 1);
    assert_eq!(skipped[0]["name"], "level_iii_g_prime");
    assert!(skipped[0]["note"].as_str().unwrap().contains("cap"));
    let l2 = checks.iter().find(|c| c["name"] == "level_ii_attachment").unwrap();
    assert_eq!(l2["lhs"], l2["rhs"]);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written, v["payload"]);

    // A tampered constant fails verification with exit code 2.
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&red).unwrap()).unwrap();
    doc["c2"] = Value::from("11");
    let bad = write(&d, "bad.json", &doc.to_string());
    let (code, v) = hcgl(&["verify", "--reduction", &bad]);
    assert_eq!((code, &v["status"]), (2, &Value::from("verification_failed")));
    let failed: Vec<&str> = v["payload"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"c2") && failed.contains(&"level_ii_attachment"), "{failed:?}");
}

#[test]
fn reduce_rejects_non_cubic_graphs() {
    let d = TempDir::new().unwrap();
    let p4 = write(&d, "p4.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#);
    let out = d.path().join("x.json");
    let (code, v) = hcgl(&["reduce", "--h-graph", &p4, "--delta", "3", "--lambda", "-1", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert!(v["payload"]["error"].as_str().unwrap().contains("3-regular"));
    assert!(!out.exists());
}

#[test]
fn selftest_subset_and_fault_injection() {
    let (code, v) = hcgl(&["selftest", "--only", "5,6,9"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"].as_array().unwrap().len(), 3);
    let (code, v) = hcgl(&["selftest", "--only", "5", "--corrupt", "5"]);
    assert_eq!((code, &v["status"]), (2, &Value::from("verification_failed")));
    assert_eq!(v["payload"][0]["passed"], false);
}

#[test]
fn precision_override_reaches_selftest() {
    let out = Command::new(env!("CARGO_BIN_EXE_hcgl"))
        .args(["selftest", "--only", "9"])
        .env("HCGL_PRECISION_BITS", "200")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["trace"]["precision_bits"], 200);
    assert_eq!(out.status.code(), Some(0));
}
