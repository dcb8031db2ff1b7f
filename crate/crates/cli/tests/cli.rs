use std::io::Write;
use std::process::{Command, Stdio};

use crowell_cli::{run, CommandResult, Status};
use crowell_core::diagram::fixture;
use crowell_core::presentation::{build_presentation, Presentation};
use serde_json::Value;

fn fixture_path(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn call(args: &[&str]) -> CommandResult {
    call_with_stdin(args, "")
}

fn call_with_stdin(args: &[&str], stdin: &str) -> CommandResult {
    run(args, &mut stdin.as_bytes())
}

fn json(r: &CommandResult) -> Value {
    assert_eq!(r.exit_code, 0, "{}", r.payload);
    serde_json::from_str(&r.payload).unwrap()
}

/// Runs the binary with `stdin`, returning exit code and stdout.
fn binary(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_crowell"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn present_whitehead() {
    let v = json(&call(&["present", &fixture_path("W.json")]));
    assert_eq!(v["generators"].as_array().unwrap().len(), 5);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert_eq!(v["phi"]["a1"], "-1 + t2");
    assert_eq!(v["phi"]["a3"], "-1 + t2");
}

#[test]
fn present_round_trips() {
    for name in ["W", "L7_2_8", "trefoil"] {
        let r = call(&["present", &fixture_path(&format!("{name}.json"))]);
        let parsed = Presentation::from_json(&r.payload).unwrap();
        assert_eq!(parsed, build_presentation(&fixture(name).unwrap()), "{name}");
    }
}

#[test]
fn nonconstant_coloring_of_the_second_link() {
    let r = call(&[
        "color",
        &fixture_path("L7_2_8.json"),
        "--spec",
        &fixture_path("gf3chi.json"),
        "--constraint",
        "2=zero",
        "--report",
        "nonconstant:1",
    ]);
    let count: u128 = json(&r)["count"].as_str().unwrap().parse().unwrap();
    assert!(count >= 1);
}

#[test]
fn sublink_of_whitehead_is_unknotted() {
    let (code, sublink) = binary(&["sublink", &fixture_path("W.json"), "--drop", "2"], "");
    assert_eq!(code, 0);
    let (code, poly) = binary(&["alexpoly", "-"], &sublink);
    assert_eq!(code, 0);
    assert_eq!(poly.trim(), "1");
    let unknot = call(&["alexpoly", &fixture_path("unknot.json")]);
    assert_eq!(unknot.payload, "1");
}

#[test]
fn quotient_mode_matches_the_diagram_mode_fingerprint() {
    let q = call(&["sublink", &fixture_path("L7_2_8.json"), "--drop", "2", "--mode", "quotient"]);
    let d = call(&["sublink", &fixture_path("L7_2_8.json"), "--drop", "2"]);
    let fq = call_with_stdin(&["fingerprint", "-"], &q.payload);
    let fd = call_with_stdin(&["fingerprint", "-"], &d.payload);
    assert_eq!(json(&fq), json(&fd));
}

#[test]
fn shipped_certificate_verifies() {
    let a = call(&["simplify", &fixture_path("W.json")]);
    let b = call(&["simplify", &fixture_path("L7_2_8.json")]);
    let dir = tempdir();
    let (pa, pb) = (dir.join("a.json"), dir.join("b.json"));
    std::fs::write(&pa, &a.payload).unwrap();
    std::fs::write(&pb, &b.payload).unwrap();
    let r = call(&["check-equiv", pa.to_str().unwrap(), pb.to_str().unwrap(), &fixture_path("W_to_L7_2_8.cert.json")]);
    assert_eq!((r.status, r.exit_code, r.payload.as_str()), (Status::Ok, 0, "VERIFIED"));
}

#[test]
fn refuted_certificate_exit_codes() {
    let dir = tempdir();
    let cert = dir.join("zero.json");
    let t = fixture_path("trefoil.json");
    let simplified = call(&["simplify", &t]);
    let p = dir.join("t.json");
    std::fs::write(&p, &simplified.payload).unwrap();
    let p = p.to_str().unwrap();
    let gens = json(&simplified)["generators"].clone();
    let images: serde_json::Map<String, Value> =
        gens.as_array().unwrap().iter().map(|g| (g.as_str().unwrap().to_string(), Value::Object(Default::default()))).collect();
    std::fs::write(&cert, serde_json::json!({ "images": images }).to_string()).unwrap();
    let cert = cert.to_str().unwrap();
    let r = call(&["check-equiv", p, p, cert]);
    assert_eq!(r.status, Status::Refuted);
    assert_eq!(r.exit_code, 1);
    assert!(r.payload.starts_with("REFUTED: "));
    let r = call(&["check-equiv", p, p, cert, "--expect", "refuted"]);
    assert_eq!((r.status, r.exit_code), (Status::Refuted, 0));
}

#[test]
fn usage_and_computation_errors() {
    assert_eq!(call(&["bogus"]).exit_code, 2);
    assert_eq!(call(&["sublink", &fixture_path("W.json")]).exit_code, 2);
    assert_eq!(call(&["present", "/nonexistent.json"]).exit_code, 3);
    assert_eq!(call_with_stdin(&["present", "-"], "{ not json").exit_code, 3);
    let r = call(&["color", &fixture_path("W.json"), "--spec", &fixture_path("gf3chi.json")]);
    assert_eq!(r.exit_code, 0);
    // a one-variable spec against a two-component link
    let r = call_with_stdin(
        &["color", &fixture_path("W.json"), "--spec", "-"],
        r#"{"modulus": 3, "rank": 1, "action": [[[2]]]}"#,
    );
    assert_eq!((r.status, r.exit_code), (Status::Error, 3));
    let r = call(&["color", &fixture_path("W.json"), "--spec", &fixture_path("gf3chi.json"), "--report", "sideways"]);
    assert_eq!(r.exit_code, 2);
    let r = call(&["permute", &fixture_path("W.json"), "--sigma", "1,1"]);
    assert_eq!(r.exit_code, 3);
}

#[test]
fn permute_swaps_constant_counts() {
    let plain = json(&call(&["fingerprint", &fixture_path("W.json")]));
    let swapped = call(&["permute", &fixture_path("W.json"), "--sigma", "2,1"]);
    let moved = json(&call_with_stdin(&["fingerprint", "-"], &swapped.payload));
    // scalar specs acting equally on both variables are fixed by the swap
    for spec in ["n3k1:2,2", "n5k1:4,4", "n7k1:3,3"] {
        let find = |v: &Value| v.as_array().unwrap().iter().find(|e| e["spec"] == spec).unwrap().clone();
        let (a, b) = (find(&plain), find(&moved));
        assert_eq!(a["unconstrained"], b["unconstrained"]);
        assert_eq!(a["constant"][0], b["constant"][1]);
        assert_eq!(a["constant"][1], b["constant"][0]);
    }
}

#[test]
fn ideals_and_reduce() {
    let v = json(&call(&["ideals", &fixture_path("trefoil.json"), "-k", "1"]));
    assert!(v.as_array().unwrap().iter().any(|m| m == "1 - t1 + t1^2" || m == "-1 + t1 - t1^2"));
    let r = call(&["reduce1", &fixture_path("W.json")]);
    assert_eq!(json(&r)["mu"], 1);
}

#[test]
fn lengths_of_a_fox_coloring() {
    let dir = tempdir();
    let spec = dir.join("z3.json");
    std::fs::write(&spec, r#"{"modulus": 3, "rank": 1, "action": [[[2]]]}"#).unwrap();
    let r = call_with_stdin(
        &["lengths", &fixture_path("trefoil.json"), "--spec", spec.to_str().unwrap(), "--coloring", "-"],
        r#"{"a1": [0], "a2": [1], "a3": [2]}"#,
    );
    let rows = json(&r);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|e| e["length"] == 1));
    let bad = call_with_stdin(
        &["lengths", &fixture_path("trefoil.json"), "--spec", spec.to_str().unwrap(), "--coloring", "-"],
        r#"{"a1": [0], "a2": [1], "a3": [1]}"#,
    );
    assert_eq!(bad.exit_code, 3);
}

#[test]
fn jobs_and_reruns_give_identical_bytes() {
    let w = fixture_path("W.json");
    let (c1, one) = binary(&["fingerprint", &w], "");
    let (c2, again) = binary(&["fingerprint", &w], "");
    let (c3, four) = binary(&["fingerprint", &w, "--jobs", "4"], "");
    assert_eq!((c1, c2, c3), (0, 0, 0));
    assert_eq!(one, again);
    assert_eq!(one, four);
}

#[test]
fn battery_from_the_environment() {
    let dir = tempdir();
    let battery = dir.join("battery.json");
    std::fs::write(&battery, r#"[{"modulus": 3, "rank": 1, "action": [[[2]]]}]"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_crowell"))
        .args(["fingerprint", &fixture_path("trefoil.json")])
        .env(crowell_cli::BATTERY_VAR, &battery)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["spec"], "n3k1:2");
    assert_eq!(v[0]["unconstrained"], 9);
}

/// A fresh directory under the target dir, unique per call.
fn tempdir() -> std::path::PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("crowell-cli-{}-{}", std::process::id(), NEXT.fetch_add(1, Ordering::Relaxed)));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
