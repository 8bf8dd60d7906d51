use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use theta_tqft::cyclo::CycloJson;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_theta-tqft"));
    c.env_remove("THETA_TQFT_THREADS");
    c
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

fn decode(v: &Value) -> theta_tqft::Cyclo {
    serde_json::from_value::<CycloJson>(v.clone()).unwrap().decode().unwrap()
}

#[test]
fn invariant_examples() {
    let dir = TempDir::new().unwrap();
    let hopf = write(&dir, "hopf.json", r#"{"n": 2, "linking": [[0, 1], [1, 0]]}"#);
    let plus = write(&dir, "unknot+1.json", r#"{"n": 1, "linking": [[1]]}"#);
    let empty = write(&dir, "empty.json", r#"{"n": 0, "linking": []}"#);
    for f in [&hopf, &plus, &empty] {
        let (code, out, err) = run(bin().args(["invariant", "--level", "2"]).arg(f));
        assert_eq!(code, 0, "{err}");
        let v = json(&out);
        assert!(decode(&v["Z"]).is_one(), "{out}");
        let z = &v["Z_complex"];
        assert!((z[0].as_f64().unwrap() - 1.0).abs() < 1e-12 && z[1].as_f64().unwrap().abs() < 1e-12);
    }
    let (_, out, _) = run(bin().args(["invariant", "--level", "2"]).arg(&plus));
    let v = json(&out);
    let omega = decode(&v["Omega"]);
    assert_eq!(omega, theta_tqft::CycloRing::new(2).unwrap().zeta8_pow(1));
    assert_eq!(v["signature"], 1);
}

#[test]
fn numeric_mode_and_text_links() {
    let dir = TempDir::new().unwrap();
    let link = write(&dir, "twisted.txt", "# two components\nX 0 1 +\nX 1 0 +\nX 0 0 +\nX 0 0 +\n");
    let (code, out, err) = run(bin().args(["invariant", "--level", "4", "--numeric"]).arg(&link));
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert!(v.get("Z").is_none());
    assert!(v["Z_complex"].is_array());
}

#[test]
fn json_round_trip_is_exact() {
    let dir = TempDir::new().unwrap();
    let link = write(&dir, "l.json", r#"{"n": 3, "linking": [[2, 1, 0], [1, -3, 2], [0, 2, 1]]}"#);
    let (_, out, _) = run(bin().args(["invariant", "--level", "6"]).arg(&link));
    let z = decode(&json(&out)["Z"]);
    let d = theta_tqft::FramedLinkData::load(&std::fs::read_to_string(&link).unwrap()).unwrap();
    let ring = theta_tqft::CycloRing::new(6).unwrap();
    assert_eq!(z, theta_tqft::rt::z_invariant(&d, &ring));
    let again = serde_json::to_value(&z).unwrap();
    assert_eq!(decode(&again), z);
}

#[test]
fn kirby_command() {
    let dir = TempDir::new().unwrap();
    let plus = write(&dir, "plus.json", r#"{"n": 1, "linking": [[1]]}"#);
    let empty = write(&dir, "empty.json", r#"{"n": 0, "linking": []}"#);
    let zero = write(&dir, "zero.json", r#"{"n": 1, "linking": [[0]]}"#);
    let (code, out, _) = run(bin().args(["--format", "text", "kirby", "--walks", "5"]).arg(&plus).arg(&empty));
    assert_eq!(code, 0);
    assert!(out.starts_with("invariants equal"), "{out}");
    let (code, out, _) = run(bin().args(["--format", "text", "kirby"]).arg(&zero).arg(&empty));
    assert_eq!(code, 1);
    assert!(out.starts_with("invariants differ"), "{out}");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let odd = write(&dir, "odd.txt", "X 0 1 +\n");
    let (code, _, err) = run(bin().arg("invariant").arg(&odd));
    assert_eq!(code, 2);
    assert!(err.contains("odd number"), "{err}");
    let garbled = write(&dir, "bad.txt", "X 0 1 +\nX 1 zero +\n");
    let (code, _, err) = run(bin().arg("invariant").arg(&garbled));
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(bin().arg("invariant").arg(dir.path().join("missing.json"))).0, 2);
    assert_eq!(run(bin().args(["--level", "5", "rep"])).0, 3);
    assert_eq!(run(bin().arg("rep").env("THETA_TQFT_THREADS", "zero")).0, 3);
    assert_eq!(run(bin().arg("rep").env("THETA_TQFT_THREADS", "1")).0, 0);
}

#[test]
fn verify_suites() {
    let (code, out, err) = run(bin().args(["--format", "text", "verify"]));
    assert_eq!(code, 0, "{out}{err}");
    assert_eq!(out.lines().filter(|l| l.starts_with("pass")).count(), 7, "{out}");

    let (code, out, _) = run(bin().args(["verify", "--suite", "egorov", "--genus", "2"]));
    assert_eq!(code, 0);
    let v = json(&out);
    assert!(v["suites"][0]["checks"].as_array().unwrap().iter().any(|c| c["name"].as_str().unwrap().starts_with("g=2")));

    let (code, out, _) = run(bin().args(["verify", "--suite", "egorov", "--wrong-sign"]));
    assert_eq!(code, 1);
    let v = json(&out);
    assert!(v["first_failure"]["check"]["detail"].as_str().unwrap().contains("p=[1], q=[0]"), "{out}");
    assert_eq!(run(bin().args(["verify", "--suite", "nope"])).0, 3);
}

#[test]
fn egorov_and_dft_commands() {
    let (code, out, _) = run(bin().args(["--format", "text", "egorov", "--word", "T", "--wrong-sign"]));
    assert_eq!(code, 1);
    assert!(out.contains("witness (p=[1], q=[0], k=0)"), "{out}");
    let (code, _, _) = run(bin().args(["egorov", "--genus", "2", "--averaging", "--word", "+(1,-1,0,0) +(0,0,1,0)"]));
    assert_eq!(code, 0);
    let (code, out, _) = run(bin().args(["dft", "--level", "2", "--word", "S T T s"]));
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["symplectic"], serde_json::json!([[1, -2], [0, 1]]));
    let (code, _, _) = run(bin().args(["dft", "--word", "Q"]));
    assert_eq!(code, 2);
}

#[test]
fn rep_and_analytic_commands() {
    let (code, out, _) = run(bin().args(["rep", "--level", "2", "--genus", "2"]));
    assert_eq!(code, 0);
    assert_eq!(json(&out)["passed"], true);
    let (code, out, _) = run(bin().args(["rep", "--level", "4", "--element", "1;0;0"]));
    assert_eq!(code, 0);
    assert_eq!(json(&out)["matrix"]["complex"].as_array().unwrap().len(), 4);
    let (code, out, err) = run(bin().args(["verify-analytic", "--level", "2", "--tau", "0.5,1"]));
    assert_eq!(code, 0, "{err}");
    assert_eq!(json(&out)["passed"], true);
    assert_eq!(run(bin().args(["verify-analytic", "--tau", "0,-1"])).0, 3);
    assert_eq!(run(bin().args(["verify-analytic", "--grid", "8"])).0, 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["--seed", "7", "verify", "--suite", "kirby", "--suite", "cocycle"];
    let a = run(bin().args(args)).1;
    let b = run(bin().args(args).env("THETA_TQFT_THREADS", "2")).1;
    assert_eq!(a, b);
}
