use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn rr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rr")).args(args).env_remove("RR_DIM_CAP").env_remove("RR_PREC_CAP").env_remove("RR_ENUM_CAP").output().unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn canon() {
    let o = rr(&["canon", "root(6,48)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(2)^(2/3) * (3)^(1/6)\n");
}

#[test]
fn rationalize_example1() {
    let report = tmp("report.json");
    let o = rr(&["rationalize", &data("example1.mod"), "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(": x3 = 0;"), "{text}");
    assert!(text.contains(": x1 - x2 = 0;"), "{text}");
    assert!(text.contains(": x2 + x4 = 1;"), "{text}");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["rows_out"], 3);
    assert_eq!(v["basis"], serde_json::json!([[2, 2]]));
}

#[test]
fn rationalize_to_file_and_back() {
    let out = tmp("rat.mod");
    let o = rr(&["rationalize", &data("example1.mod"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = rr(&["verify", &data("example1.mod"), "--box", "0:3", "--against", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equivalent: yes"));
}

#[test]
fn verify_example1() {
    let o = rr(&["verify", &data("example1.mod"), "--box", "0:3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(0, 0, 0, 1)\n(1, 1, 0, 0)\n"), "{text}");
}

#[test]
fn verify_counterexample_exit_code() {
    let a = tmp("a.mod");
    let b = tmp("b.mod");
    std::fs::write(&a, "var x1 integer; var x2 integer; s.t. x1 - x2 = 0;").unwrap();
    std::fs::write(&b, "var x1 integer; var x2 integer; s.t. x1 + x2 = 0;").unwrap();
    let o = rr(&["verify", a.to_str().unwrap(), "--box", "0:2", "--against", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("counterexample [1, 1]"));
}

#[test]
fn solve_modes() {
    let o = rr(&["solve", &data("example1.mod")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("optimal\n") && stdout(&o).contains("value = 1\n"), "{}", stdout(&o));
    let o = rr(&["solve", &data("example1.mod"), "--relaxation"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("unbounded\n"));
    let o = rr(&["solve", &data("example1.mod"), "--relaxation", "--field", "rational"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("irrational"));
}

#[test]
fn stdin_and_parse_errors() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rr"))
        .args(["export-lp", "-", "--precision", "6"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"var x >= 0; max root(2,2)*x; s.t. x <= 1;").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(" obj: 1.41421 x\n"));

    let bad = tmp("bad.mod");
    std::fs::write(&bad, "var x;\ns.t. x * x = 1;").unwrap();
    let o = rr(&["rationalize", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:8"));
}

#[test]
fn caps_and_usage() {
    let o = rr(&["canon", "1/(root(2,2) + root(3,3) + root(5,5))", "--dim-cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_rr"))
        .args(["verify", &data("example1.mod"), "--box", "0:3"])
        .env("RR_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(rr(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rr(&["verify", &data("example1.mod"), "--box", "3:0"]).status.code(), Some(1));
    assert_eq!(rr(&["--help"]).status.code(), Some(0));
}

#[test]
fn generate_is_deterministic() {
    let a = rr(&["generate", "--seed", "7"]);
    let b = rr(&["generate", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("var x1"));
}
