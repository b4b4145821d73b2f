use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn cli(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cliffweil"))
        .args(args)
        .env_remove("CLIFFWEIL_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn cliffweil");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn result(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "cliffweil/1");
    v["result"].clone()
}

#[test]
fn qr_code_pipes_into_check() {
    let code = cli(&["code", "qr", "--field", "F4", "--p", "7"], None);
    let c = result(&code);
    assert_eq!((c["n"].as_u64(), c["k"].as_u64()), (Some(8), Some(4)));
    let check = cli(&["code", "check", "--doubly-even"], Some(&code.stdout));
    assert_eq!(result(&check)["holds"], true);
    let text = cli(&["--format", "text", "code", "check", "--doubly-even"], Some(&code.stdout));
    assert_eq!(String::from_utf8(text.stdout).unwrap().trim(), "true");
}

#[test]
fn distance_and_expansion() {
    let code = cli(&["code", "qr", "--field", "F4", "--p", "11"], None);
    assert_eq!(result(&cli(&["code", "dist"], Some(&code.stdout)))["min_distance"], 6);
    let q4 = cli(&["code", "qr", "--field", "F4", "--p", "3"], None);
    let binary = cli(&["code", "expand", "--to", "F2"], Some(&q4.stdout));
    let b = result(&binary);
    assert_eq!((b["field"].as_str(), b["n"].as_u64(), b["k"].as_u64()), (Some("F2"), Some(8), Some(4)));
    let rational = result(&cli(&["code", "rational", "--to", "F2"], Some(&q4.stdout)));
    assert_eq!(rational["field"], "F2");
}

#[test]
fn enumerator_of_q4() {
    let q4 = cli(&["code", "qr", "--p", "3"], None);
    let p = result(&cli(&["cwe"], Some(&q4.stdout)));
    assert_eq!(p["nvars"], 4);
    let total: u64 = p["terms"].as_array().unwrap().iter().map(|t| t["num"].as_str().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 16);
}

#[test]
fn group_commands() {
    assert_eq!(result(&cli(&["group", "order", "--field", "F4"], None))["order"], 3840);
    assert_eq!(result(&cli(&["group", "order", "--field", "F2"], None))["order"], 192);
    let m = result(&cli(&["group", "molien", "--field", "F4", "--max-deg", "12"], None));
    let coeffs: Vec<&str> = m["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "0", "0", "0", "1", "0", "0", "0", "2", "0", "0", "0", "3"]);
    let v = cli(&["group", "verify", "--field", "F2"], None);
    assert_eq!(result(&v)["center_order"], 8);
}

#[test]
fn invariant_commands() {
    let b = result(&cli(&["inv", "basis", "--field", "F4", "--degree", "8"], None));
    assert_eq!(b["dim"], 2);
    let e = result(&cli(&["inv", "extremal", "--n", "16", "--d", "7"], None));
    assert_eq!(e["feasible"], false);
    let kinds: Vec<&str> = e["obstructions"].as_array().unwrap().iter().map(|o| o["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"NEGATIVE_COEFF"), "{kinds:?}");
}

#[test]
fn output_is_deterministic() {
    let args = ["inv", "extremal", "--n", "16", "--d", "6"];
    let a = cli(&args, None);
    let b = cli(&["--sequential", "inv", "extremal", "--n", "16", "--d", "6"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let code = cli(&["code", "qr", "--p", "11"], None);
    let x = cli(&["cwe"], Some(&code.stdout));
    let y = cli(&["--threads", "1", "cwe"], Some(&code.stdout));
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(cli(&["field", "--field", "F5"], None).status.code(), Some(2));
    assert_eq!(cli(&["reproduce", "--only", "nothing"], None).status.code(), Some(2));
    let q24 = cli(&["code", "qr", "--p", "23"], None);
    assert_eq!(cli(&["--budget", "1000", "code", "dist"], Some(&q24.stdout)).status.code(), Some(3));
    assert_eq!(cli(&["--degree-cap", "8", "inv", "basis", "--degree", "12"], None).status.code(), Some(3));
    assert_eq!(cli(&["code", "dist"], Some(b"not json")).status.code(), Some(1));
}

#[test]
fn reproduce_writes_reports() {
    let dir = std::env::temp_dir().join(format!("cliffweil-reproduce-{}", std::process::id()));
    let out = cli(&["reproduce", "--only", "group", "--out", dir.to_str().unwrap()], None);
    let summary = result(&out);
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["criteria"].as_array().unwrap().len(), 2);
    for f in ["criterion_04.json", "criterion_05.json", "summary.json", "metadata.json"] {
        assert!(dir.join(f).exists(), "{f}");
    }
    let again = cli(&["reproduce", "--only", "group"], None);
    assert_eq!(out.stdout, again.stdout);
    std::fs::remove_dir_all(dir).ok();
}
