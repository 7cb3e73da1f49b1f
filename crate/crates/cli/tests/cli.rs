use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symchar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn char_row_four() {
    let v = run_json(&["char", "--algebra", "A1", "--lambda", "2", "--N", "4"]);
    assert_eq!(v["algebra"], "A1");
    assert_eq!(v["lambda"], json!([2]));
    assert_eq!(v["N"], 4);
    let got: Vec<(i64, u64)> = v["character"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["weight"][0].as_i64().unwrap(),
                e["mult"].as_u64().unwrap(),
            )
        })
        .collect();
    let expect = vec![
        (-8, 1),
        (-6, 1),
        (-4, 2),
        (-2, 2),
        (0, 3),
        (2, 2),
        (4, 2),
        (6, 1),
        (8, 1),
    ];
    assert_eq!(got, expect);
}

#[test]
fn char_text() {
    let out = run(&[
        "char",
        "--algebra",
        "A1",
        "--lambda",
        "2",
        "--N",
        "2",
        "--format",
        "text",
    ]);
    assert_eq!(stdout(&out).trim(), "q^4 + q^2 + 2 + q^-2 + q^-4");
}

#[test]
fn mult_example() {
    let v = run_json(&[
        "mult",
        "--algebra",
        "A1",
        "--lambda",
        "2",
        "--N",
        "4",
        "--mu",
        "2",
    ]);
    assert_eq!(v["multiplicity"], 2);
    let out = run(&[
        "mult",
        "--algebra",
        "A1",
        "--lambda",
        "2",
        "--N",
        "4",
        "--mu",
        "0",
        "--format",
        "text",
    ]);
    assert_eq!(stdout(&out).trim(), "3");
    let out = run(&[
        "mult",
        "--algebra",
        "A2",
        "--lambda",
        "1,1",
        "--N",
        "2",
        "--mu",
        "-1,-1",
        "--format",
        "text",
    ]);
    assert!(out.status.success());
}

#[test]
fn pfd_sl3_adjoint_zero_weight() {
    let v = run_json(&["pfd", "--algebra", "A2", "--lambda", "1,1"]);
    let terms = v["terms"].as_array().unwrap();
    let orders: Vec<u64> = terms
        .iter()
        .filter(|t| t["weight"] == json!([0, 0]))
        .map(|t| t["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, vec![1, 2]);
    assert_eq!(terms.len(), 8);
}

#[test]
fn weights_and_orbits() {
    let v = run_json(&["weights", "--algebra", "G2", "--lambda", "1,0"]);
    assert_eq!(v["dim"], 7);
    let out = run(&[
        "orbits",
        "--algebra",
        "A1",
        "--lambda",
        "3",
        "--N",
        "4",
        "--format",
        "text",
    ]);
    let text = stdout(&out);
    assert!(text.contains("(-3/4)/(q - 1)^2"), "{text}");
    assert!(text.contains("(3/4)/(q - 1)^2"), "{text}");
    let v = run_json(&["orbits", "--algebra", "A2", "--lambda", "1,1", "--N", "2"]);
    assert_eq!(v["summands"].as_array().unwrap().len(), 2);
    assert!(v["summands"][0].get("pfd").is_none());
}

#[test]
fn vpart_report() {
    let v = run_json(&["vpart", "--algebra", "A1", "--lambda", "2", "--N", "3"]);
    assert_eq!(v["matrix"], json!([[2, 0, -2], [1, 1, 1]]));
    assert_eq!(v["passed"], true);
    assert_eq!(
        v["properties"],
        json!({"grading": true, "symmetry": true, "multiplicity": true})
    );
}

#[test]
fn verify_passes() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let records: Value = serde_json::from_slice(&out.stdout).unwrap();
    let records = records.as_array().unwrap();
    assert!(records.iter().all(|r| r["status"] == "pass"));
    assert!(records
        .iter()
        .any(|r| r["case"] == "B2 V(0,1)" && r["N"] == 4));
    let keys: Vec<&String> = records[0].as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 4);
}

#[test]
fn output_is_deterministic() {
    let args = ["orbits", "--algebra", "A2", "--lambda", "1,1", "--N", "3"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_symchar"))
        .args(args)
        .env("SYMCHAR_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn user_errors_exit_one() {
    for args in [
        &["char", "--algebra", "A1", "--lambda", "2"][..],
        &["mult", "--algebra", "A1", "--lambda", "2", "--N", "1"],
        &["weights", "--algebra", "A2", "--lambda", "-1,0"],
        &["weights", "--algebra", "X3", "--lambda", "1"],
        &["weights", "--algebra", "C2", "--lambda", "1,0"],
        &["weights", "--algebra", "A2", "--lambda", "1"],
        &[
            "mult",
            "--algebra",
            "A1",
            "--lambda",
            "2",
            "--N",
            "1",
            "--mu",
            "0,0",
        ],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = Command::new(env!("CARGO_BIN_EXE_symchar"))
        .args(["weights", "--algebra", "A1", "--lambda", "1"])
        .env("SYMCHAR_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verify"));
}
