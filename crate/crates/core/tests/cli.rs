use std::process::{Command, Output};

use num_rational::BigRational;
use serde_json::Value;

use invmult::dist::{joint_pmf, ProbVector};
use invmult::io::{joint_from_json, marginal_from_json, moments_from_json};

fn invmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invmult"))
        .args(args)
        .env_remove("INVMULT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = invmult(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn joint_json_round_trips() {
    let text = stdout(&[
        "pmf",
        "--n",
        "4",
        "--p",
        "1/2,1/3,1/6",
        "--joint",
        "--format",
        "json",
    ]);
    let parsed = joint_from_json::<BigRational>(&text).unwrap();
    let p = ProbVector::new(vec![q(1, 2), q(1, 3), q(1, 6)]).unwrap();
    assert_eq!(parsed, joint_pmf(4, &p));
}

#[test]
fn marginal_and_moments_json() {
    let text = stdout(&["pmf", "--n", "3", "--k", "3", "--equal", "--format", "json"]);
    let (n, k, pmf) = marginal_from_json::<BigRational>(&text).unwrap();
    assert_eq!((n, k), (3, 3));
    assert_eq!(pmf[0], q(10, 27));

    let text = stdout(&["moments", "--n", "2", "--p", "1/2,1/2", "--format", "json"]);
    let m = moments_from_json::<BigRational>(&text).unwrap();
    assert_eq!(m.e_i, q(1, 4));

    let text = stdout(&["moments", "--n", "2", "--p", "0.5,0.5", "--format", "json"]);
    assert!(moments_from_json::<BigRational>(&text).is_err());
    assert_eq!(moments_from_json::<f64>(&text).unwrap().e_i, 0.25);
}

#[test]
fn simulation_is_byte_identical() {
    let args = [
        "simulate", "--n", "5", "--k", "3", "--equal", "--seed", "42", "--reps", "2000",
        "--format", "json",
    ];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let doc: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["replications"], 2000);
    let total: u64 = doc["tallies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 2000);
    assert_ne!(
        a,
        stdout(&[
            "simulate", "--n", "5", "--k", "3", "--equal", "--seed", "43", "--reps", "2000",
            "--format", "json"
        ])
    );
}

#[test]
fn raw_sequences_written() {
    let dir = std::env::temp_dir().join(format!("invmult-raw-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let raw = dir.join("raw.txt");
    stdout(&[
        "simulate",
        "--n",
        "6",
        "--p",
        "1/4,3/4",
        "--reps",
        "10",
        "--raw-out",
        raw.to_str().unwrap(),
    ]);
    let lines: Vec<String> = std::fs::read_to_string(&raw)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|l| l.split(',').count() == 6));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn hstat_outputs() {
    assert_eq!(
        stdout(&["hstat", "--sequence", "112233"]),
        "counts = (2,2,2)\nI = 0\nmax I = 12\nH = 1\n"
    );
    assert!(stdout(&["hstat", "--sequence", "332211"]).ends_with("H = -1\n"));
    assert!(stdout(&["hstat", "--sequence", "2,2,2", "--k", "3"]).ends_with("H = undefined\n"));
    let doc: Value =
        serde_json::from_str(&stdout(&["hstat", "--sequence", "2,2", "--format", "json"])).unwrap();
    assert_eq!(doc["h"], Value::Null);
}

#[test]
fn csv_has_exact_and_decimal_columns() {
    let text = stdout(&["pmf", "--n", "2", "--k", "2", "--equal", "--format", "csv"]);
    assert_eq!(text, "i,probability,decimal\n0,3/4,0.75\n1,1/4,0.25\n");
}

#[test]
fn normal_fit_json() {
    let doc: Value = serde_json::from_str(&stdout(&[
        "normal-fit",
        "--n",
        "10",
        "--k",
        "3",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(doc["mean_matches"], true);
    assert_eq!(doc["variance_matches"], true);
    assert!(doc["total_variation"].as_f64().unwrap() > 0.0);
    let doc: Value = serde_json::from_str(&stdout(&[
        "normal-fit",
        "--n",
        "1",
        "--k",
        "3",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(doc["degenerate"], true);
}

#[test]
fn exit_codes() {
    let usage = invmult(&["pmf", "--n", "3", "--p", "1/2,1/3"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&usage.stderr).starts_with("error[usage]:"));

    assert_eq!(
        invmult(&["pmf", "--n", "3", "--p", "1/2,0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(invmult(&["poly", "--y", "0,0,0"]).status.code(), Some(0));
    assert_eq!(invmult(&["frobnicate"]).status.code(), Some(2));

    let refused = invmult(&["table", "--n", "60", "--k", "6", "--equal"]);
    assert_eq!(refused.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&refused.stderr).starts_with("error[budget]:"));
    assert_eq!(
        invmult(&["poly", "--y", "6,6,6", "--brute", "--budget", "1000"])
            .status
            .code(),
        Some(3)
    );

    let io = invmult(&[
        "pmf",
        "--n",
        "1",
        "--k",
        "2",
        "--equal",
        "--out",
        "/nonexistent-dir/x",
    ]);
    assert_eq!(io.status.code(), Some(1));
}

#[test]
fn brute_check_agrees() {
    assert_eq!(
        stdout(&["poly", "--y", "2,1,1", "--brute"]),
        "1 + 2q + 3q^2 + 3q^3 + 2q^4 + q^5\nbrute-force enumeration agrees: true\n"
    );
}
