use std::process::{Command, Output};

fn sgcensus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgcensus"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn census_json_shape() {
    let out = sgcensus(&["census", "D8 * C4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["label"], "D8 * C4");
    assert_eq!(v["n"], 4);
    assert_eq!(v["total"], "23");
    assert_eq!(v["method"], "oracle");
    let counts: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(counts.len(), 5);
    assert_eq!(counts.iter().sum::<u64>(), 23);
    // Trivial and whole group, and 2^3 - 1 maximal subgroups over a Frattini quotient of rank 3.
    assert_eq!((counts[0], counts[3], counts[4]), (1, 7, 1));
}

#[test]
fn compare_flags_agreement() {
    let out = sgcensus(&[
        "census",
        "Q8 * D8 x C2",
        "--method",
        "formula",
        "--compare",
        "oracle",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("label,n,k,method,count,compare_count,status\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",ok")));
}

#[test]
fn exit_codes() {
    assert_eq!(sgcensus(&["census", "D8 x"]).status.code(), Some(2));
    assert_eq!(
        sgcensus(&["census", "D8", "--method", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sgcensus(&["census", "C4 x C4", "--method", "formula"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sgcensus(&["lattice", "D8^{*4}"]).status.code(), Some(2));
    assert_eq!(
        sgcensus(&["verify", "lattice", "--n", "3..5"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn quadform_cross_check() {
    let out = sgcensus(&[
        "quadform",
        "minus",
        "--r",
        "2",
        "--cross-check",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lattice_total"], "78");
    assert_eq!(v["oracle_total"], "78");
}
