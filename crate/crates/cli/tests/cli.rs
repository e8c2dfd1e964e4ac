use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn xfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xfc"))
        .args(args)
        .env_remove("XFC_BUDGET_NODES")
        .output()
        .expect("spawn xfc")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn layer_matrix_has_binomial_width() {
    let out = xfc(&["construct", "kms", "--m", "7", "--s", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("7 35"));
    assert!(lines.all(|l| l.len() == 35));
}

#[test]
fn equality_construction_round_trips_through_contains() {
    let dir = tempfile::tempdir().unwrap();
    let m7 = dir.path().join("genl7.txt");
    let out = xfc(&[
        "construct",
        "genl",
        "--t",
        "2",
        "--l",
        "1",
        "--lambda",
        "1",
        "--m",
        "7",
        "--out",
        path(&m7),
        "--meta",
    ]);
    assert!(out.status.success());
    let meta = json(&out);
    assert_eq!(meta["ncols"], 37);
    assert_eq!(meta["claimed_bound"], "37");
    assert_eq!(meta["avoided_configuration"], "3,2,1");
    assert_eq!(meta["verified"], true);

    let quiet = xfc(&[
        "contains",
        "--config",
        "3,2,1",
        "--matrix",
        path(&m7),
        "--quiet",
    ]);
    assert_eq!(quiet.status.code(), Some(1));
    assert!(quiet.stdout.is_empty());

    let loud = xfc(&[
        "contains",
        "--config",
        "3,2,1",
        "--matrix",
        path(&m7),
        "--json",
    ]);
    assert_eq!(loud.status.code(), Some(0));
    let v = json(&loud);
    assert_eq!(v["contains"], false);
    assert_eq!(v["max_block_multiplicity"]["count"], 2);

    let yes = xfc(&[
        "contains",
        "--config",
        "2,2,1",
        "--matrix",
        path(&m7),
        "--quiet",
    ]);
    assert_eq!(yes.status.code(), Some(0));

    // the same file feeds analyze unchanged
    let audit = xfc(&[
        "analyze",
        "--matrix",
        path(&m7),
        "--t",
        "2",
        "--l",
        "1",
        "--lambda",
        "1",
        "--rows",
        "1,2",
        "--clique",
        "3",
    ]);
    assert!(audit.status.success());
    let r = json(&audit);
    assert_eq!(r["all_pass"], true);
    assert_eq!(r["audited_columns"], 28);
    // every pair lies in exactly one triple, so every pair is typical
    assert_eq!(r["typical_clique"], serde_json::json!([1, 2, 3]));
}

#[test]
fn general_pattern_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("id.txt");
    fs::write(&f, "2 2\n10\n01\n").unwrap();
    let chain = dir.path().join("chain.txt");
    fs::write(&chain, "3 4\n0111\n0011\n0001\n").unwrap();
    let out = xfc(&[
        "contains",
        "--config-file",
        path(&f),
        "--matrix",
        path(&chain),
        "--json",
    ]);
    assert_eq!(json(&out)["contains"], false);
    let full = dir.path().join("k3.txt");
    assert!(xfc(&[
        "construct",
        "layers",
        "--m",
        "3",
        "--sums",
        "0..3",
        "--out",
        path(&full)
    ])
    .status
    .success());
    let out = xfc(&[
        "contains",
        "--config-file",
        path(&f),
        "--matrix",
        path(&full),
        "--quiet",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn design_files_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("sts9.txt");
    assert!(xfc(&["construct", "sts", "--m", "9", "--out", path(&d)])
        .status
        .success());
    let out = xfc(&["verify-design", "--design", path(&d)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["blocks"], 12);
    assert_eq!(v["divisibility"]["holds"], true);

    // the design also drives the layered construction
    let out = xfc(&[
        "construct",
        "genl",
        "--t",
        "2",
        "--l",
        "1",
        "--design",
        path(&d),
        "--meta",
    ]);
    assert_eq!(json(&out)["ncols"], 59);

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "7 3 2 1 2\n1 2 3\n1 4 5\n").unwrap();
    let out = xfc(&["verify-design", "--design", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    // first uncovered pair in colex order
    assert_eq!(v["witness"]["tset"], serde_json::json!([2, 4]));
}

#[test]
fn malformed_inputs_exit_two_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.txt");
    fs::write(&m, "2 3\n101\n1x1\n").unwrap();
    let out = xfc(&["contains", "--config", "2,1,0", "--matrix", path(&m)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let d = dir.path().join("d.txt");
    fs::write(&d, "7 3 2 1 1\n1 2\n").unwrap();
    let out = xfc(&["verify-design", "--design", path(&d)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    assert_eq!(
        xfc(&["contains", "--config", "3,2", "--matrix", path(&m)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(xfc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        xfc(&["contains", "--matrix", path(&m)]).status.code(),
        Some(2)
    );
    let missing = dir.path().join("missing.txt");
    assert_eq!(
        xfc(&["contains", "--config", "1,1,0", "--matrix", path(&missing)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bounds_are_exact_strings() {
    let v = json(&xfc(&[
        "bounds", "genl", "--t", "2", "--l", "1", "--lambda", "1", "--m", "7",
    ]));
    assert_eq!(v["floor"], "37");
    assert_eq!(v["exact_numerator"], "37");
    assert_eq!(v["exact_denominator"], "1");
    assert!(v["notes"].is_array());

    let v = json(&xfc(&[
        "bounds", "turan", "--m", "7", "--t", "2", "--k", "3",
    ]));
    assert_eq!(
        (
            v["exact_numerator"].as_str(),
            v["exact_denominator"].as_str()
        ),
        (Some("49"), Some("4"))
    );
    assert_eq!(v["floor"], "12");

    let v = json(&xfc(&[
        "bounds", "turan", "--m", "6", "--t", "2", "--k", "3", "--edges", "9",
    ]));
    assert_eq!(v["forces_clique"], false);

    let v = json(&xfc(&[
        "bounds",
        "exceeder-gap",
        "--t",
        "3",
        "--l",
        "1",
        "--lambda",
        "1",
    ]));
    assert_eq!(
        (
            v["exact_numerator"].as_str(),
            v["exact_denominator"].as_str()
        ),
        (Some("5"), Some("2"))
    );

    let v = json(&xfc(&[
        "bounds",
        "pigeonhole",
        "--t",
        "2",
        "--l",
        "1",
        "--lambda",
        "1",
        "--m",
        "7",
        "--a-t",
        "21",
        "--a-t1",
        "10",
    ]));
    assert_eq!(v["lhs"], "225");
    assert_eq!(v["holds"], false);

    assert_eq!(
        xfc(&["bounds", "q10-upper", "--q", "3", "--m", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn search_reports_and_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    let out = xfc(&[
        "search",
        "--m",
        "7",
        "--config",
        "2,2,1",
        "--sums",
        "3..6",
        "--policy",
        "free",
        "--workers",
        "2",
        "--witness-out",
        path(&w),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["optimum"], 7);
    assert_eq!(v["proof_of_optimality"], true);
    let q = xfc(&[
        "contains",
        "--config",
        "2,2,1",
        "--matrix",
        path(&w),
        "--quiet",
    ]);
    assert_eq!(q.status.code(), Some(1));

    let oracle = json(&xfc(&[
        "search", "--m", "3", "--config", "2,1,1", "--oracle",
    ]));
    assert_eq!(oracle["optimum"], 5);
}

#[test]
fn search_budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_xfc"))
        .args([
            "search", "--m", "8", "--config", "2,2,1", "--sums", "3..7", "--policy", "paper",
        ])
        .env("XFC_BUDGET_NODES", "50")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out)["proof_of_optimality"], false);

    let out = xfc(&[
        "search", "--m", "3", "--config", "2,1,1", "--policy", "free",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = xfc(&[
        "search", "--m", "3", "--config", "2,1,1", "--policy", "greedy",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn audit_passes_on_equality_constructions() {
    let out = xfc(&["audit", "--m", "7,9", "--lambda", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    assert_eq!(rows.as_array().unwrap().len(), 4);
    assert!(rows
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["all_pass"] == true));
    assert_eq!(xfc(&["audit", "--m", "8"]).status.code(), Some(2));
}

#[test]
fn construction_files_are_accepted_by_consumers() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("q10", vec!["construct", "q10", "--q", "5", "--m", "12"]),
        (
            "split",
            vec!["construct", "split1100", "--m", "7", "--a", "1", "--b", "1"],
        ),
        (
            "exceed",
            vec![
                "construct",
                "exceeder",
                "--t",
                "2",
                "--l",
                "1",
                "--lambda",
                "1",
            ],
        ),
        ("pig", vec!["construct", "pigeonhole", "--q", "5"]),
    ] {
        let f = dir.path().join(name);
        let mut a = args.clone();
        a.extend(["--out", path(&f), "--meta"]);
        let out = xfc(&a);
        assert!(
            out.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let meta = json(&out);
        let cfg = meta["avoided_configuration"].as_str().unwrap().to_string();
        let q = xfc(&[
            "contains",
            "--config",
            &cfg,
            "--matrix",
            path(&f),
            "--quiet",
        ]);
        assert_eq!(q.status.code(), Some(1), "{name}");
        let text = fs::read_to_string(&f).unwrap();
        let header: Vec<usize> = text
            .lines()
            .next()
            .unwrap()
            .split(' ')
            .map(|x| x.parse().unwrap())
            .collect();
        assert_eq!(header[1], meta["ncols"].as_u64().unwrap() as usize);
    }
}
