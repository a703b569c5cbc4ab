use std::path::PathBuf;
use std::process::{Command, Output};

use flagalg::multipoly::MultiPoly;
use flagalg::polynomial::Polynomial;

fn flagalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagalg")).args(args).env_remove("FLAGALG_MAX_FLAGS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("flagalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const BOWTIE: &str = r#"{"schema":1,"elements":["0","a","b","c","d","1"],"covers":[[0,1],[0,2],[1,3],[1,4],[2,3],[2,4],[3,5],[4,5]]}"#;

#[test]
fn worked_characteristic_polynomial() {
    let out = flagalg(&["charpoly", "--gen", "uniform:2,3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "t1^2*t2^2 - 3*t1^2*t2 + 2*t1^2 + 3*t1*t2 - 6*t1 + 4\n");
}

#[test]
fn charpoly_json_round_trips() {
    let out = flagalg(&["charpoly", "--gen", "figure1", "--k", "3", "--format", "json"]);
    let text = stdout(&out);
    let (poly, names) = MultiPoly::from_json(text.trim()).unwrap();
    assert_eq!(poly.to_json_with(&names), text.trim());
}

#[test]
fn index_table_row_three() {
    let out = flagalg(&["klindex", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches('[').count(), 9);
    assert!(stdout(&out).starts_with("+[3], -[1, 3], -[2, 3], +[1, 2, 3]"));
    let json = flagalg(&["klindex", "--k", "2", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(value["schema"], 1);
    assert_eq!(value["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn kl_both_methods_agree() {
    let out = flagalg(&["kl", "--gen", "partition:6", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "closed: 15*t^2 + 16*t + 1\nrecursive: 15*t^2 + 16*t + 1\n");
    let json = flagalg(&["kl", "--gen", "uniform:3,4", "--method", "recursive", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let poly = Polynomial::from_json(&value["polynomial"].to_string()).unwrap();
    assert_eq!(poly, Polynomial::from_coefficients(&[1, 2]));
}

#[test]
fn kl_term_report() {
    let out = flagalg(&["kl", "--gen", "partition:5", "--method", "closed", "--terms"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "k=1 + (W_(3) - W_(1)) = +(15 - 10)\n5*t + 1\n");
}

#[test]
fn non_lattice_needs_opt_in() {
    let path = scratch_file("bowtie.json", BOWTIE);
    let path = path.to_str().unwrap();
    let refused = flagalg(&["kl", "--poset", path, "--method", "closed"]);
    assert_eq!(refused.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("--allow-non-lattice"));
    let allowed = flagalg(&["kl", "--poset", path, "--method", "closed", "--allow-non-lattice"]);
    assert_eq!(allowed.status.code(), Some(0));
    let recursive = flagalg(&["kl", "--poset", path, "--method", "recursive"]);
    assert_eq!(recursive.status.code(), Some(0));
}

#[test]
fn poset_json_round_trips() {
    for spec in ["figure1", "partition:4", "product:(chain:1,uniform:2,3)", "random:5"] {
        let first = stdout(&flagalg(&["poset", "--gen", spec, "--format", "json"]));
        let path = scratch_file(&format!("{}.json", spec.replace(['(', ')', ',', ':'], "_")), &first);
        let second = stdout(&flagalg(&["poset", "--poset", path.to_str().unwrap(), "--format", "json"]));
        assert_eq!(first, second, "{spec}");
    }
}

#[test]
fn poset_summary() {
    let out = stdout(&flagalg(&["poset", "--gen", "boolean:3"]));
    assert!(out.contains("elements: 8\n"));
    assert!(out.contains("level sizes: 1 3 3 1\n"));
    assert!(out.contains("lattice: true\n"));
}

#[test]
fn mobius_and_flags_output() {
    let out = stdout(&flagalg(&["mobius", "--gen", "figure1", "--arity", "3", "--root", "0"]));
    assert!(out.contains("(0, a, 1) -> -2\n"));
    assert!(out.contains("(0, 1, 1) -> 4\n"));
    let right = stdout(&flagalg(&["mobius", "--gen", "figure1", "--arity", "3", "--right"]));
    assert!(right.contains("(0, 1, 1) -> 2\n"));
    let count = stdout(&flagalg(&["flags", "--gen", "chain:2", "--arity", "3", "--count"]));
    assert_eq!(count, "10\n");
    let listed = stdout(&flagalg(&["flags", "--gen", "chain:1", "--arity", "2"]));
    assert_eq!(listed, "(0, 0)\n(0, 1)\n(1, 1)\n");
}

#[test]
fn whitney_numbers() {
    let out = stdout(&flagalg(&["whitney", "--gen", "boolean:3", "--index", "1,2"]));
    assert_eq!(out, "W_(1,2) = 6\n");
    let first = stdout(&flagalg(&["whitney", "--gen", "boolean:2", "--kind", "first", "--index", "0,1"]));
    assert_eq!(first, "w_(0,1) = -2\n");
    let all = stdout(&flagalg(&["whitney", "--gen", "chain:2", "--all-k", "2"]));
    assert_eq!(all.lines().count(), 6);
    let bad = flagalg(&["whitney", "--gen", "boolean:3", "--index", "2,1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(flagalg(&["charpoly", "--k", "2"]).status.code(), Some(2));
    assert_eq!(flagalg(&["charpoly", "--gen", "klein", "--k", "2"]).status.code(), Some(2));
    assert_eq!(flagalg(&["charpoly", "--gen", "figure1", "--poset", "x.json", "--k", "2"]).status.code(), Some(2));
    assert_eq!(flagalg(&["poset", "--poset", "/nonexistent/p.json"]).status.code(), Some(2));
    let capped = flagalg(&["flags", "--gen", "boolean:4", "--arity", "4", "--max-flags", "10"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("FLAGALG_MAX_FLAGS"));
}

#[test]
fn deterministic_across_thread_counts() {
    for args in [
        vec!["kl", "--gen", "partition:5"],
        vec!["mobius", "--gen", "boolean:3", "--arity", "3"],
        vec!["charpoly", "--gen", "product:(figure1,chain:1)", "--k", "2"],
    ] {
        let mut one = vec!["--threads", "1"];
        one.extend(&args);
        let mut four = vec!["--threads", "4"];
        four.extend(&args);
        assert_eq!(stdout(&flagalg(&one)), stdout(&flagalg(&four)));
    }
}

#[test]
fn selftest_reports_every_criterion() {
    let out = flagalg(&["selftest"]);
    let text = stdout(&out);
    let headers: Vec<&str> =
        text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL") || l.starts_with("SKIPPED")).collect();
    assert_eq!(headers.len(), 12);
    let failing = headers.iter().filter(|l| l.starts_with("FAIL")).count();
    assert_eq!(out.status.code(), Some(if failing == 0 { 0 } else { 1 }));
}

#[test]
fn selftest_names_a_corrupted_table() {
    let table = flagalg::selftest::TABLE1.replacen("-[1, 2]", "+[1, 2]", 1);
    let path = scratch_file("table1.txt", &table);
    let text = stdout(&flagalg(&["selftest", "--table1", path.to_str().unwrap()]));
    assert!(text.contains("FAIL  1 index table reproduction"));
    assert!(text.contains("row 2"));
    assert!(text.contains("only in table: +[1, 2]"));
}

#[test]
fn selftest_skips_over_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_flagalg"))
        .args(["selftest"])
        .env("FLAGALG_MAX_FLAGS", "3")
        .output()
        .unwrap();
    assert!(stdout(&out).lines().any(|l| l.starts_with("SKIPPED")));
}
