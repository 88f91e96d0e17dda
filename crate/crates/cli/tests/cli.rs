use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unipotent")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const VERIFY: [&str; 9] = ["verify", "--suite", "orders", "--seed", "42", "--max-rank", "5", "--trials", "16"];

#[test]
fn ordergrid_g2() {
    let rows = json(&["ordergrid", "--family", "G2", "--primes", "5,7"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let borel: Vec<(u64, u64)> = rows
        .iter()
        .filter(|r| r["levi"] == "{}")
        .map(|r| (r["p"].as_u64().unwrap(), r["predicted_order"].as_u64().unwrap()))
        .collect();
    assert_eq!(borel, [(5, 25), (7, 7)]);
    assert!(rows.iter().all(|r| r["good_prime"] == true));
}

#[test]
fn ordergrid_a1_has_one_row() {
    let rows = json(&["ordergrid", "--family", "A1", "--primes", "2"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["n_p"], 2);
    assert_eq!(rows[0]["m"], 1);
}

#[test]
fn census_examples() {
    for (d, ambient, count) in [(1, "strict-upper:2", 2), (2, "strict-upper:2", 4), (1, "gl:2", 4), (2, "gl:2", 10)] {
        let rows = json(&["commvar", "census", "--p", "2", "--d", &d.to_string(), "--ambient", ambient]);
        assert_eq!(rows[0]["count"], count, "{ambient} d={d}");
    }
}

#[test]
fn witt_commands() {
    assert_eq!(json(&["witt", "add", "--p", "3", "--a", "1,0", "--b", "1,0"])[0]["sum"], "2,1");
    assert_eq!(json(&["witt", "order", "--p", "3", "--a", "0,1"])[0]["order"], 3);
    let sums = json(&["witt", "sumpolys", "--p", "2", "--n", "2"]);
    assert_eq!(sums[0]["polynomial"], "X0 + Y0");
}

#[test]
fn ah_terms() {
    let rows = json(&["ah", "--p", "3", "--terms", "10"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r["valuation"].is_null() || r["valuation"].as_i64().unwrap() >= 0));
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let (a, b) = (run(&VERIFY), run(&VERIFY));
    assert!(a.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_and_csv_carry_the_same_rows() {
    let lines = run(&VERIFY).stdout;
    let json_rows: Vec<Value> =
        String::from_utf8(lines).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let mut args = VERIFY.to_vec();
    args.extend(["--format", "csv"]);
    let csv = run(&args).stdout;
    let mut reader = csv::Reader::from_reader(csv.as_slice());
    let headers = reader.headers().unwrap().clone();
    let csv_rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(json_rows.len(), csv_rows.len());
    for (j, c) in json_rows.iter().zip(&csv_rows) {
        for (h, field) in headers.iter().zip(c.iter()) {
            assert_eq!(j[h].as_str().unwrap(), field);
        }
    }
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("unipotent-tables-{}.csv", std::process::id()));
    let out = run(&["tables", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("root_system,two_h_minus_two"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "--suite", "nosuch", "--seed", "1"],
        vec!["verify", "--suite", "orders"],
        vec!["ordergrid", "--family", "Q9", "--primes", "2"],
        vec!["ordergrid", "--family", "G2", "--primes", "4"],
        vec!["commvar", "census", "--p", "2", "--d", "2", "--ambient", "nope:3"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn oversized_census_is_refused() {
    let out = run(&["commvar", "census", "--p", "7", "--d", "3", "--ambient", "gl:6"]);
    assert_eq!(out.status.code(), Some(2));
}
