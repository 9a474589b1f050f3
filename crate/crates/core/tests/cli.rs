use std::path::PathBuf;
use std::process::{Command, Output};

fn asymp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asymp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(path).expect("golden file")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn golden_a1_table() {
    let o = asymp(&["--type", "A", "--rank", "1", "--height", "3", "table"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("a1_table_h3.json"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    for e in &entries[1..] {
        assert_eq!(e["trace"], serde_json::json!([[0, 1], [1, -1]]));
    }
}

#[test]
fn golden_g2_table_csv() {
    let o = asymp(&["--type", "G", "--rank", "2", "--height", "4", "table", "--verify", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("g2_table_h4.csv"));
}

#[test]
fn golden_poset_and_trace_and_roots() {
    let o = asymp(&["--type", "A", "--rank", "2", "--height", "2", "strata", "poset"]);
    assert_eq!(stdout(&o), golden("a2_poset_h2.dot"));
    assert_eq!(stdout(&o).matches("[label=").count(), 6);

    let o = asymp(&["--type", "B", "--rank", "2", "--theta", "2,2", "--method", "all", "trace", "--format", "json"]);
    assert_eq!(stdout(&o), golden("b2_trace_2_2.json"));

    let o = asymp(&["--type", "A", "--rank", "2", "roots"]);
    assert_eq!(stdout(&o), golden("a2_roots.json"));
}

#[test]
fn height_zero_table() {
    let o = asymp(&["--type", "A", "--rank", "2", "--height", "0", "table", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(0,0)\t1\n");
}

#[test]
fn strata_row_counts() {
    let o = asymp(&["--type", "A", "--rank", "1", "strata", "parabolic", "--format", "text"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = asymp(&["--type", "A", "--rank", "1", "--theta", "2", "strata", "local", "--format", "text"]);
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = asymp(&["--type", "A", "--rank", "3", "--levi", "2", "--theta", "2,5,1", "strata", "local"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 18);
}

#[test]
fn divisor_command() {
    let o = asymp(&["--type", "A", "--rank", "1", "--divisor", "x:1;y:1", "divisor"]);
    assert_eq!(stdout(&o), "1 - 2q + q^2\n");
    let o = asymp(&["--type", "A", "--rank", "1", "--divisor", "", "divisor"]);
    assert_eq!(stdout(&o), "1\n");
    let o = asymp(&["--type", "A", "--rank", "2", "--divisor", "x:1,1", "divisor"]);
    assert_eq!(stdout(&o), "1 - q\n");
    let o = asymp(&["--type", "A", "--rank", "2", "--divisor", "x:1,1;y", "divisor"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes_and_error_report() {
    let o = asymp(&["--type", "A", "--rank", "2", "--theta", "-1,0", "trace"]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "usage");
    assert!(o.stdout.is_empty());

    let o = asymp(&["table"]);
    assert_eq!(o.status.code(), Some(2));
    let o = asymp(&["--type", "A", "--rank", "1", "table", "extra"]);
    assert_eq!(o.status.code(), Some(2));
    let o = asymp(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cartan_config_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let kv = dir.path().join("g2.conf");
    std::fs::write(&kv, "type=G rank=2\n").unwrap();
    let matrix = dir.path().join("g2.json");
    std::fs::write(&matrix, "[[2,-1],[-3,2]]\n").unwrap();
    let out = dir.path().join("table.csv");

    let o = asymp(&["--cartan", kv.to_str().unwrap(), "--height", "4", "table", "--format", "csv"]);
    assert_eq!(stdout(&o), golden("g2_table_h4.csv"));

    let o = asymp(&[
        "--cartan",
        matrix.to_str().unwrap(),
        "--height",
        "4",
        "--out",
        out.to_str().unwrap(),
        "table",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), golden("g2_table_h4.csv"));

    let bad = dir.path().join("affine.json");
    std::fs::write(&bad, "[[2,-2],[-2,2]]").unwrap();
    let o = asymp(&["--cartan", bad.to_str().unwrap(), "roots"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn genus_metadata() {
    let o = asymp(&["--type", "A", "--rank", "2", "--genus", "3", "table", "--no-verify"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["genus"], 3);
    // dim SL3 = 8
    assert_eq!(v["normalization_exponent_value"], "-8");
    assert_eq!(v["verified"], false);
}
