use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quotsing")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn report_cyclic_text() {
    let o = run(&["report", "1/3(1,1)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("mld at origin      2/3"));
    assert!(text.contains("gorenstein index   3"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn report_cyclic_json_uses_pairs() {
    let o = run(&["--json", "report", "1/5(1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mld"], serde_json::json!([3, 5]));
    assert_eq!(v["gorenstein_index"], 5);
    assert_eq!(v["toric"]["agree"], true);
}

#[test]
fn report_group_file() {
    let o = run(&["report", &data("quaternion.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("group order        8"));
}

#[test]
fn pseudo_reflections_are_input_errors() {
    let o = run(&["report", &data("reflections.json")]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("pseudo-reflections at element indices"));
    assert!(err.contains("[[-1, 0], [0, 1]]"));

    let o = run(&["report", "1/4(2,1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("[2]"));
}

#[test]
fn parse_errors_exit_1() {
    for input in ["1/3(1;1)", "1/4(0,1)", "{\"x\": 1}"] {
        assert_eq!(run(&["report", input]).status.code(), Some(1), "{input}");
    }
}

#[test]
fn toric_files() {
    let o = run(&["toric", &data("conifold.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("support vector     (0, 0, 1)"));
    assert!(text.contains("{0,1,2,3}          3    2        1      pass"));

    let o = run(&["--json", "toric", &data("cyclic3.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["index"], 3);
    assert_eq!(v["faces"][3]["mld"], serde_json::json!([2, 3]));

    // a cyclic type goes through the same path
    let o = run(&["--json", "toric", "1/3(1,1)"]);
    let w: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, w);
}

#[test]
fn jordan_file() {
    let o = run(&["--json", "jordan", &data("quaternion.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["divisibility"]["index"], 2);
    assert_eq!(v["divisibility"]["divides"], true);
}

#[test]
fn scan_formats() {
    let csv = run(&["scan", "--n", "2", "--dmax", "10", "--csv"]);
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(csv.stdout, run(&["scan", "--n", "2", "--dmax", "10", "--csv"]).stdout);
    let rows = quotsing::harness::rows_from_csv(&stdout(&csv)).unwrap();
    let json = run(&["--json", "scan", "--n", "2", "--dmax", "10"]);
    let from_json: Vec<quotsing::harness::ScanRow> = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(rows, from_json);

    let table = run(&["scan", "--n", "2", "--dmax", "20", "--table"]);
    let text = stdout(&table);
    let cell = text.lines().find(|l| l.split_whitespace().nth(1) == Some("2/3")).unwrap();
    assert!(cell.contains("1/3(1,1)"));
    assert_eq!(cell.split_whitespace().nth(2), Some("3"));

    let du_val = run(&["--json", "scan", "--n", "2", "--dmax", "20", "--mld", "1"]);
    let rows: Vec<quotsing::harness::ScanRow> = serde_json::from_slice(&du_val.stdout).unwrap();
    assert!(!rows.is_empty() && rows.iter().all(|r| r.index == 1));

    assert_eq!(run(&["scan", "--n", "1", "--dmax", "5"]).status.code(), Some(1));
}

#[test]
fn selftest_is_byte_deterministic_when_seedless() {
    let a = run(&["--seedless", "selftest", "--samples", "30"]);
    let b = run(&["--seedless", "selftest", "--samples", "30"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("seed 0\n"));
}
