use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nhtopo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nhtopo")).args(args).env_remove("NHTOPO_ORACLE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

/// `h(k) = e^{ik}` on eight points, written out sample by sample.
fn write_plane_wave(dir: &Path) -> String {
    let samples: Vec<Value> = (0..8)
        .map(|j| {
            let k = 2.0 * std::f64::consts::PI * j as f64 / 8.0;
            serde_json::json!([[[k.cos(), k.sin()]]])
        })
        .collect();
    let file = serde_json::json!({"schema": 1, "d": 1, "grid": 8, "size": 1, "samples": samples, "symmetries": []});
    let path = dir.join("hatano.json");
    std::fs::write(&path, file.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn single_table_row_as_json() {
    let o = nhtopo(&["table", "--class", "A", "--delta", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["K_P"], "Z");
    assert_eq!(v["K_Lr"], "0");
    assert_eq!(v["K_Li"], "0");
    assert_eq!(v["intrinsic"], "Z");
}

#[test]
fn determinant_winding_of_a_plane_wave() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_plane_wave(dir.path());
    let o = nhtopo(&["invariant", &path, "--kind", "detwinding", "--eref", "0,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_out(&o)["value"], 1);
    let outside = nhtopo(&["invariant", &path, "--kind", "detwinding", "--eref", "2,0"]);
    assert_eq!(json_out(&outside)["value"], 0);
}

#[test]
fn d_dagger_block_is_the_zero_map() {
    let o = nhtopo(&["verify-generators", "--id", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS") && text.contains("zero map"), "{text}");
}

#[test]
fn every_generator_block_passes() {
    let o = nhtopo(&["verify-generators", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 18);
    assert!(reports.iter().all(|r| r["passed"] == true));
}

#[test]
fn full_table_matches_the_shipped_data() {
    let o = nhtopo(&["table", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("432 rows"));
}

#[test]
fn altered_reference_data_exits_with_two() {
    let records = include_str!("../../core/data/oracle.tsv");
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.tsv");
    std::fs::write(&good, records).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_nhtopo")).args(["table", "--all"]).env("NHTOPO_ORACLE", &good).output().unwrap();
    assert_eq!(o.status.code(), Some(0));

    let mut lines: Vec<String> = records.lines().map(String::from).collect();
    let row = lines.iter().position(|l| l.starts_with("A\t1\t")).unwrap();
    lines[row] = lines[row].replacen("\tZ\t", "\tZ2\t", 1);
    let bad = dir.path().join("bad.tsv");
    std::fs::write(&bad, lines.join("\n")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_nhtopo")).args(["table", "--all"]).env("NHTOPO_ORACLE", &bad).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("MISMATCH A delta=1"));
}

#[test]
fn contract_violations_report_json_on_stderr() {
    let o = nhtopo(&["gaps", "/nonexistent/model.json"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "Io");

    let o = nhtopo(&["--tol", "-1", "classes"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "InvalidTolerance");

    let o = nhtopo(&["table", "--class", "Q", "--delta", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classes_marks_orbit_representatives() {
    let text = stdout(&nhtopo(&["classes"]));
    let rows: Vec<&str> = text.lines().filter(|l| l.contains("iH:")).collect();
    assert_eq!(rows.len(), 54);
    assert_eq!(rows.iter().filter(|l| l.starts_with('*')).count(), 38);
}

#[test]
fn exported_models_round_trip_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let o = nhtopo(&["catalog", "aiii+s-2d-real", "--export", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let path = stdout(&o).lines().next().unwrap().to_string();
    let o = nhtopo(&["classify", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_out(&o)["class"], "AIII+S-,η-");

    let flat = dir.path().join("flat.json");
    let o = nhtopo(&["flatten", &path, "--axis", "real", "-o", flat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = nhtopo(&["classify", flat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    // Reading and re-flattening an already flat model leaves the file unchanged.
    let again = dir.path().join("again.json");
    nhtopo(&["flatten", flat.to_str().unwrap(), "-o", again.to_str().unwrap()]);
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&flat).unwrap()).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&again).unwrap()).unwrap();
    let diff = a["samples"]
        .as_array()
        .unwrap()
        .iter()
        .flatten_values()
        .zip(b["samples"].as_array().unwrap().iter().flatten_values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    assert!(diff < 1e-10, "{diff}");
}

#[test]
fn chern_number_of_the_catalog_two_band_model() {
    let dir = tempfile::tempdir().unwrap();
    let o = nhtopo(&["catalog", "qwz-chern", "--export", dir.path().to_str().unwrap(), "--param", "mass=-1"]);
    let path = stdout(&o).lines().next().unwrap().to_string();
    let o = nhtopo(&["invariant", &path, "--kind", "chern"]);
    assert_eq!(json_out(&o)["value"], -1);
    let o = nhtopo(&["gaps", &path]);
    assert_eq!(json_out(&o)["real_line_gapped"], true);
}

trait FlattenValues {
    fn flatten_values(self) -> std::vec::IntoIter<f64>;
}

impl<'a, I: Iterator<Item = &'a Value>> FlattenValues for I {
    fn flatten_values(self) -> std::vec::IntoIter<f64> {
        fn walk(v: &Value, out: &mut Vec<f64>) {
            match v {
                Value::Array(a) => a.iter().for_each(|x| walk(x, out)),
                Value::Number(n) => out.push(n.as_f64().unwrap()),
                _ => {}
            }
        }
        let mut out = Vec::new();
        self.for_each(|v| walk(v, &mut out));
        out.into_iter()
    }
}

#[test]
fn usage_errors_exit_with_one() {
    let o = nhtopo(&["table", "--format", "xml"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "Usage");
    assert_eq!(nhtopo(&["--help"]).status.code(), Some(0));
}
