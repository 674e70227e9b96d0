//! The `heisobs` binary: exit codes, output formats and determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use heisobs::cli::{Report, CSV_HEADER};
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn heisobs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisobs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_observable_spec() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = heisobs(&["analyze", data("observable.json").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict (rank oracle): Observable"), "{text}");
    assert!(text.contains("verdict (published conditions): Observable"), "{text}");
    let report = Report::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(report.covered);
    assert_eq!(report.unobservable.dim(), 0);
}

#[test]
fn analyze_trivial_homomorphism() {
    let o = heisobs(&["analyze", "--json", data("trivial.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.oracle.status.as_str(), "NotLocallyObservable");
    assert_eq!(report.kernel.subspace.dim(), 3);
    let check = report.witness_check.unwrap();
    assert_eq!(check.separated_at, None);
}

#[test]
fn json_report_round_trips_and_is_byte_identical() {
    let spec = data("y_zero_kernel.json");
    let a = stdout(&heisobs(&["analyze", "--json", spec.to_str().unwrap()]));
    let b = stdout(&heisobs(&["analyze", "--json", spec.to_str().unwrap()]));
    assert_eq!(a, b);
    let report = Report::from_json(&a).unwrap();
    assert_eq!(report.to_json(), a);
    assert!(!report.findings.is_empty());
}

#[test]
fn human_and_machine_renderings_agree() {
    let spec = data("y_zero_kernel.json");
    let text = stdout(&heisobs(&["analyze", spec.to_str().unwrap()]));
    let report = Report::from_json(&stdout(&heisobs(&["analyze", "--json", spec.to_str().unwrap()]))).unwrap();
    assert!(text.contains(&format!("unobservable set I: dim {}", report.unobservable.dim())));
    assert!(text.contains(report.oracle.status.as_str()));
    let w = report.oracle.witness.unwrap();
    assert!(text.contains(&heisobs::cli::human(w.q.z)));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let h8 = heisobs(&["analyze", data("h8_degenerate.json").to_str().unwrap()]);
    assert_eq!(h8.status.code(), Some(3));
    let broken = write(&dir, "broken.json", "{\"derivation\": ");
    assert_eq!(heisobs(&["analyze", &broken]).status.code(), Some(2));
    let unknown = write(&dir, "unknown.json", r#"{"derivation": {}, "homomorphism": {"target": "H10"}}"#);
    assert_eq!(heisobs(&["analyze", &unknown]).status.code(), Some(2));
    let count = write(&dir, "count.json", r#"{"derivation": {}, "homomorphism": {"target": "H1", "coefficients": [1]}}"#);
    assert_eq!(heisobs(&["analyze", &count]).status.code(), Some(3));
    let missing = dir.path().join("missing.json");
    assert_eq!(heisobs(&["analyze", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(heisobs(&["--help"]).status.code(), Some(0));
    assert_eq!(heisobs(&["analyze"]).status.code(), Some(2));
}

fn flow_lines(o: &Output) -> Vec<Vec<f64>> {
    stdout(o)
        .lines()
        .map(|l| l.split_whitespace().skip(1).map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn flow_nilpotent_example() {
    let o = heisobs(&["flow", data("nilpotent.json").to_str().unwrap(), "--t", "1", "--point", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = flow_lines(&o);
    for row in &lines[1..3] {
        assert!((row[0] - 1.0).abs() < 1e-12 && row[1].abs() < 1e-12 && (row[2] - 1.0).abs() < 1e-10);
    }
    assert!(lines[3][0] <= 1e-10);
}

#[test]
fn flow_at_zero_and_negative_time() {
    let spec = data("observable.json");
    let o = heisobs(&["flow", spec.to_str().unwrap(), "--t", "0", "--point", "-1,2.5,3"]);
    let lines = flow_lines(&o);
    assert_eq!(lines[1], vec![-1.0, 2.5, 3.0]);
    assert_eq!(lines[3][0], 0.0);
    let o = heisobs(&["flow", spec.to_str().unwrap(), "--t", "-1.5", "--point", "1,0,0", "--steps", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rk4[2000]"));
}

#[test]
fn flow_diagonal_example() {
    let o = heisobs(&["flow", data("observable.json").to_str().unwrap(), "--t", "1", "--point", "1,0,0"]);
    let closed = &flow_lines(&o)[1];
    let e = std::f64::consts::E;
    assert!((closed[0] - e).abs() < 1e-8);
    assert!(closed[1].abs() < 1e-12);
    assert!((closed[2] - (e * e - e)).abs() < 1e-8);
}

#[test]
fn flow_rejects_bad_points_and_steps() {
    let spec = data("observable.json");
    let s = spec.to_str().unwrap();
    assert_eq!(heisobs(&["flow", s, "--t", "1", "--point", "1,2"]).status.code(), Some(2));
    assert_eq!(heisobs(&["flow", s, "--t", "1", "--point", "1,0,0", "--steps", "0"]).status.code(), Some(3));
}

#[test]
fn sweep_writes_csv_and_summary() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("table.csv");
    let o = heisobs(&["sweep", data("sweep_invertible.json").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("points: 27"));
    let mut reader = csv::Reader::from_path(&out).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, CSV_HEADER);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 27);
    for r in &rows {
        let v: Vec<f64> = (0..6).map(|i| r[i].parse().unwrap()).collect();
        if v[0] + v[3] != 0.0 && v[4] != 0.0 {
            assert_eq!(&r[7], "Observable");
        }
    }
}

#[test]
fn sweep_is_deterministic_and_prints_to_stdout_without_out() {
    let spec = data("sweep_ambiguity.json");
    let a = heisobs(&["sweep", spec.to_str().unwrap()]);
    let b = heisobs(&["sweep", spec.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with(&CSV_HEADER.join(",")));
    assert!(String::from_utf8_lossy(&a.stderr).contains("discrepancies:"));
}

#[test]
fn sweep_edge_cases() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.json", r#"{"ranges": {"c": []}, "homomorphism": {"target": "H4", "coefficients": [0, 1]}}"#);
    let o = heisobs(&["sweep", &empty]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{}\n", CSV_HEADER.join(",")));
    let huge = write(
        &dir,
        "huge.json",
        r#"{"ranges": {"a": {"min": 0, "max": 1, "count": 1000}, "b": {"min": 0, "max": 1, "count": 1001}},
            "homomorphism": {"target": "H4", "coefficients": [0, 1]}}"#,
    );
    assert_eq!(heisobs(&["sweep", &huge]).status.code(), Some(3));
}

#[test]
fn selftest_passes_and_is_seed_deterministic() {
    let a = heisobs(&["selftest", "--seed", "42"]);
    let b = heisobs(&["selftest", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("selftest seed 42: pass"));
}

#[test]
fn selftest_catches_an_injected_product_fault() {
    use heisobs::cli::{run_selftest, SelftestHooks};
    use heisobs::GroupElement;
    fn flipped(g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement::new(g.x + h.x - g.y * h.z, g.y + h.y, g.z + h.z)
    }
    let s = run_selftest(0, &SelftestHooks { mul: flipped });
    assert!(!s.passed());
    assert!(s.to_text().contains("FAIL group-law"));
}
