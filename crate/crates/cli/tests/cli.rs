use std::path::Path;
use std::process::{Command, Output};

use lpbesov::spectral::{GridSpec, SampledField};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpbesov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const VERIFY: &[&str] = &[
    "verify", "--alpha", "0.25", "--beta", "0.25", "--q0", "1", "--q1", "inf", "--r0", "2",
    "--r1", "2", "--auto-r-star", "--count", "10", "--seed", "7",
];

#[test]
fn verify_writes_ten_finite_rows() {
    let out = run(VERIFY);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(headers, ["instance_id", "lhs", "rhs", "ratio", "generator_descriptor"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 10);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0].parse::<usize>().unwrap(), i);
        let ratio: f64 = row[3].parse().unwrap();
        assert!(ratio.is_finite() && ratio > 0.0);
    }
}

#[test]
fn reports_are_byte_identical_for_the_same_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let mut args = VERIFY.to_vec();
        args.extend(["--out", path_str(p)]);
        assert_eq!(run(&args).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let ja = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
    let jb = std::fs::read_to_string(dir.path().join("b.json")).unwrap();
    // configs differ only in the output path
    assert_eq!(ja.replace("a.csv", "b.csv"), jb);
}

#[test]
fn json_report_has_header_records_summary() {
    let mut args = VERIFY.to_vec();
    args.extend(["--format", "json"]);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let obj = v.as_object().unwrap();
    let keys: Vec<&String> = obj.keys().collect();
    assert_eq!(keys, ["header", "records", "summary"]);
    assert_eq!(v["header"]["config"]["q1"], "inf");
    assert_eq!(v["header"]["config"]["command"], "verify");
    assert_eq!(v["records"].as_array().unwrap().len(), 10);
    assert_eq!(v["summary"]["case"]["q1"], "inf");
}

#[test]
fn missing_required_flag_exits_2() {
    let out = run(&["verify", "--alpha", "0.25", "--beta", "0.25", "--q0", "1", "--q1", "inf"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--alpha", "0.25", "--beta", "0.25", "--q0", "1", "--q1", "inf", "--r0", "2", "--r1", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--auto-r-star"));
}

#[test]
fn out_of_domain_parameters_exit_2() {
    let out = run(&[
        "sharpness", "--alpha", "0.25", "--beta", "0.25", "--q0", "2", "--q1", "2", "--r0", "2",
        "--r1", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q0 and q1 must differ"));
    let out = run(&["interp", "--check", "lemma1", "--p", "0.5", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "sharpness", "--alpha", "0.25", "--beta", "0.25", "--q0", "1", "--q1", "inf", "--r0", "2",
        "--r1", "2", "--Lmin", "8", "--Lmax", "16",
    ]);
    assert_eq!(out.status.code(), Some(2), "a range of 2x is too short for a slope fit");
}

#[test]
fn empty_suite_gives_header_only_csv() {
    let out = run(&["interp", "--check", "duality", "--p", "2", "--r", "2", "--suite-size", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "instance_id,lhs,rhs,ratio\n");
}

#[test]
fn interp_ratios_stay_below_the_constant() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("k.csv");
    let out = run(&[
        "interp", "--check", "k-equivalence", "--p", "2", "--r", "1", "--suite-size", "50",
        "--seed", "3", "--out", path_str(&csv_path),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("k.json")).unwrap()).unwrap();
    let max = v["summary"]["max_ratio"].as_f64().unwrap();
    let constant = v["summary"]["constant"].as_f64().unwrap();
    assert!(max <= constant * (1.0 + 1e-12));
    assert_eq!(v["summary"]["count"], 50);
}

#[test]
fn sharpness_table_and_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("growth.csv");
    let out = run(&[
        "sharpness", "--alpha", "0.25", "--beta", "0.25", "--q0", "1", "--q1", "inf", "--r0", "4",
        "--r1", "4", "--r", "2", "--out", path_str(&csv_path),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "L,besov0,besov1,pairing,g_dual_norm,lorentz_lower,rhs_product,ratio"
    );
    let ls: Vec<u32> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ls, [8, 12, 16, 24, 32, 48, 64]);
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("growth.json")).unwrap()).unwrap();
    assert_eq!(v["summary"]["passed"], true);
    let ratio = v["summary"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "ratio")
        .unwrap();
    assert!(ratio["fitted"].as_f64().unwrap() >= 0.22);
}

#[test]
fn norm_of_a_field_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.json");
    let grid = GridSpec::torus_1d(256).unwrap();
    let field = SampledField::from_fn(grid, |x| (4.0 * x[0]).cos()).unwrap();
    field.write_json(&path).unwrap();
    let out = run(&["norm", "--space", "lebesgue", "--p", "2", "--input", path_str(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // ‖cos 4x‖_2 on [0, 2π) is √π
    let norm = v["norm"].as_f64().unwrap();
    assert!((norm - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    assert_eq!(v["params"]["space"], "lebesgue");

    let out = run(&["norm", "--space", "lorentz", "--p", "2", "--input", path_str(&path)]);
    assert_eq!(out.status.code(), Some(2), "--r is required for Lorentz norms");

    let out = run(&[
        "norm", "--space", "besov", "--s", "-0.5", "--p", "2", "--q", "inf", "--jmin", "-2",
        "--input", path_str(&path),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["norm"].as_f64().unwrap() > 0.0);
    assert_eq!(v["params"]["q"], "inf");
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(2));
}
