use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use hecke_metro::scalar::{format_rational, Rational, Scalar};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke-metro"))
        .args(args)
        .env_remove("HECKE_METRO_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn analyze_output_matches_golden_file() {
    let out = run(&[
        "analyze",
        "--family",
        "symmetric",
        "--n",
        "4",
        "--theta",
        "1/2",
        "--scan",
        "long",
        "--lmax",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden("analyze_symmetric4_long.json")
    );
}

#[test]
fn verify_output_matches_golden_file() {
    let out = run(&["verify", "--family", "dihedral", "--n", "7", "--theta", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("verify_dihedral7.json"));
}

#[test]
fn json_schema_has_config_rows_and_provenance() {
    let doc = json(&[
        "analyze",
        "--family",
        "hypercube",
        "--n",
        "3",
        "--theta",
        "1/3",
        "--scan",
        "random",
        "--lmax",
        "2",
    ]);
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["config", "rows", "provenance"]);
    for row in doc["rows"].as_array().unwrap() {
        let cols: Vec<&str> = row.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(cols, ["l", "chisq_formula", "chisq_oracle", "tv", "tv_bound", "match"]);
        // Exact mode never emits floats.
        for col in ["chisq_formula", "chisq_oracle", "tv", "tv_bound"] {
            let text = row[col].as_str().expect("rational string");
            assert!(text.contains('/'), "{col} = {text}");
        }
        assert_eq!(row["match"], Value::Bool(true));
    }
    assert!(doc["provenance"]["chisq_formula"].is_string());
}

#[test]
fn dihedral_averaged_long_scan_has_closed_values() {
    let doc = json(&[
        "analyze",
        "--family",
        "dihedral",
        "--n",
        "6",
        "--theta",
        "1/3",
        "--scan",
        "long",
        "--lmax",
        "2",
        "--averaged",
    ]);
    let theta = Rational::from_ratio(1, 3);
    for row in doc["rows"].as_array().unwrap() {
        let l = row["l"].as_i64().unwrap();
        let expected = theta.powi(24 * l) + Rational::from_int(10) * theta.powi(12 * l);
        assert_eq!(row["chisq_formula"], Value::String(format_rational(&expected)));
        assert_eq!(row["match"], Value::Bool(true));
    }
}

#[test]
fn undeformed_hypercube_walk_is_periodic() {
    // θ = 1 flips a uniform coordinate; chi-square from 0 is Σ_k C(3,k)(1 − 2k/3)^{2ℓ}.
    let doc = json(&[
        "analyze",
        "--family",
        "hypercube",
        "--n",
        "3",
        "--theta",
        "1",
        "--scan",
        "random",
        "--lmax",
        "5",
    ]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let l = row["l"].as_i64().unwrap();
        let third = Rational::from_ratio(1, 3);
        let expected = Rational::from_int(6) * third.powi(2 * l) + Rational::from_int(1);
        assert_eq!(row["chisq_oracle"], Value::String(format_rational(&expected)));
        assert_eq!(row["match"], Value::Bool(true));
    }
}

#[test]
fn csv_has_the_documented_columns() {
    let out = run(&[
        "analyze",
        "--family",
        "symmetric",
        "--n",
        "3",
        "--theta",
        "1/2",
        "--scan",
        "short",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("l,chisq_formula,chisq_oracle,tv,tv_bound,match"));
    assert_eq!(lines.clone().count(), 3);
    assert!(lines.all(|line| line.ends_with(",true")));
}

#[test]
fn float_mode_beyond_the_cap_reports_formula_only() {
    let out = Command::new(env!("CARGO_BIN_EXE_hecke-metro"))
        .args([
            "analyze",
            "--family",
            "symmetric",
            "--n",
            "4",
            "--theta",
            "0.5",
            "--mode",
            "float",
            "--lmax",
            "2",
        ])
        .env("HECKE_METRO_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in doc["rows"].as_array().unwrap() {
        assert!(row["chisq_formula"].is_f64());
        assert!(row["chisq_oracle"].is_null());
        assert!(row["match"].is_null());
    }
}

#[test]
fn exact_mode_beyond_the_cap_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_hecke-metro"))
        .args(["analyze", "--family", "symmetric", "--n", "4", "--theta", "1/2"])
        .env("HECKE_METRO_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn verify_passes_on_clean_instances() {
    for args in [
        ["--family", "symmetric", "--n", "4", "--theta", "2/3"],
        ["--family", "hypercube", "--n", "4", "--theta", "1/3"],
        ["--family", "dihedral", "--n", "8", "--theta", "9/10"],
    ] {
        let mut all = vec!["verify"];
        all.extend(args);
        let doc = json(&all);
        for row in doc["rows"].as_array().unwrap() {
            assert_ne!(row["status"], "fail", "{args:?}: {row}");
        }
    }
}

#[test]
fn perturbed_kernel_fails_the_hecke_check() {
    let out = run(&[
        "verify",
        "--family",
        "symmetric",
        "--n",
        "4",
        "--theta",
        "2/3",
        "--perturb",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let failed: Vec<&str> = rows
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| r["invariant"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["single_site_kernel_equals_hecke_generator"]);
}

#[test]
fn sampling_is_deterministic_and_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for path in &paths {
        let out = run(&[
            "sample",
            "--family",
            "symmetric",
            "--n",
            "5",
            "--theta",
            "1/2",
            "--samples",
            "2000",
            "--seed",
            "7",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let (a, b) = (std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
    assert_eq!(a, b);
    let names: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names.len(), 2, "no temp files left behind: {names:?}");

    let doc: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2000);
    let summary = &doc["summary"];
    assert!(summary["empirical_tv"].as_f64().unwrap() < 0.1);
    let mean = &summary["length_mean"];
    assert!((mean["empirical"].as_f64().unwrap() - mean["predicted"].as_f64().unwrap()).abs() < 0.2);
}

#[test]
fn undeformed_hypercube_samples_have_fair_coordinates() {
    let doc = json(&[
        "sample",
        "--family",
        "hypercube",
        "--n",
        "10",
        "--theta",
        "1",
        "--samples",
        "20000",
        "--seed",
        "3",
    ]);
    for m in doc["summary"]["coordinate_means"].as_array().unwrap() {
        assert!((m.as_f64().unwrap() - 0.5).abs() < 0.02);
    }
}

#[test]
fn bounds_grid_covers_the_requested_points() {
    let doc = json(&["bounds", "--family", "hypercube", "--ns", "10,100", "--cs", "1,2,3"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2 * 3 * 2);
    assert!(rows.iter().all(|r| r["bound"].as_f64().unwrap().is_finite()));

    let dihedral = json(&["bounds", "--family", "dihedral", "--ns", "40", "--cs", "1"]);
    let single = dihedral["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["scan"] == "long")
        .unwrap()["bound"]
        .as_f64()
        .unwrap();
    assert!((single - 2.0 * 0.5f64.powi(41) / 0.5).abs() < 1e-24);
}

#[test]
fn lead_constant_table_has_one_row_per_theta() {
    let doc = json(&["bounds", "--table", "lead", "--ns", "100", "--thetas", "0.5,0.9,0.1"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(
        rows[0].as_object().unwrap().keys().collect::<Vec<_>>(),
        ["theta", "n", "random", "systematic"]
    );
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["bounds", "--family", "hypercube", "--thetas", "1"],
        vec!["analyze", "--family", "symmetric", "--n", "4", "--theta", "1e-1"],
        vec!["analyze", "--family", "symmetric", "--n", "1", "--theta", "1/2"],
        vec!["analyze", "--family", "dihedral", "--n", "5", "--theta", "3/2"],
        vec!["analyze", "--family", "nope", "--n", "4", "--theta", "1/2"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}
