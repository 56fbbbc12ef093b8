use std::process::{Command, Output};

use serde_json::Value;

fn gepr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gepr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = gepr(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn value(v: &Value, path: &[&str]) -> f64 {
    let mut cur = v;
    for key in path {
        cur = &cur[*key];
    }
    cur["value"].as_f64().unwrap_or_else(|| panic!("no value at {path:?}: {v}"))
}

#[test]
fn gem_equal_widths_is_separable() {
    let v = json(&["gem", "--family", "gaussian", "--sigma", "1", "--omega", "1"]);
    assert_eq!(value(&v, &["e2"]), 0.0);
    assert_eq!(value(&v, &["percent"]), 0.0);
}

#[test]
fn gem_ratio_ten() {
    let v = json(&["gem", "--family", "gaussian", "--sigma", "10", "--omega", "1"]);
    assert!((value(&v, &["percent"]) - 80.2).abs() < 0.1);
    assert!((value(&v, &["schmidt_k1"]) - 5.05).abs() < 1e-4);
    assert!((value(&v, &["schmidt_k"]) - 25.5025).abs() < 1e-9);
}

#[test]
fn gem_nongaussian_oracle() {
    let v = json(&["gem", "--family", "nongaussian", "--sigma", "1", "--omega", "1", "--oracle"]);
    assert_eq!(value(&v, &["e2"]), 1.0);
    assert!((value(&v, &["oracle", "e2"]) - 1.0).abs() < 1e-6);
    let p = v["oracle"]["e2"]["provenance"].as_str().unwrap();
    assert!(p.starts_with("quadrature(order="), "{p}");
}

#[test]
fn every_number_carries_provenance() {
    fn walk(v: &Value, seen: &mut usize) {
        match v {
            Value::Object(m) => {
                if let Some(p) = m.get("provenance") {
                    let p = p.as_str().unwrap();
                    assert!(
                        p == "closed-form" || p.starts_with("quadrature(order=") || p.starts_with("svd(modes="),
                        "{p}"
                    );
                    *seen += 1;
                }
                m.values().for_each(|x| walk(x, seen));
            }
            Value::Array(a) => a.iter().for_each(|x| walk(x, seen)),
            _ => {}
        }
    }
    let mut seen = 0;
    walk(&json(&["gem", "--sigma", "0.5", "--omega", "2", "--oracle"]), &mut seen);
    assert!(seen >= 8, "only {seen} labeled values");
}

#[test]
fn spdc_lab_examples() {
    let ppktp = json(&["spdc", "--L", "10mm", "--lambda-p", "405nm", "--pump-width", "350um", "--width-convention", "omega"]);
    assert!((value(&ppktp, &["report", "percent"]) - 91.6).abs() < 0.1);
    let bbo = json(&["spdc", "--L", "15.76mm", "--lambda-p", "405nm", "--pump-width", "180um", "--width-convention", "sigma-p"]);
    assert!((value(&bbo, &["report", "percent"]) - 89.8).abs() < 0.1);
    assert!(bbo["report"]["widths"]["marginal"]["value"].is_f64());
}

#[test]
fn spdc_solves_for_pump_width() {
    let v = json(&[
        "spdc", "--L", "10mm", "--lambda-p", "405nm", "--width-convention", "omega", "--solve", "pump-width",
        "--target-e2", "1.832",
    ]);
    let w = value(&v, &["pump_width_m"]);
    assert!((w - 350e-6).abs() < 2e-6, "{w}");
}

#[test]
fn sweep_csv_shape_and_determinism() {
    let args = ["sweep", "--quantity", "gem-both", "--min", "0.01", "--max", "100", "--count", "201"];
    let a = gepr(&args);
    let b = gepr(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("ratio_omega_over_sigma,percent_gaussian,percent_nongaussian,in_nongaussian_window"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 201);
    assert_eq!(rows[100][..4], ["1", "0", "50", "true"]);
    for r in &rows {
        let (g, ng): (f64, f64) = (r[1].parse().unwrap(), r[2].parse().unwrap());
        assert!(ng > g);
    }
}

#[test]
fn sweep_pump_width_dip() {
    let out = gepr(&[
        "sweep", "--quantity", "spdc-vs-pumpwidth", "--min", "1e-6", "--max", "1e-3", "--count", "301", "--sigma", "10um",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[0].parse().unwrap(), c[3].parse().unwrap())
        })
        .collect();
    let (w, pct) = rows.iter().copied().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    assert!((w / 1e-5 - 1.0).abs() < 1e-8 && pct < 1e-9, "{w} {pct}");
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["gem", "--sigma", "2", "--omega", "1"];
    let stdout = gepr(&args).stdout;
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let out = gepr(&with_file);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = gepr(&["sweep", "--quantity", "gem-gaussian", "--min", "0.1", "--max", "10", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_parameters_are_usage_errors() {
    for args in [
        &["gem", "--sigma", "-1", "--omega", "1"][..],
        &["gem", "--sigma", "1"],
        &["spdc", "--L", "10", "--lambda-p", "405nm", "--pump-width", "350um", "--width-convention", "omega"],
        &["spdc", "--L", "10mm", "--lambda-p", "405nm", "--width-convention", "omega", "--solve", "pump-width", "--target-e2", "2"],
        &["sweep", "--quantity", "gem-gaussian", "--min", "10", "--max", "1"],
        &["gem", "--sigma", "1", "--omega", "1", "--max-order", "100000"],
        &["frobnicate"],
    ] {
        let out = gepr(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn ph_and_widths() {
    let w = json(&["ph", "--window"]);
    assert!((value(&w, &["omega_over_sigma_lower"]) - 0.577).abs() < 0.01);
    assert!((value(&w, &["omega_over_sigma_upper"]) - 1.732).abs() < 0.01);
    let m = json(&["widths", "--f", "0.1", "--sigma1", "1"]);
    assert!((value(&m, &["e2"]) - 1.8).abs() < 1e-12);
}

#[test]
fn verify_passes_and_catches_injected_fault() {
    let ok = gepr(&["verify"]);
    let table = String::from_utf8(ok.stdout).unwrap();
    assert_eq!(ok.status.code(), Some(0), "{table}");
    let checks = table.lines().filter(|l| l.starts_with("PASS")).count();
    assert!(checks >= 12, "{table}");
    assert!(table.contains("0.5774") && table.contains("1.7321"), "{table}");

    let bad = gepr(&["verify", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    let table = String::from_utf8(bad.stdout).unwrap();
    assert!(table.lines().any(|l| l.starts_with("FAIL") && l.contains("normalization nongaussian")), "{table}");
    assert!(String::from_utf8(bad.stderr).unwrap().contains("normalization nongaussian"));
}
