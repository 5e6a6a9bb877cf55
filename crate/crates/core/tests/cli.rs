use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qudit_witness::operator::BipartiteOperator;
use qudit_witness::witness::{c_gamma_lambda, detection_profile, region_witnesses};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qudit-witness"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// JSON body after the optional verdict line.
fn json_body(out: &Output) -> Value {
    let s = stdout(out);
    let start = s.find('{').unwrap();
    serde_json::from_str(&s[start..]).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn classify_bound_entangled_horodecki_state() {
    let out = run(&["classify", "--b", "3.5"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("verdict: PPT-detected-bound-entangled\n"));
    let v = json_body(&out);
    assert!(v["witness_values"]["C_slice"].as_f64().unwrap() < 0.0);
}

#[test]
fn classify_separable_horodecki_state_stays_unresolved() {
    let out = run(&["classify", "--b", "2.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("verdict: PPT-unresolved\n"));
    assert!(!text.contains("\"separable\""));
    assert!(json_body(&out)["note"]
        .as_str()
        .unwrap()
        .contains("separable"));
}

#[test]
fn classify_region_one_point_reports_measure() {
    let out = run(&[
        "classify", "--alpha", "0.5", "--beta", "0", "--gamma", "0", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["label"], "NPT-I");
    let m = v["measure"].as_f64().unwrap();
    assert!((m - 2f64.sqrt() / 6.0).abs() < 1e-12);
}

#[test]
fn classify_rejects_bad_input() {
    assert_eq!(run(&["classify", "--b", "7"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "--alpha", "0.5"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "--bogus"]).status.code(), Some(1));
    assert_eq!(
        run(&["classify", "--b", "3", "--lambda", "1.5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn slice_is_byte_identical_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run(&[
            "slice",
            "--gamma",
            "-0.3",
            "--grid",
            "15",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let (a, b) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text
        .contains("\nalpha,beta,gamma,valid,min_pt_eig,label,w_ci,w_cii,w_slice,w_ray,measure\n"));
    assert_eq!(data_rows(&text).len(), 225);
}

#[test]
fn gamma0_slice_region_one_boundary() {
    let out = run(&["slice", "--gamma", "0", "--grid", "31"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout(&out));
    let mut npt_i = 0;
    for r in &rows {
        let (alpha, beta): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        let w_ci: f64 = r[6].parse().unwrap();
        assert_ne!(r[5], "PPT-detected-bound-entangled");
        if r[3] != "true" {
            continue;
        }
        let margin = alpha - 0.25 - beta / 8.0;
        if margin.abs() > 1e-9 {
            assert_eq!(r[5] == "NPT-I", margin > 0.0, "{r:?}");
            assert_eq!(w_ci < 0.0, margin > 0.0);
        }
        npt_i += (r[5] == "NPT-I") as usize;
        if r[5] == "NPT-I" || r[5] == "NPT-II" {
            assert!(!r[10].is_empty());
        }
    }
    assert!(npt_i > 0);
}

#[test]
fn window_edge_slice_contains_horodecki_point() {
    let out = run(&[
        "slice",
        "--gamma",
        "-0.42857142857142855",
        "--grid",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let (a, b) = (2.0 / 21.0, -8.0 / 21.0);
    let g = &v["grid"];
    assert!(g["alpha"][0].as_f64().unwrap() <= a && a <= g["alpha"][1].as_f64().unwrap());
    assert!(g["beta"][0].as_f64().unwrap() <= b && b <= g["beta"][1].as_f64().unwrap());
    let point = run(&["classify", "--b", "4"]);
    assert!(stdout(&point).starts_with("verdict: PPT-detected-bound-entangled"));
}

#[test]
fn lambda_scan_summary_and_threshold() {
    let out = run(&["lambda-scan", "--from", "0.2", "--steps", "1000"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let summary = text.lines().last().unwrap();
    let field = |key: &str| -> f64 {
        let rest = &summary[summary.find(key).unwrap() + key.len()..];
        rest.split([' ', ';']).next().unwrap().parse().unwrap()
    };
    assert!((field("# min lambda_min=") - 0.875).abs() < 1e-5);
    assert!((field(" at gamma=") - 5f64.sqrt() / 7.0).abs() < 1e-3);
    let rows = data_rows(&text);
    let rows: Vec<_> = rows.iter().filter(|r| r.len() == 5).collect();
    let flip = rows.windows(2).find(|w| w[0][4] != w[1][4]).unwrap();
    let (lo, hi): (f64, f64) = (flip[0][0].parse().unwrap(), flip[1][0].parse().unwrap());
    let t = 1.0 / 21f64.sqrt();
    assert!(lo <= t && t <= hi);
    assert_eq!(
        stdout(&run(&["lambda-scan", "--from", "0.2", "--steps", "1000"])),
        text
    );
}

fn write_op(dir: &Path, name: &str, op: &BipartiteOperator) -> String {
    let p = dir.join(name);
    fs::write(&p, op.to_json()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn witness_check_certifies_region_two_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_op(dir.path(), "c_ii.json", &region_witnesses().c_ii.op);
    let out = run(&["witness-check", &f]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("certified: yes"));
    let v = json_body(&out);
    assert!(v["sampler_probe"].is_null());
}

#[test]
fn witness_check_reports_short_lambda_and_probes() {
    let dir = tempfile::tempdir().unwrap();
    let g = 0.3;
    let l = 0.8 * detection_profile(g).unwrap().lambda_min;
    let f = write_op(
        dir.path(),
        "short.json",
        &c_gamma_lambda(g, l).unwrap().witness.op,
    );
    let out = run(&["witness-check", &f, "--samples", "3000", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["certificate"]["certified"], false);
    assert!(v["certificate"]["max_abs_c"].as_f64().unwrap() > 1.0);
    assert!(v["sampler_probe"]["minimum"].as_f64().unwrap() < 0.0);
    assert!(v["caveat"].as_str().unwrap().contains("not a witness"));
}

#[test]
fn witness_check_generic_operator_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut entries = nalgebra::DMatrix::from_fn(9, 9, |r, c| {
        num_complex::Complex64::new(
            ((r * 7 + c * 3) % 5) as f64 - 2.0,
            ((r + 2 * c) % 3) as f64 - 1.0,
        )
    });
    entries = &entries + entries.adjoint();
    let generic = BipartiteOperator::new(3, 3, entries.clone()).unwrap();
    let f = write_op(dir.path(), "generic.json", &generic);
    let out = run(&["witness-check", &f, "--samples", "500", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["certificate"]["in_lemma_form"], false);
    assert!(v["sampler_probe"]["minimum"].is_number());
    assert!(v["caveat"].is_string());

    entries[(0, 1)] += num_complex::Complex64::new(1.0, 0.0);
    let skew = BipartiteOperator::new(3, 3, entries).unwrap();
    let f = write_op(dir.path(), "skew.json", &skew);
    assert_eq!(run(&["witness-check", &f]).status.code(), Some(1));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"dim_a\": 3}").unwrap();
    assert_eq!(
        run(&["witness-check", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["witness-check", "/nonexistent/op.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn nearest_ppt_matches_region_two_point() {
    let out = run(&[
        "nearest-ppt",
        "--alpha",
        "0",
        "--beta",
        "0.8",
        "--gamma",
        "0",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let p = &v["nearest_params"];
    assert!((p["alpha"].as_f64().unwrap() - 1.0 / 12.0).abs() < 1e-6);
    assert!((p["beta"].as_f64().unwrap() - 7.0 / 15.0).abs() < 1e-6);
    assert!((v["distance"].as_f64().unwrap() - 2f64.sqrt() / 6.0).abs() < 1e-9);
    assert_eq!(v["nearest"]["dim_a"], 3);
}

#[test]
fn nearest_ppt_non_convergence_exits_two() {
    let out = run(&["nearest-ppt", "--b", "0.3", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no convergence"));
}

#[test]
fn reproduce_small_battery_passes() {
    let out = run(&["reproduce", "--samples", "500"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("20 of 20 checks passed"));
    assert!(text.lines().filter(|l| l.starts_with("[PASS]")).count() == 20);
}
