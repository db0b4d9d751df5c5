use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gradslice::algebra::{parse_rational, qi};
use gradslice::models::kus_polynomial;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradslice")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn with_config(dir: &TempDir, body: &str, args: &[&str]) -> Output {
    let cfg = write(dir, "config.json", body);
    let mut all = args.to_vec();
    all.extend(["--config", cfg.to_str().unwrap()]);
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn rational(v: &Value) -> gradslice::Q {
    parse_rational(v.as_str().unwrap()).unwrap()
}

const RABI5: &str = r#"{"model":"rabi","omega":"0.4","delta":"0.1","n":5,"sweep":{"param":"g","min":"0","max":"2","grid":1000}}"#;

#[test]
fn slice_reports_rabi_signature() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, r#"{"model":"rabi","omega":"1","delta":"0.5"}"#, &["slice"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("signature: gamma=1 gamma_star=-2 width=4"), "{s}");
    assert!(s.contains("alternative: A2"));
    for g in -2..=1 {
        assert!(s.contains(&format!("slice {g} ")));
    }
}

#[test]
fn slice_generalized_has_two_constraints() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, r#"{"model":"generalized-rabi","omega":"1","delta":"0.3","g1":"2","g2":"1"}"#, &["slice"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("gamma=2 "));
}

#[test]
fn bad_configs_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&with_config(&dir, "{not json", &["slice"])), 2);
    assert_eq!(code(&with_config(&dir, r#"{"model":"nonesuch","omega":"1","delta":"1"}"#, &["slice"])), 2);
    assert_eq!(code(&with_config(&dir, r#"{"model":"rabi","omega":"-1","delta":"1"}"#, &["slice"])), 2);
    assert_eq!(code(&with_config(&dir, r#"{"model":"rabi","omega":"1","delta":"x"}"#, &["slice"])), 2);
    assert_eq!(code(&with_config(&dir, r#"{"model":"rabi","omega":"1","delta":"1"}"#, &["constraint"])), 2, "missing n");
    assert_eq!(code(&run(&["slice"])), 2, "missing --config");
    let reversed = r#"{"model":"rabi","omega":"1","delta":"1","n":1,"sweep":{"min":"2","max":"1"}}"#;
    assert_eq!(code(&with_config(&dir, reversed, &["sweep"])), 2);
}

#[test]
fn constraint_rabi_n1_is_monic_quadratic() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, r#"{"model":"rabi","omega":"1","delta":"1/2","n":1}"#, &["constraint"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let c = &v["constraints"][0]["coefficients"];
    // 4g² + μ² − 1 = 0 made monic: g² + (μ² − 1)/4.
    assert_eq!(c.as_array().unwrap().len(), 3);
    assert_eq!(c[0], "-3/16");
    assert_eq!(c[1], "0");
    assert_eq!(c[2], "1");
    assert!(v["clearing_factor"].is_array());
}

#[test]
fn constraint_rabi_n0_is_delta_squared() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, r#"{"model":"rabi","omega":"1","delta":"0.3","n":0}"#, &["constraint"]);
    let c = &json(&o)["constraints"][0]["coefficients"];
    assert_eq!(c.as_array().unwrap().len(), 1);
    assert_eq!(rational(&c[0]), parse_rational("0.09").unwrap());
}

#[test]
fn constraint_driven_n1_shifts_constant_term() {
    let dir = TempDir::new().unwrap();
    for (branch, sign) in [("plus", -1), ("minus", 1)] {
        let cfg = format!(r#"{{"model":"driven-rabi","omega":"1","delta":"1/2","delta_drive":"1/10","branch":"{branch}","n":1}}"#);
        let c = &json(&with_config(&dir, &cfg, &["constraint"]))["constraints"][0]["coefficients"];
        // −3/16 shifted by ∓2ωδ/4.
        let expected = parse_rational("-3/16").unwrap() + qi(sign) * parse_rational("1/20").unwrap();
        assert_eq!(rational(&c[0]), expected, "{branch}");
    }
}

#[test]
fn decoupled_rabi_has_degenerate_baseline() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, r#"{"model":"rabi","omega":"1","delta":"0.5","g":"0","n":2}"#, &["baseline"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn baseline_energy_is_displaced_oscillator_level() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, r#"{"model":"rabi","omega":"1","delta":"0.5","g":"1/3","n":2}"#, &["baseline"]);
    assert_eq!(code(&o), 0);
    // E = nω − g²/ω.
    assert_eq!(rational(&json(&o)["energy"]), parse_rational("17/9").unwrap());
}

/// Zeros of K_nn(g/ω, μ) by a dense sign-change scan, for comparison.
fn kus_zeros(n: usize, omega: f64, mu: f64, hi: f64) -> Vec<f64> {
    let f = |g: f64| kus_polynomial(n, &gradslice::Approx::new(g / omega), &gradslice::Approx::new(mu)).value;
    let steps = 200_000;
    let mut out = Vec::new();
    let mut prev = f(hi / steps as f64);
    for i in 2..=steps {
        let (a, b) = (hi * (i - 1) as f64 / steps as f64, hi * i as f64 / steps as f64);
        let cur = f(b);
        if (prev < 0.0) != (cur < 0.0) {
            let (mut lo, mut up) = (a, b);
            for _ in 0..80 {
                let m = 0.5 * (lo + up);
                if (f(m) < 0.0) == (f(lo) < 0.0) {
                    lo = m;
                } else {
                    up = m;
                }
            }
            out.push(0.5 * (lo + up));
        }
        prev = cur;
    }
    out
}

#[test]
fn roots_rabi_n5_match_kus() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, RABI5, &["roots"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 5);
    let kus = kus_zeros(5, 0.4, 0.25, 2.0);
    assert_eq!(kus.len(), 5);
    for (p, k) in pts.iter().zip(&kus) {
        assert!((p["value"].as_f64().unwrap() - k).abs() < 1e-9, "{p} vs {k}");
        assert!(p["certificates"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    }
}

#[test]
fn roots_rabi_n1_closed_form() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, r#"{"model":"rabi","omega":"1","delta":"0.5","n":1}"#, &["roots"]);
    let pts = json(&o)["points"].as_array().unwrap().clone();
    assert_eq!(pts.len(), 1);
    let g = (1.0f64 - 0.25).sqrt() / 2.0;
    assert!((pts[0]["value"].as_f64().unwrap() - g).abs() < 1e-15);
}

#[test]
fn roots_count_drops_with_mu() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, r#"{"model":"rabi","omega":"0.4","delta":"0.6","n":5}"#, &["roots"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["points"].as_array().unwrap().len(), 4);
}

#[test]
fn roots_empty_table_exits_0() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, r#"{"model":"rabi","omega":"1","delta":"0.5","n":0}"#, &["roots"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(json(&o)["points"].as_array().unwrap().is_empty());
}

#[test]
fn roots_csv_and_numeric_agree_with_exact() {
    let dir = TempDir::new().unwrap();
    let exact = json(&with_config(&dir, RABI5, &["roots"]));
    let o = with_config(&dir, RABI5, &["roots", "--mode", "numeric", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "index,g,coupling,energy,residual_rel,passed");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for (row, p) in rows.iter().zip(exact["points"].as_array().unwrap()) {
        let g: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((g - p["value"].as_f64().unwrap()).abs() < 1e-12);
        assert!(row.ends_with(",true"));
    }
}

fn sign_change_cells(rows: &[Vec<f64>], col: usize) -> Vec<usize> {
    (1..rows.len()).filter(|&i| (rows[i - 1][col] < 0.0) != (rows[i][col] < 0.0)).collect()
}

fn parse_csv(s: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = s.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn sweep_rabi_p1_and_kus_change_sign_together() {
    let dir = TempDir::new().unwrap();
    let o = with_config(&dir, RABI5, &["sweep"]);
    assert_eq!(code(&o), 0);
    let (header, rows) = parse_csv(&stdout(&o));
    assert_eq!(header, ["param", "P1", "kus"]);
    assert_eq!(rows.len(), 1000);
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
    assert!(rows[0][0] > 0.0 && rows[999][0] == 2.0);
    let p1 = sign_change_cells(&rows, 1);
    assert_eq!(p1.len(), 5);
    assert_eq!(p1, sign_change_cells(&rows, 2));
    // 17 significant digits.
    let first = stdout(&o).lines().nth(1).unwrap().split(',').next().unwrap().to_string();
    assert_eq!(first.split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
}

#[test]
fn sweep_and_roots_are_deterministic() {
    let dir = TempDir::new().unwrap();
    for args in [&["sweep"][..], &["roots"][..], &["sweep", "--mode", "numeric"][..]] {
        let a = with_config(&dir, RABI5, args);
        let b = with_config(&dir, RABI5, args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn sweep_driven_matches_roots() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"model":"driven-rabi","omega":"0.4","delta":"0.1","delta_drive":"0.02","n":9,"sweep":{"param":"g","min":"0","max":"2","grid":1000}}"#;
    let (header, rows) = parse_csv(&stdout(&with_config(&dir, cfg, &["sweep"])));
    assert_eq!(header, ["param", "P1"]);
    let cells = sign_change_cells(&rows, 1);
    let o = with_config(&dir, cfg, &["roots"]);
    assert_eq!(code(&o), 0);
    let pts = json(&o)["points"].as_array().unwrap().clone();
    assert_eq!(pts.len(), 9);
    assert_eq!(cells.len(), pts.len());
    for (i, p) in cells.iter().zip(&pts) {
        let g = p["value"].as_f64().unwrap();
        assert!(rows[i - 1][0] < g && g <= rows[*i][0], "{g} not in cell {i}");
    }
}

fn roots_file(dir: &TempDir, cfg: &str) -> PathBuf {
    let out = dir.path().join("roots.json");
    let o = with_config(dir, cfg, &["roots", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn verify(path: &Path) -> Output {
    run(&["verify", path.to_str().unwrap(), "--seed", "11"])
}

#[test]
fn verify_accepts_untouched_output() {
    let dir = TempDir::new().unwrap();
    let path = roots_file(&dir, RABI5);
    let o = verify(&path);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["all_passed"], true);
    for p in v["points"].as_array().unwrap() {
        assert!(p["sl2"].is_object());
        assert_eq!(p["sl2"]["cfrm_defect"], "0");
        assert_eq!(p["negative_control"]["rejected"], true);
    }
}

#[test]
fn verify_rejects_perturbed_coefficient() {
    let dir = TempDir::new().unwrap();
    let path = roots_file(&dir, RABI5);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let a = &mut v["points"][2]["coefficients"][1];
    *a = Value::from(a.as_f64().unwrap() + 1e-4);
    let tampered = write(&dir, "tampered.json", &v.to_string());
    assert_eq!(code(&verify(&tampered)), 4);
}

#[test]
fn verify_rejects_moved_root() {
    let dir = TempDir::new().unwrap();
    let path = roots_file(&dir, RABI5);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let re = &mut v["points"][0]["roots"][0][0];
    *re = Value::from(re.as_f64().unwrap() + 1e-6);
    let tampered = write(&dir, "tampered.json", &v.to_string());
    assert_eq!(code(&verify(&tampered)), 4);
}

#[test]
fn verify_omits_sl2_for_generalized() {
    let dir = TempDir::new().unwrap();
    let path = roots_file(&dir, r#"{"model":"generalized-rabi","omega":"1","delta":"0.3","g1":"2","g2":"1","n":2}"#);
    let o = verify(&path);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json(&o);
    let pts = v["points"].as_array().unwrap();
    assert!(!pts.is_empty());
    assert!(pts.iter().all(|p| p["sl2"].is_null()));
}

#[test]
fn verify_rejects_non_report() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "junk.json", r#"{"hello": 1}"#);
    assert_eq!(code(&verify(&p)), 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.csv");
    let o = with_config(&dir, RABI5, &["sweep", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 1001);
}
