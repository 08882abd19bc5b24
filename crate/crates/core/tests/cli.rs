//! End-to-end runs of the `toboggan` binary.

use std::process::{Command, Output};

fn toboggan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toboggan"))
        .args(args)
        .env_remove("TOBOGGAN_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn contour_straight_line() {
    let o = toboggan(&["contour", "--N", "0", "--eps", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows[0], vec!["s", "re", "im"]);
    assert_eq!(rows.len(), 202);
    for r in &rows[1..] {
        assert_eq!(r[0].parse::<f64>().unwrap(), r[1].parse::<f64>().unwrap());
        assert_eq!(r[2].parse::<f64>().unwrap(), -0.2);
    }
}

#[test]
fn contour_descendants_wind() {
    for n in ["1", "2"] {
        let rows = csv_rows(&toboggan(&["contour", "--N", n, "--eps", "0.25", "--s-min", "0", "--s-max", "3"]));
        let q: Vec<(f64, f64)> = rows[1..]
            .iter()
            .map(|r| (r[1].parse().unwrap(), r[2].parse().unwrap()))
            .collect();
        let modulus: Vec<f64> = q.iter().map(|(a, b)| a.hypot(*b)).collect();
        assert!(modulus.windows(2).all(|w| w[1] > w[0]), "N = {n}");
        // the curve changes quadrant as it winds
        let quadrants: std::collections::BTreeSet<(bool, bool)> =
            q.iter().map(|(a, b)| (*a > 0.0, *b > 0.0)).collect();
        assert!(quadrants.len() >= 2, "N = {n}");
    }
}

#[test]
fn usage_and_domain_errors() {
    for args in [
        &["contour", "--N", "1", "--count", "1"][..],
        &["spectrum", "--N", "0", "--ell", "-0.5"],
        &["spectrum", "--ell", "4", "--unknown", "3"],
        &["verify", "ho", "--ell", "10", "--levels", "30"],
        &["figure", "fig9"],
    ] {
        let o = toboggan(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn spectrum_rows() {
    let rows = csv_rows(&toboggan(&["spectrum", "--N", "0", "--ell", "4", "--levels", "2"]));
    assert_eq!(rows[0], vec!["N", "ell", "rho", "n", "E", "F", "G", "source"]);
    let e0: f64 = rows[1][4].parse().unwrap();
    let e1: f64 = rows[2][4].parse().unwrap();
    assert!((e0 + 8.279_446_242_229_81).abs() < 1e-12);
    assert!((e1 + 1.182_778_034_604_258_5).abs() < 1e-12);
    // 17 significant digits
    assert_eq!(rows[1][4].split('e').next().unwrap().trim_start_matches('-').len(), 18);

    let rows = csv_rows(&toboggan(&["spectrum", "--N", "1", "--ell", "4", "--levels", "1"]));
    let e: f64 = rows[1][4].parse().unwrap();
    assert!((e + 11.131_720_575_329_69).abs() < 1e-12);
}

#[test]
fn precision_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_toboggan"))
        .args(["spectrum", "--ell", "4"])
        .env("TOBOGGAN_PRECISION", "6")
        .output()
        .unwrap();
    let rows = csv_rows(&o);
    assert_eq!(rows[1][4], "-8.27945e0");
}

#[test]
fn spectrum_json() {
    let o = toboggan(&["--format", "json", "spectrum", "--N", "2", "--ell", "30", "--levels", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert_eq!(entries[2]["n"], 2);
    assert_eq!(entries[0]["source"], "closed_form");
}

#[test]
fn figures() {
    let limits = [-1.96014, -2.43941, -2.88789, -3.25507];
    let rows = csv_rows(&toboggan(&["figure", "fig2"]));
    assert_eq!(rows[0], vec!["rho", "N", "n", "F"]);
    assert_eq!(rows.len(), 1 + 25 * 4 * 5);
    for r in &rows[1..] {
        let rho: f64 = r[0].parse().unwrap();
        if rho <= 1e-6 {
            let n: usize = r[1].parse().unwrap();
            let f: f64 = r[3].parse().unwrap();
            assert!(((f - limits[n]) / limits[n]).abs() < 0.02, "{r:?}");
        }
    }

    let rows = csv_rows(&toboggan(&["figure", "fig3"]));
    assert_eq!(rows[0], vec!["ell", "N", "G_scaled"]);
    let last: Vec<f64> = rows[rows.len() - 4..].iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(last[3] < last[0] && last[0] < last[2] && last[2] < last[1]);

    let a = toboggan(&["figure", "fig1"]);
    let b = toboggan(&["figure", "fig1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(csv_rows(&a)[0], vec!["N", "s", "re", "im"]);
}

#[test]
fn verify_targets() {
    let o = toboggan(&["verify", "ho", "--ell", "10", "--levels", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for level in v["levels"].as_array().unwrap() {
        assert!(level["abs_diff"].as_f64().unwrap() < 1e-4);
        assert!((level["approx_minus_exact"].as_f64().unwrap() - 0.0238).abs() < 1e-4);
        for key in ["problem", "grid", "seed", "eigenvalue", "residual", "closed_form"] {
            assert!(level.get(key).is_some());
        }
    }

    let o = toboggan(&["verify", "cubic0", "--ell", "50", "--levels", "2"]);
    assert_eq!(o.status.code(), Some(0));

    // a grid far too coarse fails the oscillator tolerance
    let o = toboggan(&["verify", "ho", "--ell", "10", "--levels", "2", "--grid-points", "101"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn config_file_and_output_path() {
    let dir = std::env::temp_dir().join(format!("toboggan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("spectrum.csv");
    let cfg = dir.join("run.json");
    std::fs::write(
        &cfg,
        serde_json::json!({
            "command": "spectrum",
            "parameters": {"N": 0, "ell": 4, "levels": 2},
            "output": out,
            "format": "csv"
        })
        .to_string(),
    )
    .unwrap();
    let o = toboggan(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let direct = toboggan(&["spectrum", "--N", "0", "--ell", "4", "--levels", "2"]);
    assert_eq!(std::fs::read(&out).unwrap(), direct.stdout);

    std::fs::write(&cfg, r#"{"command": "spectrum", "parameters": {"ell": 4, "bogus": 1}}"#).unwrap();
    assert_eq!(toboggan(&["--config", cfg.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
