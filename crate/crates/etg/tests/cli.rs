//! End-to-end tests driving the compiled binary: artifact shapes, mode
//! cross-checks, exit codes, and byte-level determinism.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

const CANONICAL: [&str; 4] = ["--delta", "-0.05,0.05,-0.05", "--x0", "1,0.5,0.5"];

fn etg(args: &[&str], out: &Path) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_etg"));
    // keep the ambient environment from leaking a tolerance override
    cmd.env_remove("ETG_TOLERANCE");
    cmd.args(args).arg("--out").arg(out);
    cmd.output().expect("spawn etg")
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn read_json(dir: &Path, name: &str) -> Value {
    let text = std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name} is not valid JSON: {e}"))
}

/// Parse trajectory.csv into numeric rows, skipping the header.
fn read_csv(dir: &Path) -> Vec<Vec<f64>> {
    let text = std::fs::read_to_string(dir.join("trajectory.csv")).expect("trajectory.csv");
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,x1,x2,x3,F1,F2,F3"));
    lines
        .map(|line| {
            line.split(',')
                .map(|cell| cell.parse::<f64>().expect("numeric cell"))
                .collect()
        })
        .collect()
}

fn max_state_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    assert_eq!(a.len(), b.len(), "row counts differ");
    let mut worst: f64 = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for j in 1..4 {
            worst = worst.max((ra[j] - rb[j]).abs());
        }
    }
    worst
}

fn quadric_coeffs(bundle: &Value, label: &str) -> [f64; 4] {
    let q = bundle["quadrics"]
        .as_array()
        .unwrap()
        .iter()
        .find(|q| q["label"] == label)
        .unwrap_or_else(|| panic!("no quadric labeled {label}"));
    let c: Vec<f64> = q["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    [c[0], c[1], c[2], c[3]]
}

fn quadric_residual(c: &[f64; 4], p: &[f64]) -> f64 {
    let val = c[0] * p[0] * p[0] + c[1] * p[1] * p[1] + c[2] * p[2] * p[2] + c[3];
    let scale = (c[0] * p[0] * p[0]).abs()
        + (c[1] * p[1] * p[1]).abs()
        + (c[2] * p[2] * p[2]).abs()
        + c[3].abs();
    val.abs() / scale.max(1.0)
}

fn point3(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|t| t.as_f64().unwrap()).collect()
}

#[test]
fn evolve_with_zero_steps_echoes_the_start() {
    let dir = tempfile::tempdir().unwrap();
    let out = etg(&[&["evolve"], &CANONICAL[..], &["--steps", "0"]].concat(), dir.path());
    assert_ok(&out);
    let rows = read_csv(dir.path());
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][1..4], &[1.0, 0.5, 0.5]);
    let traj = read_json(dir.path(), "trajectory.json");
    assert_eq!(traj["rows"].as_array().unwrap().len(), 1);
    assert!(traj["intermediates"].as_array().unwrap().is_empty());
}

#[test]
fn map_and_elliptic_modes_agree() {
    let d_map = tempfile::tempdir().unwrap();
    let d_ell = tempfile::tempdir().unwrap();
    let base = [&["evolve"], &CANONICAL[..], &["--steps", "40"]].concat();
    assert_ok(&etg(&[&base[..], &["--mode", "map"]].concat(), d_map.path()));
    assert_ok(&etg(&[&base[..], &["--mode", "elliptic"]].concat(), d_ell.path()));
    let rows_map = read_csv(d_map.path());
    let rows_ell = read_csv(d_ell.path());
    assert_eq!(rows_map.len(), 41);
    let worst = max_state_diff(&rows_map, &rows_ell);
    assert!(worst <= 1e-8, "map vs elliptic drift {worst:.3e}");
}

#[test]
fn sqrt_mode_interleaves_the_map() {
    let d_sqrt = tempfile::tempdir().unwrap();
    let d_map = tempfile::tempdir().unwrap();
    assert_ok(&etg(
        &[&["evolve"], &CANONICAL[..], &["--steps", "40", "--mode", "sqrt"]].concat(),
        d_sqrt.path(),
    ));
    assert_ok(&etg(
        &[&["evolve"], &CANONICAL[..], &["--steps", "20", "--mode", "map"]].concat(),
        d_map.path(),
    ));
    let rows_sqrt = read_csv(d_sqrt.path());
    let rows_map = read_csv(d_map.path());
    let even: Vec<Vec<f64>> = rows_sqrt.iter().step_by(2).cloned().collect();
    let worst = max_state_diff(&even, &rows_map);
    assert!(worst <= 1e-9, "half-steps drift off the map by {worst:.3e}");
}

#[test]
fn involutions_mode_matches_map_and_records_intermediates() {
    let d_inv = tempfile::tempdir().unwrap();
    let d_map = tempfile::tempdir().unwrap();
    let base = [&["evolve"], &CANONICAL[..], &["--steps", "12"]].concat();
    assert_ok(&etg(&[&base[..], &["--mode", "involutions"]].concat(), d_inv.path()));
    assert_ok(&etg(&[&base[..], &["--mode", "map"]].concat(), d_map.path()));
    let worst = max_state_diff(&read_csv(d_inv.path()), &read_csv(d_map.path()));
    assert!(worst <= 1e-8, "involution composition drift {worst:.3e}");
    let traj = read_json(d_inv.path(), "trajectory.json");
    assert_eq!(traj["intermediates"].as_array().unwrap().len(), 12);
    assert!(traj["nu1"].as_f64().unwrap().is_finite());
}

#[test]
fn config_file_drives_the_run_and_roundtrips() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    let cfg = dir1.path().join("in.json");
    std::fs::write(
        &cfg,
        r#"{
  "delta": [-0.05, 0.05, -0.05],
  "x0": [1.0, 0.5, 0.5],
  "steps": 7,
  "mode": "involutions",
  "seed": 3
}"#,
    )
    .unwrap();
    let out = etg(&["evolve", "--config", cfg.to_str().unwrap()], dir1.path());
    assert_ok(&out);

    // the echoed config reproduces the run byte for byte
    let echoed = dir1.path().join("config.json");
    assert_ok(&etg(&["evolve", "--config", echoed.to_str().unwrap()], dir2.path()));
    for name in ["trajectory.csv", "trajectory.json"] {
        let a = std::fs::read(dir1.path().join(name)).unwrap();
        let b = std::fs::read(dir2.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs when rerun from the echoed config");
    }
}

#[test]
fn flag_overrides_beat_config_values() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("in.json");
    std::fs::write(
        &cfg,
        r#"{"delta": [-0.05, 0.05, -0.05], "x0": [1.0, 0.5, 0.5], "steps": 5, "mode": "map"}"#,
    )
    .unwrap();
    let out = etg(
        &["evolve", "--config", cfg.to_str().unwrap(), "--steps", "9", "--mode", "sqrt"],
        dir.path(),
    );
    assert_ok(&out);
    let traj = read_json(dir.path(), "trajectory.json");
    assert_eq!(traj["steps"], 9);
    assert_eq!(traj["mode"], "sqrt");
    assert_eq!(read_csv(dir.path()).len(), 10);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("in.json");
    std::fs::write(
        &cfg,
        r#"{"delta": [-0.05, 0.05, -0.05], "x0": [1.0, 0.5, 0.5], "stepz": 5}"#,
    )
    .unwrap();
    let out = etg(&["evolve", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error[InvalidInput]"), "stderr: {err}");
}

#[test]
fn inadmissible_sign_pattern_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = etg(
        &["evolve", "--delta", "0.05,0.05,0.05", "--x0", "1,0.5,0.5"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("RegimeViolation"), "stderr: {err}");
}

#[test]
fn verify_passes_on_a_sound_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let out = etg(&[&["verify"], &CANONICAL[..]].concat(), dir.path());
    assert_ok(&out);
    let report = read_json(dir.path(), "report.json");
    assert_eq!(report["pass"], true);
    let suites = report["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 5);
    for suite in suites {
        assert_eq!(suite["pass"], true, "suite {} failed", suite["name"]);
        assert!(suite["max_error"].as_f64().unwrap() <= suite["tolerance"].as_f64().unwrap());
    }
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("verify: PASS"));
}

#[test]
fn impossible_tolerance_fails_verify_with_exit_one() {
    // via the environment override
    let dir = tempfile::tempdir().unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_etg"));
    cmd.env("ETG_TOLERANCE", "1e-20");
    cmd.args([&["verify"], &CANONICAL[..]].concat()).arg("--out").arg(dir.path());
    let out = cmd.output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify: FAIL"));
    assert_eq!(read_json(dir.path(), "report.json")["pass"], false);

    // via the per-suite config table, pinching a single suite
    let dir2 = tempfile::tempdir().unwrap();
    let cfg = dir2.path().join("in.json");
    std::fs::write(
        &cfg,
        r#"{
  "delta": [-0.05, 0.05, -0.05],
  "x0": [1.0, 0.5, 0.5],
  "tolerances": {"conservation": 1e-30}
}"#,
    )
    .unwrap();
    let out2 = etg(&["verify", "--config", cfg.to_str().unwrap()], dir2.path());
    assert_eq!(out2.status.code(), Some(1));
    let report = read_json(dir2.path(), "report.json");
    let suites = report["suites"].as_array().unwrap();
    for suite in suites {
        let expect_pass = suite["name"] != "conservation";
        assert_eq!(suite["pass"], expect_pass, "suite {}", suite["name"]);
    }
}

#[test]
fn geometry_bundle_lies_on_its_own_quadrics() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&etg(&[&["geometry"], &CANONICAL[..]].concat(), dir.path()));
    let bundle = read_json(dir.path(), "geometry.json");

    // default split is nu/2, so the two pencil members coincide
    let labels: Vec<&str> = bundle["quadrics"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["C1", "C2", "C3", "H1=H2"]);
    assert_eq!(
        bundle["lambda1"].as_f64().unwrap(),
        bundle["lambda2"].as_f64().unwrap()
    );

    // every sampled curve point lies on all three cylinders and the pencil member
    let coeff: Vec<[f64; 4]> = labels.iter().map(|l| quadric_coeffs(&bundle, l)).collect();
    for curve in bundle["curves"].as_array().unwrap() {
        for point in curve["points"].as_array().unwrap() {
            let p = point3(point);
            for c in &coeff {
                let res = quadric_residual(c, &p);
                assert!(res <= 1e-8, "curve point off a quadric by {res:.3e}");
            }
        }
    }

    // generator segments end on the hyperboloid they belong to
    let h = quadric_coeffs(&bundle, "H1=H2");
    for seg in bundle["generators"].as_array().unwrap() {
        assert_eq!(seg["label"], "H1=H2");
        for end in ["a", "b"] {
            let res = quadric_residual(&h, &point3(&seg[end]));
            assert!(res <= 1e-8, "generator endpoint off by {res:.3e}");
        }
    }
}

#[test]
fn geometry_with_split_phase_exports_two_hyperboloids() {
    // read the full step from a default run, then split it off-center
    let probe = tempfile::tempdir().unwrap();
    assert_ok(&etg(&[&["geometry"], &CANONICAL[..]].concat(), probe.path()));
    let nu = read_json(probe.path(), "geometry.json")["nu"].as_f64().unwrap();
    let nu1 = format!("{}", 0.31 * nu);

    let dir = tempfile::tempdir().unwrap();
    assert_ok(&etg(
        &[&["geometry"], &CANONICAL[..], &["--nu1", &nu1]].concat(),
        dir.path(),
    ));
    let bundle = read_json(dir.path(), "geometry.json");
    let labels: Vec<&str> = bundle["quadrics"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["C1", "C2", "C3", "H1", "H2"]);
    assert_ne!(bundle["lambda1"], bundle["lambda2"]);

    // each generator family ends on its own hyperboloid
    let h1 = quadric_coeffs(&bundle, "H1");
    let h2 = quadric_coeffs(&bundle, "H2");
    let mut seen = [0u32; 2];
    for seg in bundle["generators"].as_array().unwrap() {
        let (c, slot) = match seg["label"].as_str().unwrap() {
            "H1" => (&h1, 0),
            "H2" => (&h2, 1),
            other => panic!("unexpected generator label {other}"),
        };
        seen[slot] += 1;
        for end in ["a", "b"] {
            let res = quadric_residual(c, &point3(&seg[end]));
            assert!(res <= 1e-8, "split generator endpoint off by {res:.3e}");
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn mesh_vertices_satisfy_their_quadric_equations() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&etg(
        &[&["geometry"], &CANONICAL[..], &["--mesh", "--resolution", "24x24"]].concat(),
        dir.path(),
    ));
    let bundle = read_json(dir.path(), "geometry.json");
    for (label, file) in [
        ("C1", "mesh_C1.obj"),
        ("C2", "mesh_C2.obj"),
        ("C3", "mesh_C3.obj"),
        ("H1=H2", "mesh_H1H2.obj"),
    ] {
        let c = quadric_coeffs(&bundle, label);
        let text = std::fs::read_to_string(dir.path().join(file)).expect(file);
        let mut vertices = 0;
        for line in text.lines() {
            let Some(rest) = line.strip_prefix("v ") else { continue };
            let p: Vec<f64> = rest
                .split_whitespace()
                .map(|t| t.parse().expect("vertex coordinate"))
                .collect();
            let res = quadric_residual(&c, &p);
            assert!(res <= 1e-8, "{file} vertex off its quadric by {res:.3e}");
            vertices += 1;
        }
        assert!(vertices > 0, "{file} has no vertices");
    }
    assert!(dir.path().join("curves.obj").exists());
    assert!(dir.path().join("generators.obj").exists());
}

#[test]
fn artifacts_are_deterministic_across_runs() {
    let run = |dir: &Path| {
        assert_ok(&etg(
            &[&["evolve"], &CANONICAL[..], &["--steps", "6", "--mode", "involutions"]].concat(),
            dir,
        ));
        assert_ok(&etg(&[&["verify"], &CANONICAL[..], &["--seed", "11"]].concat(), dir));
        assert_ok(&etg(
            &[&["geometry"], &CANONICAL[..], &["--mesh", "--resolution", "16x16"]].concat(),
            dir,
        ));
    };
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    run(dir1.path());
    run(dir2.path());

    let mut names: Vec<String> = std::fs::read_dir(dir1.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert!(names.len() >= 9, "expected a full artifact set, got {names:?}");
    for name in names {
        let a = std::fs::read(dir1.path().join(&name)).unwrap();
        let b = std::fs::read(dir2.path().join(&name)).unwrap();
        assert_eq!(a, b, "{name} is not deterministic");
    }
}
