//! End-to-end CLI checks: dispatch examples, file round-trips, and
//! byte-level reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cuspcraft"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn horoball_dist_prints_the_distance() {
    let out = stdout(&[
        "horoball", "dist", "--base", "line:16", "--scale", "exp2", "--depth", "5", "--from",
        "0,0", "--to", "16,0",
    ]);
    assert_eq!(out.trim(), "8");
}

#[test]
fn qi_scan_reports_the_threshold() {
    let out = stdout(&[
        "qi", "scan", "--c", "2", "--B", "0", "--E", "10", "--nmax", "1048576",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["threshold"], 32768);
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1_with_json_on_stderr() {
    let out = run(&[
        "horoball", "dist", "--base", "line:4", "--scale", "exp2", "--depth", "2", "--from",
        "0,0", "--to", "9,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["kind"], "vertex_out_of_range");
    assert!(err["error"].as_str().unwrap().contains("out of range"));

    let out = run(&[
        "horoball", "build", "--base", "line:4", "--scale", "table:1,2,3", "--depth", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["kind"], "scaling_violation");
}

#[test]
fn ball_file_feeds_the_horoball_builder() {
    let dir = tempfile::tempdir().unwrap();
    let ball = dir.path().join("ball.json");
    stdout_to(&["group", "ball", "--family", "free:2", "--radius", "2"], &ball);
    let out = stdout(&[
        "horoball",
        "dist",
        "--base",
        ball.to_str().unwrap(),
        "--scale",
        "exp2",
        "--depth",
        "3",
        "--from",
        "0,0",
        "--to",
        "0,3",
    ]);
    assert_eq!(out.trim(), "3");
}

fn stdout_to(args: &[&str], path: &Path) {
    let out = bin()
        .args(args)
        .arg("--out")
        .arg(path)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn cusp_build_round_trips_through_its_own_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("cusp.json");
    stdout_to(
        &[
            "cusp", "build", "--family", "free:2", "--peripheral", "a", "--radius", "6",
            "--scale", "exp2", "--depth", "3",
        ],
        &spec,
    );
    let text = std::fs::read_to_string(&spec).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["radius"], 6);
    let out = stdout(&[
        "cusp",
        "dist",
        "--in",
        spec.to_str().unwrap(),
        "--from",
        "1",
        "--to",
        "aaaa",
    ]);
    assert_eq!(out.trim(), "4"); // line formula at N=4: min(4, 2*1+2)
}

#[test]
fn delta_consumes_all_three_graph_file_shapes() {
    let dir = tempfile::tempdir().unwrap();

    let ball = dir.path().join("ball.json");
    stdout_to(&["group", "ball", "--family", "free:2", "--radius", "2"], &ball);
    let report = stdout(&["delta", "--input", ball.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["delta"], 0.0); // radius-2 ball of a free group is a tree

    let horo = dir.path().join("horoball.json");
    stdout_to(
        &[
            "horoball", "build", "--base", "line:8", "--scale", "exp2", "--depth", "3",
        ],
        &horo,
    );
    let report = stdout(&["delta", "--input", horo.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert!(v["delta"].as_f64().unwrap() <= 2.0);
    assert_eq!(v["mode"], "exhaustive");

    let cusp = dir.path().join("cusp.json");
    stdout_to(
        &[
            "cusp", "build", "--family", "free:2", "--peripheral", "a", "--radius", "3",
            "--scale", "exp2", "--depth", "2",
        ],
        &cusp,
    );
    let report = stdout(&[
        "delta",
        "--input",
        cusp.to_str().unwrap(),
        "--mode",
        "sample:20000",
        "--seed",
        "7",
    ]);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["quadruples_examined"], 20000);
    assert_eq!(v["mode"]["sampled"]["seed"], 7);
}

#[test]
fn limitset_pipeline_sample_dim_plot() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    stdout_to(
        &[
            "limitset", "sample", "--fixture", "octagon", "--maxlen", "8", "--threshold",
            "0.999", "--prune",
        ],
        &pts,
    );
    let text = std::fs::read_to_string(&pts).unwrap();
    assert!(text.starts_with("x,y,z\n"));
    assert!(text.lines().count() > 1000);

    let dim = stdout(&[
        "limitset",
        "dim",
        "--in",
        pts.to_str().unwrap(),
        "--scales",
        "0.25,0.125,0.0625",
    ]);
    let v: serde_json::Value = serde_json::from_str(&dim).unwrap();
    let d = v["dimension"].as_f64().unwrap();
    assert!((0.85..=1.15).contains(&d), "dimension {d}");

    let svg_path = dir.path().join("plot.svg");
    stdout_to(
        &[
            "limitset",
            "plot",
            "--in",
            pts.to_str().unwrap(),
            "--projection",
            "equatorial",
        ],
        &svg_path,
    );
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    let circles = svg.matches("<circle").count();
    assert_eq!(circles, text.lines().count() - 1);
    // equatorial projection of the octagon sample traces the unit circle
    for line in svg.lines().filter(|l| l.starts_with("<circle")) {
        let cx: f64 = line.split("cx=\"").nth(1).unwrap().split('"').next().unwrap().parse().unwrap();
        let cy: f64 = line.split("cy=\"").nth(1).unwrap().split('"').next().unwrap().parse().unwrap();
        let r = (cx * cx + cy * cy).sqrt();
        assert!((r - 1.0).abs() <= 1e-3, "circle center off the unit circle: {line}");
    }
}

#[test]
fn fixtures_validate_reports_all() {
    let out = stdout(&["fixtures", "validate"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 5);
    for r in reports {
        for res in r["relator_residuals"].as_array().unwrap() {
            assert!(res.as_f64().unwrap() <= 1e-9);
        }
    }
}

#[test]
fn acyl_count_far_pair() {
    let out = stdout(&[
        "acyl", "count", "--fixture", "schottky", "--maxlen", "6", "--eps", "0.1", "--p",
        "0,0,1", "--q", "0,0,22026.465794806718",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witness_count"], 1);
    assert!(v["r"].as_f64().unwrap() >= 10.0);
}

#[test]
fn horoball_growth_emits_csv() {
    let out = stdout(&[
        "horoball", "growth", "--base", "line:16", "--scale", "exp2", "--depth", "4",
        "--center", "8,0", "--rmax", "2",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "r,ball_size");
    assert_eq!(lines[1], "0,1");
    assert_eq!(lines.len(), 4);
}

#[test]
fn capacity_env_var_overrides_the_guard() {
    let out = bin()
        .args(["group", "ball", "--family", "free:2", "--radius", "4"])
        .env("CUSPCRAFT_MAX_VERTICES", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["kind"], "capacity_exceeded");

    let out = bin()
        .args(["group", "ball", "--family", "free:2", "--radius", "4"])
        .env("CUSPCRAFT_MAX_VERTICES", "1000")
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = bin()
        .args(["group", "ball", "--family", "free:2", "--radius", "1"])
        .env("CUSPCRAFT_MAX_VERTICES", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let commands: Vec<Vec<String>> = vec![
        vec!["group", "ball", "--family", "free:2", "--radius", "3"],
        vec!["qi", "growth", "--ns", "1,16,256,65536"],
        vec![
            "limitset", "sample", "--fixture", "schottky", "--maxlen", "7", "--threshold",
            "0.98",
        ],
        vec!["delta", "--input", "HORO", "--mode", "sample:50000", "--seed", "3"],
        vec!["fixtures", "validate"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();

    let horo = dir.path().join("h.json");
    stdout_to(
        &[
            "horoball", "build", "--base", "line:8", "--scale", "exp2", "--depth", "3",
        ],
        &horo,
    );

    for (i, cmd) in commands.iter().enumerate() {
        let args: Vec<String> = cmd
            .iter()
            .map(|a| {
                if a == "HORO" {
                    horo.to_string_lossy().into_owned()
                } else {
                    a.clone()
                }
            })
            .collect();
        let mut files: Vec<PathBuf> = Vec::new();
        for pass in 0..2 {
            let path = dir.path().join(format!("out_{i}_{pass}"));
            let out = bin().args(&args).arg("--out").arg(&path).output().unwrap();
            assert!(out.status.success(), "{args:?}");
            files.push(path);
        }
        let a = std::fs::read(&files[0]).unwrap();
        let b = std::fs::read(&files[1]).unwrap();
        assert_eq!(a, b, "run {i} not reproducible: {args:?}");
    }
}
