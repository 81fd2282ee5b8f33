use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_slice-bergman"));
    c.env_remove("SLICE_BERGMAN_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn value4(v: &Value) -> [f64; 4] {
    let a = v["value"].as_array().expect("value array");
    [0, 1, 2, 3].map(|i| a[i].as_f64().unwrap())
}

const CUBIC: &str = r#"{"type":"polynomial","coeffs":[[1,0,0,0],[0,1,0,0],[0,0,0,0],[0.5,0,0,0.5]]}"#;

#[test]
fn ball_kernel_at_origin() {
    let out = run(&["kernel", "--kernel", "ball", "--form", "I", "--q", "0,0,0,0", "--r", "0,0,0,0"]);
    assert!(out.status.success());
    let v = value4(&stdout_json(&out));
    assert!((v[0] - std::f64::consts::FRAC_1_PI).abs() < 1e-15);
    assert_eq!(&v[1..], &[0.0, 0.0, 0.0]);
}

#[test]
fn reproduce_cubic_on_the_j_slice() {
    let out = run(&["reproduce", "--fn", CUBIC, "--q", "0.2,0.1,-0.3,0.1", "--domain", "ball", "--slice", "0,1,0"]);
    assert!(out.status.success());
    let j = stdout_json(&out);
    assert!(j["error"]["rel"].as_f64().unwrap() < 1e-7);
    let v = value4(&j);
    let expected = [0.8705, 0.199, 0.098, 0.2715];
    for k in 0..4 {
        assert!((v[k] - expected[k]).abs() < 1e-12, "{v:?}");
    }
}

#[test]
fn negative_components_are_accepted() {
    let out = run(&["kernel", "--kernel", "half_B", "--q", "0.5,-0.2,0,1", "--r", "0.3,-1,0,-0.4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn errors_are_json_with_exit_2() {
    for args in [
        &["kernel", "--kernel", "ball", "--q", "1,0,0,0", "--r", "0,0,0,0"][..],
        &["kernel", "--kernel", "ball", "--q", "1,0,0", "--r", "0,0,0,0"][..],
        &["reproduce", "--fn", r#"{"type":"polynomial","coefs":[]}"#, "--q", "0,0,0,0"][..],
        &["norm", "--fn", CUBIC, "--weight", "sideways"][..],
        &["bogus"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let j = stdout_json(&out);
        assert!(j["error"]["kind"].is_string(), "{j}");
        assert!(j["error"]["detail"].is_string(), "{j}");
    }
    let j = stdout_json(&run(&["kernel", "--kernel", "ball", "--q", "1,0,0,0", "--r", "0,0,0,0"]));
    assert_eq!(j["error"]["kind"], "DomainError");
}

#[test]
fn help_exits_zero() {
    assert!(run(&["--help"]).status.success());
    assert!(run(&["--version"]).status.success());
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["norm", "--fn", CUBIC, "--weight", "rho", "--nr", "48", "--ntheta", "96"];
    let a = run(&args);
    let b = run(&args);
    let c = bin().args(args).args(["--threads", "1"]).output().unwrap();
    let d = bin().args(args).env("SLICE_BERGMAN_THREADS", "3").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(a.stdout, d.stdout);

    let mc = ["norm", "--fn", CUBIC, "--kind", "mc", "--samples", "20000", "--seed", "7"];
    assert_eq!(run(&mc).stdout, run(&mc).stdout);
}

#[test]
fn csv_rows_accumulate_under_one_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("runs.csv");
    let p = path.to_str().unwrap();
    for _ in 0..2 {
        let out = run(&["--csv", p, "kernel", "--kernel", "q_factor", "--q", "0.1,0,0,0", "--r", "0.2,0,0,0"]);
        assert!(out.status.success());
    }
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "command,inputs,vw,vx,vy,vz,abs_err,rel_err,ms");
    assert!(lines[1].starts_with("kernel,"));
    assert!(!lines[1].contains(p));
}

#[test]
fn contour_and_area_transforms_agree() {
    let quartic = r#"{"type":"polynomial","coeffs":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0],[1,0,0,0]]}"#;
    let q = "0.2,-0.1,0.3,0.25";
    let a = stdout_json(&run(&["bf-transform", "--fn", quartic, "--q", q]));
    let c = stdout_json(&run(&["contour", "--fn", quartic, "--q", q, "--slice", "0,0,1"]));
    let (a, c) = (value4(&a), value4(&c));
    let expected = [0.34, 0.32, -0.96, -0.8];
    for k in 0..4 {
        assert!((a[k] - expected[k]).abs() < 1e-10);
        assert!((c[k] - expected[k]).abs() < 1e-12);
    }
}

#[test]
fn verify_kernels_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.csv");
    let out = run(&["--csv", path.to_str().unwrap(), "verify", "--suite", "kernels"]);
    assert_eq!(out.status.code(), Some(0));
    let j = stdout_json(&out);
    assert_eq!(j["passed"], true);
    let ids: Vec<u64> = j["checks"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [1, 2, 4]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn verify_failure_exits_3() {
    let out = run(&["verify", "--suite", "kernels", "--tol-scale", "1e-12"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout_json(&out)["passed"], false);
}

#[test]
fn documented_examples() {
    let out = run(&["kernel", "--kernel", "ball_I", "--q", "0,0,0,0", "--r", "0.3,0,0,0"]);
    let v = value4(&stdout_json(&out));
    assert!((v[0] - std::f64::consts::FRAC_1_PI).abs() < 1e-15 && v[1..] == [0.0; 3]);

    let linear = r#"{"type":"polynomial","coeffs":[[0,0,0,0],[1,0,0,0]]}"#;
    let out = run(&["reproduce", "--fn", linear, "--q", "0.3,0.2,0,0", "--domain", "ball", "--slice", "1,0,0"]);
    let j = stdout_json(&out);
    assert!(j["error"]["rel"].as_f64().unwrap() < 1e-7);
    let v = value4(&j);
    assert!((v[0] - 0.3).abs() < 1e-12 && (v[1] - 0.2).abs() < 1e-12);
}
