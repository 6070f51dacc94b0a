use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn lightcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lightcone"))
        .args(args)
        .env_remove("LIGHTCONE_TOL")
        .output()
        .unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).unwrap()
}

#[test]
fn surface_writes_obj() {
    let path = tmp("helicoid.obj");
    let out = lightcone(&[
        "surface",
        "helicoid",
        "a=0",
        "b=1",
        "--grid",
        "6x5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let obj = std::fs::read_to_string(&path).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 30);
    assert!(obj.lines().any(|l| l.starts_with("f ")));
    let summary = json(&out.stderr);
    assert_eq!(summary["vertex_count"], 30);
    assert!(summary["max_ball_norm"].as_f64().unwrap() < 1.0);
}

#[test]
fn surface_rejects_unknown_kind() {
    let out = lightcone(&["surface", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn verify_exit_codes() {
    let ok = lightcone(&["verify", "cardioid", "catalog-zmc"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&ok.stdout);
    assert_eq!(v["pass"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);

    let strict = lightcone(&["verify", "cardioid", "--tol", "1e-30"]);
    assert_eq!(strict.status.code(), Some(1));
    assert_eq!(json(&strict.stdout)["pass"], false);
}

#[test]
fn classify_reports_branch() {
    let spec = tmp("case11.spec");
    std::fs::write(&spec, "# screw motion\ncase11 G=s+0.2*s^2 f=sin(s) c=1.5\n").unwrap();
    let out = lightcone(&["classify", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["branch"], "helicoid");
    assert!((v["parameters"]["b"].as_f64().unwrap() - 1.5).abs() < 1e-9);

    std::fs::write(&spec, "constant alpha=1 beta=2 gamma=0.5+i\n").unwrap();
    let v = json(&lightcone(&["classify", spec.to_str().unwrap()]).stdout);
    assert_eq!(v["branch"], "not-zmc");
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn classify_parse_error() {
    let spec = tmp("bad.spec");
    std::fs::write(&spec, "case12 A=sin(s^2) B1=0 B2=0\n").unwrap();
    let out = lightcone(&["classify", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1, column 14"));
}

#[test]
fn family_census_and_locus() {
    let csv = tmp("locus.csv");
    let out = lightcone(&[
        "family",
        "--radius",
        "0.25",
        "--samples",
        "11",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["census"]["helicoid"], 2);
    assert_eq!(v["census"]["elliptic"], 1);
    assert_eq!(v["census"]["parabolic"], 1);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,re_delta,im_delta,x,y,residual"));
    for l in lines {
        let r: f64 = l.rsplit(',').next().unwrap().parse().unwrap();
        assert!(r.abs() < 1e-14, "{l}");
    }
}
