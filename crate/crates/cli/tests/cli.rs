use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fundalc(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fundalc"))
        .args(args)
        .env("FUNDALC_CACHE_DIR", cache)
        .env_remove("FUNDALC_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_reports_the_sl2_split() {
    let dir = tempfile::tempdir().unwrap();
    let o = fundalc(dir.path(), &["eval", "SL2", "s0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["length"], 1);
    assert_eq!(v["k_fundamental"], false);
    assert_eq!(v["gl_fundamental"], true);
    assert_eq!(v["straight"], false);

    let o = fundalc(dir.path(), &["eval", "SL2", "s1", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("literal,length"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[4..7], ["false", "true", "true"]);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["eval", "GL2", "t[1]"],
        vec!["eval", "XY7", "s0"],
        vec!["eval", "SL2", "s9"],
        vec!["verify", "nope", "SL2", "--max-len", "2"],
        vec!["classify", "SL2"],
        vec!["plot", "SL2", "s0", "--out", "x.svg"],
        vec!["minuscule", "GL3", "--mu", "2,0,0"],
        vec!["types", "show"],
    ] {
        let o = fundalc(dir.path(), &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn eval_with_twist_power() {
    let dir = tempfile::tempdir().unwrap();
    let a = fundalc(dir.path(), &["eval", "SL3@2", "s0*s1", "--sigma", "2"]);
    let b = fundalc(dir.path(), &["eval", "SL3", "s0*s1"]);
    let va: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let vb: Value = serde_json::from_str(&stdout(&b)).unwrap();
    for k in ["length", "nu_bar", "straight", "k_fundamental", "gl_fundamental"] {
        assert_eq!(va[k], vb[k], "{k}");
    }
}

#[test]
fn enumerate_counts_and_window() {
    let dir = tempfile::tempdir().unwrap();
    let o = fundalc(dir.path(), &["enumerate", "SL2", "--max-len", "1", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 3);
    let o = fundalc(dir.path(), &["enumerate", "GL2", "--max-len", "1", "--omega-window", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
    let o = fundalc(dir.path(), &["enumerate", "GL2", "--max-len", "1", "--omega-window", "0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["enumerate", "SL3", "--max-len", "4"],
        vec!["verify", "fund-equivalence", "GL2", "--max-len", "5", "--format", "csv"],
        vec!["classify", "SL2", "--max-len", "3"],
    ] {
        let cold = fundalc(dir.path(), &args);
        let warm = fundalc(dir.path(), &args);
        assert_eq!(cold.status.code(), Some(0));
        assert_eq!(cold.stdout, warm.stdout, "{args:?}");
        let uncached = fundalc(dir.path(), &[&args[..], &["--no-cache"]].concat());
        assert_eq!(cold.stdout, uncached.stdout, "{args:?}");
    }
    let index = std::fs::read_to_string(dir.path().join("index.log")).unwrap();
    assert_eq!(index.lines().count(), 3);
}

#[test]
fn verify_suites_pass_on_small_data() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["fund-equivalence", "kf-criteria", "min-certificates", "straight-classes", "newton-bound"] {
        let o = fundalc(dir.path(), &["verify", suite, "GL2", "--max-len", "6", "--no-cache"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["suite"], suite);
    }
    let o = fundalc(dir.path(), &["verify", "kf-criteria", "SL2", "--max-len", "6", "--no-cache"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn minuscule_all_rows_succeed() {
    let dir = tempfile::tempdir().unwrap();
    let o = fundalc(dir.path(), &["minuscule", "GL3", "--mu", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["total"], 18);
    assert_eq!(v[0]["succeeded"], 18);
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.svg");
    let o = fundalc(
        dir.path(),
        &["plot", "SL3", "s0*s1*s2", "s1", "--v", "0,0", "--out", out.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("stroke-dasharray").count(), 4);
}

#[test]
fn datum_from_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a1.json");
    let datum = r#"{"label": "my-A1", "rank": 1, "roots": [[2], [-2]], "coroots": [[1], [-1]], "simple": [0]}"#;
    std::fs::write(&path, datum).unwrap();
    let a = fundalc(dir.path(), &["enumerate", path.to_str().unwrap(), "--max-len", "3", "--format", "csv"]);
    let b = fundalc(dir.path(), &["enumerate", "SL2", "--max-len", "3", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(stdout(&a).lines().count(), stdout(&b).lines().count());
}

#[test]
fn config_file_settings() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("conf");
    let cache = dir.path().join("from-config");
    std::fs::write(&cfg, format!("cache_dir = {}\njobs = 2\n", cache.display())).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_fundalc"))
        .args(["--config", cfg.to_str().unwrap(), "enumerate", "SL2", "--max-len", "2"])
        .env_remove("FUNDALC_CACHE_DIR")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(cache.join("index.log").exists());

    std::fs::write(&cfg, "colour = red\n").unwrap();
    let o = fundalc(dir.path(), &["--config", cfg.to_str().unwrap(), "types", "list"]);
    assert_eq!(o.status.code(), Some(2));
}
