use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sumprod(args: &[&str]) -> Output {
    sumprod_in(args, &[])
}

fn sumprod_in(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sumprod"));
    cmd.args(args).env_remove("SUMPROD_PRECISION").env_remove("SUMPROD_OUTPUT_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn stats_of_short_progression() {
    let out = sumprod(&["stats", "--set", "ap:1:1:5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["command"], "stats");
    let s = &v["stats"];
    assert_eq!(s["additiveEnergy"], 85);
    assert_eq!(s["sumSetSize"], 9);
    assert_eq!(s["differenceSetSize"], 9);
    assert_eq!(s["cubicEnergy"], 325);
}

#[test]
fn stats_csv_has_one_row() {
    let out = sumprod(&["stats", "--set", "gp:1:3:4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("familySpec,|A|,|A+A|"));
    assert!(lines[1].starts_with("gp:1:3:4,4,"));
}

#[test]
fn verify_file_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "a.txt", "# small set\n1\n2\n3 # trailing\n\n");
    let out = sumprod(&["verify", "--set", &format!("file:{path}")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["summary"]["failed"], 0);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["checkId"].as_str().unwrap()).collect();
    for id in ["esc.diff", "esc.sum", "needed", "emult.prod", "emult.ratio", "twothree"] {
        assert!(ids.contains(&id), "missing {id}");
    }
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn rejected_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write(dir.path(), "z.txt", "0\n2\n");
    let bad = write(dir.path(), "b.txt", "1\nnot a number\n");
    let empty = write(dir.path(), "e.txt", "# nothing\n");
    for args in [
        vec!["verify".to_string(), "--set".into(), format!("file:{zero}")],
        vec!["stats".into(), "--set".into(), format!("file:{bad}")],
        vec!["stats".into(), "--set".into(), format!("file:{empty}")],
        vec!["stats".into(), "--set".into(), "gp:1:0:3".into()],
        vec!["stats".into(), "--set".into(), "file:/no/such/file".into()],
        vec!["chain".into(), "--set".into(), "ap:0:1:4".into()],
        vec![
            "scan".into(),
            "--template".into(),
            "ap:1:1:5".into(),
            "--from".into(),
            "1".into(),
            "--to".into(),
            "3".into(),
        ],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = sumprod(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("sumprod: "), "{args:?}");
    }
    let err = String::from_utf8_lossy(&sumprod(&["stats", "--set", &format!("file:{bad}")]).stderr).to_string();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn zero_allowed_without_multiplicative_checks() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write(dir.path(), "z.txt", "0\n2\n5\n");
    let out = sumprod(&["verify", "--set", &format!("file:{zero}"), "--no-multiplicative"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| !c["checkId"].as_str().unwrap().starts_with("emult")));
}

#[test]
fn duplicates_warn_but_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "d.txt", "1\n2\n1\n");
    let out = sumprod(&["stats", "--set", &format!("file:{path}")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let v = json(&out);
    assert_eq!(v["duplicateLines"], serde_json::json!([3]));
    assert_eq!(v["stats"]["setSize"], 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["chain", "--set", "randint:1:50:6:seed=4"];
    let (a, b) = (sumprod(&args), sumprod(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let (x, y) = (json(&a), json(&sumprod(&["chain", "--set", "randint:1:50:6:seed=5"])));
    assert_ne!(x["runId"], y["runId"]);
    assert_ne!(x["inputDigest"], y["inputDigest"]);
    assert_eq!(x["chains"].as_array().unwrap().len(), 4);
    assert_eq!(x["theorem"].as_array().unwrap().len(), 4);
}

#[test]
fn environment_overrides() {
    let out = sumprod_in(&["stats", "--set", "ap:1:1:4"], &[("SUMPROD_PRECISION", "40")]);
    let v = json(&out);
    assert_eq!(v["precision"], 40);
    let digits = v["stats"]["exponents"]["sumProduct"].as_str().unwrap();
    assert_eq!(digits, "2");
    let ratio = v["stats"]["exponents"]["diffRatio"].as_str().unwrap();
    assert!(ratio.len() <= 42, "{ratio}");
    let flag = json(&sumprod_in(&["stats", "--set", "ap:1:1:4", "--precision", "60"], &[("SUMPROD_PRECISION", "40")]));
    assert_eq!(flag["precision"], 60);
    assert_eq!(sumprod(&["stats", "--set", "ap:1:1:4", "--precision", "10"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let out = sumprod_in(
        &["stats", "--set", "ap:1:1:4", "--output", "nested/stats.json"],
        &[("SUMPROD_OUTPUT_DIR", dir.path().to_str().unwrap())],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("nested/stats.json")).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&written).unwrap()["stats"]["setSize"], 4);
}

#[test]
fn incidence_on_grid() {
    let dir = tempfile::tempdir().unwrap();
    let pts: String = (0..3).flat_map(|x| (0..3).map(move |y| format!("{x};{y}\n"))).collect();
    let points = write(dir.path(), "p.txt", &pts);
    let lines = write(dir.path(), "l.txt", "1;0;0\n1;0;1\n0;1;2\n1;-1;0\n1;1;2\n");
    let out = sumprod(&["incidence", "--points", &points, "--lines", &lines, "--rich", "1", "--rich", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["incidences"], 15);
    assert_eq!(v["rich"][1]["t"], 3);
    assert_eq!(v["rich"][1]["lines"], 5);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn scan_rows_follow_the_sweep() {
    let out = sumprod(&["scan", "--template", "ap:2:3:{n}", "--from", "2", "--to", "10", "--step", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    for (i, r) in rows.iter().enumerate() {
        let n = 2 + 2 * i;
        assert_eq!(r[0], format!("ap:2:3:{n}"));
        assert_eq!(r[2], (2 * n - 1).to_string());
    }
    let out = sumprod(&["scan", "--template", "ap:2:3:{n}", "--from", "2", "--to", "4", "--format", "json"]);
    assert_eq!(json(&out)["rows"].as_array().unwrap().len(), 3);
}
