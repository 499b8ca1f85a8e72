//! Tool-surface contracts: exit codes, determinism of the emitted
//! payloads, and report-file writing.

use std::path::PathBuf;
use std::process::Command;

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn run(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_plasmakit"))
        .current_dir(repo_root())
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn tmp(tag: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(tag);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn parse_errors_exit_2() {
    let dir = tmp("io-parse");
    let bad = dir.join("bad.sys");
    std::fs::write(&bad, "independent t\neq: D(u,t) = 0\n").unwrap(); // u undeclared
    let (code, _, err) = run(&[
        "check", "--system", bad.to_str().unwrap(), "--generator", "paper/emhd-x1.gen",
    ]);
    assert_eq!(code, Some(2), "stderr: {err}");
    assert!(err.contains("undeclared"));

    let (code, _, _) = run(&["verify-exact", "--case", "no-such-case"]);
    assert_eq!(code, Some(2));

    let (code, _, _) = run(&["simulate", "--model", "no-model", "--config", "configs/hm-reduced.json"]);
    assert_eq!(code, Some(2));
}

#[test]
fn numerical_aborts_exit_3() {
    let dir = tmp("io-numeric");
    let cfg = dir.join("cfl.json");
    // dt large enough to trip the displacement guard.
    std::fs::write(
        &cfg,
        r#"{"ny":128,"dt":2.0,"t_end":10.0,"alpha":0.05,"beta":0.5,"q":2,"output_stride":1}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["simulate", "--model", "hm-reduced", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, Some(3), "stderr: {err}");
    assert!(err.contains("stability"), "stderr: {err}");
}

#[test]
fn failing_verdicts_exit_1() {
    let (code, out, _) = run(&["check", "--system", "paper/hm.sys", "--generator", "paper/hm-xbad.gen"]);
    assert_eq!(code, Some(1), "stdout: {out}");
}

#[test]
fn repeated_runs_are_byte_identical_modulo_timing() {
    let dir_a = tmp("io-det-a");
    let dir_b = tmp("io-det-b");
    for dir in [&dir_a, &dir_b] {
        let (code, _, err) = run(&[
            "simulate",
            "--model", "hm-reduced",
            "--config", "configs/hm-reduced.json",
            "--seed", "7",
            "--out", dir.to_str().unwrap(),
        ]);
        assert_eq!(code, Some(0), "stderr: {err}");
    }
    let csv_a = std::fs::read(dir_a.join("hm-reduced-timeseries.csv")).unwrap();
    let csv_b = std::fs::read(dir_b.join("hm-reduced-timeseries.csv")).unwrap();
    assert_eq!(csv_a, csv_b, "CSV payloads differ between identical runs");

    let strip_timing = |path: PathBuf| -> String {
        let text = std::fs::read_to_string(path).unwrap();
        text.lines().filter(|l| !l.contains("timing_ms")).collect::<Vec<_>>().join("\n")
    };
    let rep_a = strip_timing(dir_a.join("report.json"));
    let rep_b = strip_timing(dir_b.join("report.json"));
    assert_eq!(rep_a, rep_b, "reports differ beyond timing");
}

#[test]
fn seeded_random_runs_are_reproducible() {
    let dir_a = tmp("io-seed-a");
    let dir_b = tmp("io-seed-b");
    let cfg = dir_a.join("hm2d.json");
    std::fs::write(
        &cfg,
        r#"{"nx":32,"ny":32,"dt":0.005,"t_end":0.2,"init":"random","amplitude":0.1,"output_stride":10}"#,
    )
    .unwrap();
    for dir in [&dir_a, &dir_b] {
        let (code, _, err) = run(&[
            "simulate", "--model", "hm-2d", "--config", cfg.to_str().unwrap(),
            "--seed", "1234", "--out", dir.to_str().unwrap(),
        ]);
        assert_eq!(code, Some(0), "stderr: {err}");
    }
    assert_eq!(
        std::fs::read(dir_a.join("hm-2d-invariants.csv")).unwrap(),
        std::fs::read(dir_b.join("hm-2d-invariants.csv")).unwrap(),
    );
}

#[test]
fn reduce_without_eligible_pair_exits_2() {
    let dir = tmp("io-reduce");
    let cfg = dir.join("pairless.json");
    std::fs::write(
        &cfg,
        r#"{
  "l": 12.566370614359172, "vmax": 6.0, "nx": 32, "nv": 64, "dt": 0.01, "steps": 10,
  "species": [
    {"name":"e","charge":[-1,1],"mass":[1,1],"profile":{"kind":"maxwellian","density":1.0,"vth":1.0}},
    {"name":"p","charge":[1,1],"mass":[100,1],"profile":{"kind":"maxwellian","density":1.0,"vth":0.1}}
  ]
}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["reduce", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, Some(2));
    assert!(err.contains("no eligible pair"), "stderr: {err}");

    let single = dir.join("single.json");
    std::fs::write(
        &single,
        r#"{
  "l": 12.566370614359172, "vmax": 6.0, "nx": 32, "nv": 64, "dt": 0.01, "steps": 10,
  "species": [
    {"name":"e","charge":[-1,1],"mass":[1,1],"profile":{"kind":"maxwellian","density":1.0,"vth":1.0}}
  ]
}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["reduce", "--config", single.to_str().unwrap()]);
    assert_eq!(code, Some(2));
    assert!(err.contains("at least two species"), "stderr: {err}");
}
