use std::path::Path;
use std::process::Command;

fn enttemp(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_enttemp")).args(args).env_remove("ENTTEMP_CONFIG").output().unwrap()
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn pareto_output_is_byte_identical_across_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let out = enttemp(&[
            "pareto",
            "--model",
            "tfi:8",
            "--seed",
            "42",
            "--samples",
            "40",
            "--rounds",
            "4",
            "--out",
            dir.path().to_str().unwrap(),
            "--format",
            "csv,json",
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["points.csv", "front.csv", "temperature.csv", "pareto.json"] {
        assert_eq!(read(a.path(), name), read(b.path(), name), "{name}");
    }
    let header = String::from_utf8(read(a.path(), "front.csv")).unwrap();
    assert!(header.starts_with("sample,move_seq_digest,delta_s_bits,delta_e,t_ent\n"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(
        &config,
        "[run]\nmodel = \"haf:6\"\nseed = 1\nformats = [\"csv\"]\n[sampler]\nsamples = 10\nrounds = 3\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = enttemp(&[
        "--config",
        config.to_str().unwrap(),
        "pareto",
        "--samples",
        "6",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let points = String::from_utf8(read(&out_dir, "points.csv")).unwrap();
    let max_sample = points.lines().skip(1).map(|l| l.split(',').next().unwrap().parse::<usize>().unwrap()).max();
    assert!(max_sample.is_some_and(|m| m < 6));
    assert!(!out_dir.join("pareto.svg").exists());
}

#[test]
fn toy_sweep_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let out =
            enttemp(&["toy", "--n", "2", "--seed", "3", "--restarts", "4", "--out", dir.path().to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(read(a.path(), "toy.csv"), read(b.path(), "toy.csv"));
    let text = String::from_utf8(read(a.path(), "toy.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("chi,delta_s0_bits,delta_e"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn scaling_writes_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out = enttemp(&["scaling", "--d", "2", "--points", "5", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(read(dir.path(), "scaling.csv")).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(String::from_utf8(read(dir.path(), "scaling.svg")).unwrap().starts_with("<svg"));
}

#[test]
fn exit_codes() {
    assert_eq!(enttemp(&["pareto", "--model", "haf:8"]).status.code(), Some(2), "missing seed");
    assert_eq!(enttemp(&["pareto", "--model", "toy:2", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(enttemp(&["pareto", "--model", "bogus:3", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(enttemp(&["check", "nonsense"]).status.code(), Some(2));
    assert_eq!(enttemp(&["scaling", "--d", "0"]).status.code(), Some(2));
    assert_eq!(enttemp(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn unconverged_ground_search_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("short.toml");
    std::fs::write(&config, "[ground]\nschedule = [[0.1, 2]]\ncheck_every = 1\n").unwrap();
    let out = enttemp(&[
        "--config",
        config.to_str().unwrap(),
        "pareto",
        "--model",
        "haf:8",
        "--seed",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ground search"));
}

#[test]
fn check_suite_reports_json() {
    let out = enttemp(&["check", "method2"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = report.as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["suite"] == "method2" && r["pass"] == true));
}
