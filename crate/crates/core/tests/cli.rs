use std::process::Command;

fn fire() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fire"))
}

#[test]
fn positional_run_writes_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let out = fire()
        .args([
            "12",
            "2",
            "1",
            "--steps",
            "4",
            "--output-every",
            "2",
            "--dump-coeffs",
            "--out-dir",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["out_2.data", "fuel_2.data", "out_4.data", "fuel_4.data", "out_4.coeffs"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let text = std::fs::read_to_string(dir.path().join("out_4.data")).unwrap();
    assert_eq!(text.lines().count(), 13 * 13);
}

#[test]
fn invalid_degree_exits_nonzero() {
    let out = fire().args(["100", "0", "1"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree"));
}

#[test]
fn unknown_flag_and_missing_config_fail() {
    assert!(!fire().arg("--warp").output().unwrap().status.success());
    assert!(!fire()
        .args(["--config", "/no/such/file.cfg"])
        .output()
        .unwrap()
        .status
        .success());
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = fire()
        .args(["8", "1", "2", "--steps", "2", "--bench", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("bench.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "workers,p,mesh,steps,seconds,speedup,efficiency");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,1,8,2,"));
    assert!(lines[2].starts_with("2,1,8,2,"));
}

#[test]
fn config_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.cfg");
    std::fs::write(&cfg, "mesh = 10\nsteps = 50\nscheme = strang\n").unwrap();
    let out = fire()
        .arg("--config")
        .arg(&cfg)
        .args(["--steps", "1", "--scheme", "explicit", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("1 steps"));
    assert!(dir.path().join("out_1.data").exists());
}
