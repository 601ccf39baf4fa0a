use std::process::Command;

fn bqstat() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bqstat"))
}

#[test]
fn eligible_small_heights() {
    let out = bqstat()
        .args(["eligible", "--height-max", "30", "--disc-sign", "+"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim(), "i,j\n3,0");
    let out = bqstat()
        .args(["eligible", "--height-max", "30", "--disc-sign", "-"])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = stdout.trim().lines().collect();
    assert_eq!(rows, vec!["i,j", "-3,0", "-2,-7", "-2,7"]);
}

#[test]
fn invalid_sign_is_usage_error() {
    let out = bqstat()
        .args(["eligible", "--height-max", "30", "--disc-sign", "x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_lines_format() {
    let out = bqstat()
        .args([
            "eligible",
            "--height-max",
            "30",
            "--disc-sign",
            "+",
            "--format",
            "json-lines",
        ])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["i"], "3");
    assert_eq!(v["j"], "0");
}

#[test]
fn densities_row_format() {
    let out = bqstat()
        .args(["densities", "--prime", "5", "--family", "monic-cubic"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    // split-completely density at p = 5: 10/125 = 2/25
    assert!(stdout.contains("(111),2/25,2/25,OK"), "got:\n{stdout}");
    assert!(!stdout.contains("MISMATCH"));
}

#[test]
fn selmer_curve_report() {
    let out = bqstat()
        .args(["selmer", "--curve", "1,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("selmer_size=2"), "got:\n{stderr}");
}

#[test]
fn cache_round_trip_is_deterministic_and_detects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        bqstat()
            .args(["count-classes", "--height-max", "3000"])
            .arg("--cache")
            .arg(dir.path())
            .output()
            .unwrap()
    };
    let cold = run();
    assert!(cold.status.success());
    let warm = run();
    assert!(warm.status.success());
    assert_eq!(cold.stdout, warm.stdout, "cache must not change results");
    // corrupt one byte of the cache body: checksum must hard-error (exit 1)
    let path = dir.path().join("classes.cache");
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let mut broken: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
    let last = broken.last_mut().unwrap();
    last.push('9');
    std::fs::write(&path, broken.join("\n") + "\n").unwrap();
    let res = run();
    assert_eq!(res.status.code(), Some(1));
    let err = String::from_utf8(res.stderr).unwrap();
    assert!(err.contains("checksum"), "got:\n{err}");
}

#[test]
fn nmono_validates_delta() {
    let out = bqstat()
        .args(["nmono", "--height-max", "1000", "--delta", "0.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1)); // rejected by the library
    let out = bqstat()
        .args(["nmono", "--height-max", "1000", "--delta", "0.25"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn classgroup_small_run() {
    let out = bqstat()
        .args([
            "classgroup",
            "--height-max",
            "5000",
            "--signature",
            "complex",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().count() == 2, "got:\n{stdout}");
    assert!(stdout.contains(",2,"), "target column should carry 2:\n{stdout}");
}
