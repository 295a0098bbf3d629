use std::process::Command;

fn ergw(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ergw"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn verify_quick_passes() {
    let out = ergw(&["verify", "--quick"]);
    let text = String::from_utf8_lossy(&out.stdout);
    println!("{text}");
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}

#[test]
fn verify_runs_named_checks() {
    let out = ergw(&["verify", "--check", "C4", "--format", "json"]);
    // the Wintner check is a documented failure; the exit code says so
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["id"], "C4");
}

#[test]
fn expsum_row_for_n_four() {
    let out = ergw(&["expsum", "--n", "4", "--x", "0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "n,x_num,x_den_or_grid_index,re,im,method");
    assert!(text.lines().nth(1).unwrap().contains(",8.0000000000000000e0,"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["maximal", "--kmax", "6", "--N", "128", "--signals", "3", "--seed", "9"];
    assert_eq!(ergw(&args).stdout, ergw(&args).stdout);
    let osc = ["oscillation", "--J", "5", "--N", "256", "--table", "4096"];
    assert_eq!(ergw(&osc).stdout, ergw(&osc).stdout);
}

#[test]
fn usage_and_resource_exit_codes() {
    assert_eq!(ergw(&["sieve", "--unknown-flag"]).status.code(), Some(2));
    assert_eq!(ergw(&["kernel-error", "--n", "16"]).status.code(), Some(2));
    assert_eq!(ergw(&["maximal", "--kmax", "31"]).status.code(), Some(3));
}

#[test]
fn sieve_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ergw"))
            .args([
                "sieve",
                "--weights",
                "sigma",
                "--s",
                "2",
                "--N",
                "50",
                "--format",
                "json",
            ])
            .env("ERGW_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    assert_eq!(first.stdout, run().stdout);
}
