use std::process::{Command, Output};

fn mdsrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdsrel"))
        .args(args)
        .env_remove("MDSREL_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn irwe_of_t2() {
    let o = mdsrel(&["irwe", "--n", "4", "--k", "2", "--q", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("i,j,A_ij\n"));
    for row in ["0,0,1", "1,2,8", "2,1,8", "2,2,8", "2,0,0"] {
        assert!(text.lines().any(|l| l == row), "missing {row}");
    }
    assert!(text.trim_end().ends_with("# sum=25 q^k=25 ok"));
}

#[test]
fn irwe_of_repetition_code() {
    let o = mdsrel(&["irwe", "--n", "3", "--k", "1", "--q", "2"]);
    let rows = data_rows(&o);
    let nonzero: Vec<_> = rows.iter().filter(|r| r[2] != "0").collect();
    assert_eq!(nonzero, [&["0", "0", "1"].map(String::from), &["1", "2", "1"].map(String::from)]);
}

#[test]
fn weight_distribution_check() {
    let o = mdsrel(&["wdist", "--n", "7", "--k", "3", "--b", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = data_rows(&o);
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[5], ["5", "147"]);
}

#[test]
fn sphere_table_reports_volume() {
    let o = mdsrel(&["sphere", "--n", "6", "--k", "2", "--q", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# ball_volume=577"));
}

#[test]
fn rational_budget_has_zero_residual() {
    let o = mdsrel(&[
        "budget", "--n", "4", "--k", "2", "--q", "5", "--p-min", "0.05", "--p-max", "0.8", "--points", "4",
        "--arithmetic", "rational", "--assert", "partition",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = data_rows(&o);
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][0], "5e-2");
    assert!(rows.iter().all(|r| r[7] == "0"));
    // exact word rates at p = 0.8 (p_s = 1/5)
    let last = &rows[3];
    assert_eq!(last[0], "8e-1");
    assert_eq!(last[5], "8/625");
}

#[test]
fn fn_bit_curve_assertions_hold_at_n_127() {
    let o = mdsrel(&[
        "curve", "--n", "127", "--k", "117", "--q", "128", "--log", "--quantity", "fn", "--level", "bit",
        "--assert", "monotone", "--assert", "below-p",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(data_rows(&o).len(), 30);
}

#[test]
fn false_positive_curve_peaks_inside() {
    let args = ["curve", "--n", "127", "--k", "117", "--b", "7", "--log", "--quantity", "fp", "--level", "word"];
    let o = mdsrel(&[&args[..], &["--assert", "interior-max"]].concat());
    assert_eq!(o.status.code(), Some(0));
    let o = mdsrel(&[&args[..], &["--assert", "monotone"]].concat());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(data_rows(&o).len(), 30, "output is kept when an assertion fails");
}

#[test]
fn diff_modes_takes_only_wc_and_ped() {
    let o = mdsrel(&["diff-modes", "--n", "4", "--k", "2", "--q", "5", "--quantity", "fn"]);
    assert_eq!(o.status.code(), Some(64));
    let o = mdsrel(&[
        "diff-modes", "--n", "7", "--k", "3", "--q", "8", "--quantity", "wc", "--p-min", "0", "--p-max", "0.2",
        "--points", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = data_rows(&o);
    assert_eq!(rows[0], ["0e0", "0.0000000000000000e0", "0.0000000000000000e0", "0.0000000000000000e0", "0.0000000000000000e0"]);
    assert!(rows[2][3].parse::<f64>().unwrap() > 0.0, "the two modes differ at p > 0");
}

#[test]
fn bad_usage_exits_64() {
    for args in [
        &["curve", "--n", "4"][..],
        &["curve", "--n", "4", "--k", "2", "--q", "6"],
        &["curve", "--n", "4", "--k", "5", "--q", "5"],
        &["curve", "--n", "4", "--k", "2", "--q", "5", "--level", "bit"],
        &["curve", "--n", "4", "--k", "2", "--q", "8", "--b", "2"],
        &["curve", "--n", "4", "--k", "2", "--q", "5", "--p-max", "2"],
        &["frobnicate"],
    ] {
        let o = mdsrel(args);
        assert_eq!(o.status.code(), Some(64), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(mdsrel(&["--help"]).status.code(), Some(0));
}

#[test]
fn table_cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["budget", "--n", "7", "--k", "3", "--q", "8", "--points", "3", "--cache", cache];
    let first = mdsrel(&args);
    assert_eq!(first.status.code(), Some(0));
    let irwe = std::fs::read_to_string(dir.path().join("irwe-n7-k3-q8-t2.csv")).unwrap();
    assert!(irwe.starts_with("# mdsrel-table v1\n# kind=irwe n=7 k=3 q=8 t=2\n"));
    assert!(dir.path().join("sphere-n7-k3-q8-t2.csv").exists());
    assert_eq!(stdout(&mdsrel(&args)), stdout(&first));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fn.csv");
    let o = mdsrel(&["curve", "--n", "7", "--k", "3", "--q", "8", "--points", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("p,value\n1e-4,"));
}

#[test]
fn simulation_rows() {
    let o = mdsrel(&["simulate", "--n", "7", "--k", "3", "--q", "8", "--trials", "20000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = data_rows(&o);
    assert_eq!(rows.len(), 6);
    let total: u64 = rows.iter().map(|r| r[2].parse::<u64>().unwrap()).sum();
    assert_eq!(total, 20_000);
    assert_eq!(stdout(&o), stdout(&mdsrel(&["simulate", "--n", "7", "--k", "3", "--q", "8", "--trials", "20000", "--seed", "7"])));
}

#[test]
fn verify_runs_every_suite() {
    let o = mdsrel(&["verify"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[pass]")).count(), 7);
    assert!(text.contains("7 suites passed, 0 failed, 0 not run"));
}

#[test]
fn parameters_without_an_mds_code_are_flagged() {
    for cmd in ["irwe", "wdist", "budget"] {
        let o = mdsrel(&[cmd, "--n", "4", "--k", "2", "--q", "2"]);
        assert_eq!(o.status.code(), Some(2), "{cmd}");
    }
    let o = mdsrel(&["irwe", "--n", "4", "--k", "2", "--q", "2"]);
    assert!(stdout(&o).contains("2,2,-1"));
    assert!(stdout(&o).contains("# FAILED"));
}
