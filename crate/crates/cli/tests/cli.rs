use std::process::{Command, Output};

#[path = "../src/config.rs"]
mod config;

use config::ExperimentConfig;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_timepref")).args(args).env_remove("TIMEPREF_JOBS").output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn header_of(text: &str) -> ExperimentConfig {
    ExperimentConfig::from_header_line(text.lines().next().unwrap()).unwrap()
}

#[test]
fn argument_errors_exit_2() {
    for args in [&["no-such-command"][..], &["theta"], &["theta", "--T", "x"], &["shatter", "--T", "5"]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn runtime_errors_exit_1_with_one_line() {
    for args in [
        &["gen-data", "--family", "ed", "--T", "3", "--n", "2"][..],
        &["theta", "--T", "1"],
        &["pac-fit", "--data", "/nonexistent/data.jsonl"],
        &["bounds", "--eps", "2"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with("error: "));
    }
}

#[test]
fn headers_round_trip() {
    let cases: &[&[&str]] = &[
        &["bounds", "--seed", "4"],
        &["theta", "--T", "3", "--samples", "1e4"],
        &["cal", "--eps", "0.1"],
        &["cal-bound"],
        &["mq", "--truth", "0.37", "--seed", "1"],
        &["parity-check", "--trials", "2", "--samples", "1000"],
        &["shatter", "--construct", "thm3", "--T", "5", "--check"],
        &["shatter", "--construct", "prop1", "--T", "4"],
        &["learning-curve", "--delta", "0.4", "--T", "3", "--sizes", "0,10", "--trials", "2", "--eps-test", "0.1"],
    ];
    for args in cases {
        let text = run_ok(args);
        assert!(text.starts_with("# {"), "{args:?}");
        let cfg = header_of(&text);
        assert_eq!(cfg.command, args[0]);
        assert_eq!(cfg.header_line(), text.lines().next().unwrap());
    }
    let mut want = ExperimentConfig::new("bounds", 4);
    want.eps = Some(vec![0.1, 0.05, 0.01, 0.005, 0.001]);
    want.conf = Some(0.1);
    want.vc_d = Some(3.0);
    assert_eq!(header_of(&run_ok(&["bounds", "--seed", "4"])), want);
    assert_eq!(header_of(&run_ok(&["cal-bound"])).seed, 0);
}

#[test]
fn identical_arguments_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["gen-data", "--family", "qhd", "--beta", "0.7", "--delta", "0.8", "--T", "4", "--n", "50", "--dist", "gaussian"],
        &["theta", "--T", "4", "--samples", "2e5", "--seed", "7"],
        &["learning-curve", "--family", "hd", "--alpha", "1.5", "--T", "4", "--sizes", "0,20", "--trials", "3", "--eps-test", "0.05"],
        &["cal", "--eps", "0.1,0.01", "--trials", "3"],
    ];
    for (k, args) in cases.iter().enumerate() {
        let mut outs = Vec::new();
        for (rep, jobs) in ["1", "4"].iter().enumerate() {
            let path = dir.path().join(format!("{k}-{rep}.out"));
            let p = path.to_str().unwrap();
            let mut full = vec!["--jobs", jobs];
            full.extend_from_slice(args);
            full.extend_from_slice(&["--out", p]);
            let out = run(&full);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            outs.push(std::fs::read(&path).unwrap());
        }
        // The header records the output path, so compare after it.
        let body = |b: &[u8]| b.splitn(2, |&c| c == b'\n').nth(1).unwrap().to_vec();
        assert_eq!(body(&outs[0]), body(&outs[1]), "{args:?}");
        let again = dir.path().join(format!("{k}-0.out"));
        let mut full = vec!["--jobs", "1"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", again.to_str().unwrap()]);
        let first = outs[0].clone();
        assert!(run(&full).status.success());
        assert_eq!(std::fs::read(&again).unwrap(), first);
    }
}

#[test]
fn generated_data_fits_back() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.jsonl");
    run_ok(&["gen-data", "--family", "ed", "--delta", "0.42", "--T", "5", "--n", "300", "--out", data.to_str().unwrap()]);
    let head = std::fs::read_to_string(&data).unwrap();
    let first: serde_json::Value = serde_json::from_str(head.lines().next().unwrap()).unwrap();
    let cfg: ExperimentConfig = serde_json::from_value(first["config"].clone()).unwrap();
    assert_eq!((cfg.command.as_str(), cfg.delta, cfg.n), ("gen-data", Some(0.42), Some(300)));
    let fit = run_ok(&["pac-fit", "--data", data.to_str().unwrap(), "--family", "ed"]);
    let row: Vec<&str> = fit.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(row[5], "0");
    assert!((row[3].parse::<f64>().unwrap() - 0.42).abs() < 0.01);
}

#[test]
fn theta_trailer_and_shatter_summary() {
    let text = run_ok(&["theta", "--T", "4", "--delta", "0.5", "--samples", "1000000", "--seed", "7"]);
    let last = text.lines().last().unwrap();
    let sup: f64 = last.strip_prefix("# ratio_sup=").unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!((sup - 2.0).abs() < 0.05);

    let out = run(&["shatter", "--construct", "thm3", "--T", "5", "--check"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("shattered=true, n=2"));
}

#[test]
fn mq_example() {
    let text = run_ok(&["mq", "--family", "ed", "--truth", "0.37", "--eps", "1e-3", "--seed", "1"]);
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    assert!(row[4].parse::<f64>().unwrap() <= 1e-3);
    assert!(row[5].parse::<usize>().unwrap() <= 11);
}

#[test]
fn shatter_points_without_check_are_jsonl() {
    let text = run_ok(&["shatter", "--construct", "thm3", "--T", "9", "--basis", "monomial"]);
    let recs: Vec<serde_json::Value> = text.lines().skip(1).map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 3);
}
