use std::process::{Command, Output};

use hyperscatter_cli::config::{Command as Cmd, OutputFormat, Suite};
use hyperscatter_cli::parse_args;
use num_complex::Complex64;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperscatter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn parses_lists_sorted_and_deduplicated() {
    let cfg = parse_args(["hyperscatter", "phi", "--space", "h2", "--lambda", "1+i,-0.5,1+i", "--t", "2,1"]).unwrap();
    assert_eq!(cfg.format, OutputFormat::Csv);
    assert_eq!(
        cfg.command,
        Cmd::Phi {
            lambda: vec![Complex64::new(-0.5, 0.0), Complex64::new(1.0, 1.0)],
            t: vec![1.0, 2.0],
        }
    );
}

#[test]
fn verify_all_with_space_filters_suites() {
    let cfg = parse_args(["hyperscatter", "verify", "--space", "h3", "--all"]).unwrap();
    let Cmd::Verify { suites } = cfg.command else { panic!() };
    assert!(suites.contains(&Suite::H3));
    assert!(!suites.contains(&Suite::Rank));
    assert!(suites.contains(&Suite::Connection));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["cfun", "--space", "h0", "--lambda", "1"][..],
        &["cfun", "--space", "h2", "--lambda", "one"],
        &["scattering", "--space", "h3", "--zeta", "1", "--mode", "1"],
        &["verify", "--space", "h3", "--suite", "rank"],
        &["verify"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn cfun_is_one_at_rho() {
    let o = run(&["cfun", "--space", "h2", "--lambda", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[4], "ok");
    assert!((row[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-14);
    assert!(row[3].parse::<f64>().unwrap().abs() < 1e-14);
}

#[test]
fn h3_has_no_resonances() {
    let o = run(&["resonances", "--space", "h3", "--count", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn pole_rows_fail_with_exit_1() {
    let o = run(&["kernel", "--space", "h2", "--zeta", "0.5i,1", "--t", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.contains("error: pole")));
    assert!(out.lines().any(|l| l.ends_with(",ok")));
}

#[test]
fn json_matches_csv() {
    let csv = stdout(&run(&["resonances", "--space", "h2", "--count", "3"]));
    let json = stdout(&run(&["resonances", "--space", "h2", "--count", "3", "--format", "json"]));
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["command"], "resonances");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for (line, row) in csv.lines().skip(1).zip(rows) {
        let im: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(row[2].as_f64().unwrap(), im);
    }
}

#[test]
fn verify_connection_on_h2_passes() {
    let o = run(&["verify", "--space", "h2", "--suite", "connection"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 1 + 25 * 4);
}

#[test]
fn runs_are_byte_identical() {
    let args = ["verify", "--suite", "quadrature"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["scattering", "--space", "h2", "--zeta", "0.8,1+0.3i", "--mode", "-2,0,3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("hyperscatter-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.csv");
    let o = run(&["cfun", "--space", "oh2", "--lambda", "5.5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("lambda_re,"));
    std::fs::remove_dir_all(dir).unwrap();
}
