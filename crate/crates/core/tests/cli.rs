//! The binary end to end: exit codes, files and configuration layering.

use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-fractal"))
        .args(args)
        .env("PADIC_FRACTAL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn certify_reports_the_binary_bound() {
    let o = bin(&["certify", "--p", "2", "--m", "0", "--s", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.contains(".delta_lower")).unwrap();
    let fields: Vec<&str> = line.split('\t').collect();
    assert_eq!(fields.len(), 4);
    assert!((fields[1].parse::<f64>().unwrap() - 8.0 / 7.0).abs() < 1e-12);
    assert!(text.contains("\tcertified-embedding\t"));
}

#[test]
fn uncertified_parameters_exit_one() {
    let o = bin(&["certify", "--p", "2", "--m", "0", "--s", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\tunknown\t"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["certify", "--s", "1.5"][..],
        &["certify", "--m", "seven"],
        &["frobnicate"],
        &["verify"],
        &["verify", "--suite", "nope"],
        &["render2d", "--preset", "fig9"],
        &["orbit", "--m", "0"],
    ] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["--version"]).status.code(), Some(0));
}

#[test]
fn render2d_writes_a_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cantor.pgm");
    let o = bin(&["render2d", "--preset", "fig1-1-cantor", "--depth", "16", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.starts_with(b"P5\n1024 "));
    assert!(bytes.iter().skip(20).any(|&b| b == 255));
}

#[test]
fn render_formats_follow_the_extension() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("z4.svg");
    assert_eq!(bin(&["render2d", "--preset", "fig1-4-z4", "--depth", "4", "--out", svg.to_str().unwrap()]).status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<circle"));
    let csv = dir.path().join("t3.csv");
    let o = bin(&["render3d", "--preset", "fig2b-t3", "--depth", "3", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("x,y,z,label"));
    assert_eq!(text.lines().count(), 1 + 81 * 27);
}

#[test]
fn verify_scaling_suite() {
    let o = bin(&["verify", "--suite", "scaling", "--p", "3", "--s", "0.25", "--m", "inf", "--depth", "24"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.contains("max_residual") && l.ends_with("\tPASS")));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, br#"{"s":[0.25,0.1],"m":"inf","p":3}"#).unwrap();
    let o = bin(&["verify", "--config", cfg.to_str().unwrap(), "--suite", "scaling", "--depth", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("scaling.p3.minf.s0.25+0.1i"));
    let o = bin(&["verify", "--config", cfg.to_str().unwrap(), "--p", "5", "--suite", "scaling", "--depth", "12"]);
    assert!(stdout(&o).contains("scaling.p5.minf"));

    std::fs::write(&cfg, br#"{"p":2,"s":1.5}"#).unwrap();
    let o = bin(&["certify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`s`"));
    std::fs::write(&cfg, br#"{"p":2,"s":0.3,"colour":1}"#).unwrap();
    assert_eq!(bin(&["certify", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&cfg, b"{not json").unwrap();
    assert_eq!(bin(&["certify", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reports_are_also_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.tsv");
    let o = bin(&["moments", "--p", "2", "--s", "0.3", "--m", "inf", "--depth", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), o.stdout);
}

#[test]
fn orbit_csv_and_presets_listing() {
    let o = bin(&["orbit", "--preset", "fig2b-t3", "--t", "0.5", "--steps", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 52);
    assert!(String::from_utf8_lossy(&o.stderr).contains("max_divergence"));
    let o = bin(&["presets"]);
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_padic-fractal"))
        .args(["presets"])
        .env("PADIC_FRACTAL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
