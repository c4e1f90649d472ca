//! End-to-end runs of the command-line binary: process exit codes, file
//! round trips, and determinism under a pinned seed.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twinslit"))
}

fn run_args(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("reading {path:?}: {e}"))
}

#[test]
fn simulate_then_fit_recovers_the_slit_geometry() {
    let dir = tempfile::tempdir().unwrap();
    let scan = dir.path().join("scan.csv");
    let out = run_args(&["simulate", "--seed", "5", "--out", scan.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = read(&scan);
    assert!(csv.starts_with("position_mm,"), "header missing:\n{csv}");
    assert_eq!(csv.lines().count(), 342, "341 points plus a header");

    let report = dir.path().join("report.txt");
    let out = run_args(&["fit", scan.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = read(&report);
    assert!(text.contains("slit_separation_mm = 0.6"), "report:\n{text}");
    assert!(text.contains("slit_width_mm = 0.1"), "report:\n{text}");
}

#[test]
fn reruns_with_one_seed_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let c = dir.path().join("c.csv");
    assert_eq!(code(&run_args(&["simulate", "--seed", "99", "--out", a.to_str().unwrap()])), 0);
    assert_eq!(code(&run_args(&["simulate", "--seed", "99", "--out", b.to_str().unwrap()])), 0);
    assert_eq!(code(&run_args(&["simulate", "--seed", "100", "--out", c.to_str().unwrap()])), 0);
    assert_eq!(read(&a), read(&b), "same seed must reproduce the same bytes");
    assert_ne!(read(&a), read(&c), "different seeds must differ");
}

#[test]
fn exit_codes_separate_input_errors_from_numeric_failures() {
    let dir = tempfile::tempdir().unwrap();

    let ok = dir.path().join("pattern.csv");
    assert_eq!(code(&run_args(&["pattern", "--out", ok.to_str().unwrap()])), 0);

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "visibility = 2.0\n").unwrap();
    let out = run_args(&["simulate", "--config", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(!out.stderr.is_empty(), "validation errors should explain themselves");

    let missing = dir.path().join("missing.csv");
    assert_eq!(code(&run_args(&["fit", missing.to_str().unwrap()])), 1);

    assert_eq!(code(&run_args(&["--frobnicate"])), 1);

    // a counting run too short to register a single gate cannot produce an
    // estimate and must exit with the numeric failure code
    let short = dir.path().join("short.conf");
    std::fs::write(&short, "g2_total_s = 1e-9\n").unwrap();
    let out = run_args(&["g2", "--config", short.to_str().unwrap()]);
    assert_eq!(code(&out), 2, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(!out.stderr.is_empty());
}

#[test]
fn pattern_single_slit_override_emits_the_wide_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("single.csv");
    let out = run_args(&[
        "pattern",
        "--model",
        "single",
        "--b-mm",
        "0.285",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let rows: Vec<(f64, f64)> = read(&path)
        .lines()
        .skip(1)
        .map(|l| {
            let (x, y) = l.split_once(',').expect("two columns");
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 341);
    let peak = rows.iter().map(|r| r.1).fold(0.0f64, f64::max);
    let side = rows
        .windows(3)
        .filter_map(|w| (w[1].0 > 1.0 && w[1].1 > w[0].1 && w[1].1 > w[2].1).then_some(w[1]))
        .next()
        .expect("a local maximum right of the central lobe");
    let ratio = side.1 / peak;
    assert!(
        (5.8..=6.6).contains(&side.0) && (0.040..=0.055).contains(&ratio),
        "first side maximum at {} mm with ratio {ratio}",
        side.0
    );
}

#[test]
fn poissonian_g2_sits_at_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.txt");
    let out = run_args(&["g2", "--poissonian", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = read(&path);
    let first = text.lines().next().expect("g2 line");
    let value: f64 = first
        .split_whitespace()
        .nth(2)
        .expect("g2 = <value> ...")
        .parse()
        .expect("numeric g2");
    assert!((value - 1.0).abs() <= 0.15, "poissonian g2 came out {value}");
    assert!(text.contains("gated_triples"), "output:\n{text}");
}

#[test]
fn printed_defaults_parse_back_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_args(&["--print-defaults"]);
    assert_eq!(code(&out), 0);
    let conf = dir.path().join("defaults.conf");
    std::fs::write(&conf, &out.stdout).unwrap();

    let with = dir.path().join("with.csv");
    let without = dir.path().join("without.csv");
    let out = run_args(&["pattern", "--config", conf.to_str().unwrap(), "--out", with.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&run_args(&["pattern", "--out", without.to_str().unwrap()])), 0);
    assert_eq!(read(&with), read(&without), "defaults file must change nothing");
}

#[test]
fn plot_renders_ascii_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let scan = dir.path().join("scan.csv");
    assert_eq!(code(&run_args(&["simulate", "--seed", "8", "--out", scan.to_str().unwrap()])), 0);

    let txt = dir.path().join("plot.txt");
    assert_eq!(code(&run_args(&["plot", scan.to_str().unwrap(), "--out", txt.to_str().unwrap()])), 0);
    assert!(read(&txt).contains("coincidences per point"));

    let svg = dir.path().join("plot.svg");
    assert_eq!(code(&run_args(&["plot", scan.to_str().unwrap(), "--out", svg.to_str().unwrap()])), 0);
    let body = read(&svg);
    assert!(body.starts_with("<svg") && body.trim_end().ends_with("</svg>"), "svg:\n{body}");
}

#[test]
fn eraser_table_follows_the_analyzer_law() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eraser.csv");
    let out = run_args(&["eraser", "--step-deg", "45", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let mut at = std::collections::HashMap::new();
    for line in read(&path).lines().skip(1) {
        let (deg, v) = line.split_once(',').expect("two columns");
        at.insert(deg.parse::<f64>().unwrap() as i64, v.parse::<f64>().unwrap());
    }
    assert!((at[&0] - 1.0).abs() < 1e-9, "vertical analyzer restores the fringes");
    assert!(at[&45].abs() < 1e-9 && at[&-45].abs() < 1e-9, "diagonal analyzers erase them");
    assert!((at[&90] - 1.0).abs() < 1e-9);
}
