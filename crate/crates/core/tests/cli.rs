use std::path::PathBuf;
use std::process::Command;

use qschubert::cli::format::{parse_machine, reports_from_records, MachineRecord};
use qschubert::strata::stratification_report;
use qschubert::twist::{Bicharacter, RelationsLattice};
use qschubert::weyl::WeylGroup;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn qschubert(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qschubert")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

#[test]
fn golden_machine_a2_w0() {
    let (code, out, _) = qschubert(&["strata", "--type", "A2", "--word", "1 2 1", "--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("a2_w0_strata.golden"));
}

#[test]
fn golden_machine_a1() {
    let (code, out, _) = qschubert(&["strata", "--type", "A1", "--word", "1", "--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("a1_strata.golden"));
}

#[test]
fn golden_machine_twisted() {
    let cfg = fixture("a2_p_squared.toml");
    let (code, out, _) = qschubert(&["strata", "--cocycle", cfg.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("a2_p_squared_strata.golden"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let base = ["strata", "--type", "B3", "--w0", "--format", "machine"];
    let (_, one, _) = qschubert(&[&base[..], &["--jobs", "1"]].concat());
    let (_, four, _) = qschubert(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one, four);
    let (_, dot1, _) = qschubert(&["strata", "--type", "A3", "--w0", "--format", "dot", "--jobs", "1"]);
    let (_, dot4, _) = qschubert(&["strata", "--type", "A3", "--w0", "--format", "dot", "--jobs", "4"]);
    assert_eq!(dot1, dot4);
}

#[test]
fn machine_round_trip_matches_memory() {
    let g = WeylGroup::of_type("B2").unwrap();
    let w = g.longest_element();
    let r = Bicharacter::trivial(2, &g.support(&w), 1);
    let reports = stratification_report(&g, &w, &r, &RelationsLattice::generic(1)).unwrap();
    let (_, out, _) = qschubert(&["strata", "--type", "B2", "--w0", "--format", "machine"]);
    let records = parse_machine(&out).unwrap();
    let expected: Vec<MachineRecord> = reports.iter().map(MachineRecord::from).collect();
    assert_eq!(records, expected);
    let rebuilt = reports_from_records(&g, &g.reduced_word(&w), &records).unwrap();
    assert_eq!(rebuilt, reports);
}

#[test]
fn roots_g2_lists_six() {
    let (code, out, _) = qschubert(&["roots", "--type", "G2", "--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("root\t")).count(), 6);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.txt");
    let (code, out, _) = qschubert(&[
        "strata", "--type", "A2", "--word", "1 2 1", "--format", "machine", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), golden("a2_w0_strata.golden"));
}

#[test]
fn check_reports_and_exits_zero() {
    let (code, out, _) = qschubert(&["check", "--type", "G2", "--w0", "--format", "machine"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().any(|l| l.starts_with("ok\tcatenarity")));
    assert!(!out.contains("FAIL"));
}

#[test]
fn errors_exit_two_with_diagnostics() {
    let (code, _, err) = qschubert(&["strata", "--type", "A2", "--word", "1 1"]);
    assert_eq!(code, 2);
    assert!(err.contains("reduced"), "{err}");

    let (code, _, err) = qschubert(&["strata", "--type", "A2", "--word", "1 2", "--y", "2 1"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "type = \"A2\"\nword = \"1 2\"\nr_table = [[[0], [1]], [[1], [0]]]\n").unwrap();
    let (code, _, err) = qschubert(&["strata", "--cocycle", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}
