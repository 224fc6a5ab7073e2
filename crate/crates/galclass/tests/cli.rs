//! End-to-end checks of the `galclass` binary: exit codes, report shapes,
//! and byte-level determinism of repeated invocations.

use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_galclass")
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn rank_prints_the_modulus() {
    let out = run(&["rank", "--family", "A4", "--prime", "7"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("A4 7 3 uniform 3:1"), "{stdout}");
}

#[test]
fn group_subcommand_reports_structure() {
    let out = run(&["group", "--family", "G16_8"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("order 16"), "{stdout}");
    assert!(stdout.contains("classes 10"), "{stdout}");
    assert!(stdout.contains("commutator order 2"), "{stdout}");
}

#[test]
fn serialize_round_trips_through_a_file() {
    let out = run(&["group", "--family", "D4", "--serialize"]);
    assert!(out.status.success());
    let path = std::env::temp_dir().join("galclass_cli_d4.cay");
    std::fs::write(&path, &out.stdout).unwrap();
    let reread = run(&["group", "--table", path.to_str().unwrap()]);
    assert!(reread.status.success());
    let stdout = String::from_utf8(reread.stdout).unwrap();
    assert!(stdout.contains("order 8"), "{stdout}");
    assert!(stdout.contains("group D4"), "{stdout}");
}

#[test]
fn verify_table1_is_clean_and_deterministic() {
    let a = run(&["verify", "--data", &data("table1.csv")]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(&["verify", "--data", &data("table1.csv")]);
    assert_eq!(a.stdout, b.stdout, "output must be byte-identical");
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("20 records, 0 failing"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn verify_louboutin_is_clean() {
    let out = run(&["verify", "--data", &data("louboutin.csv")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("7 records, 0 failing"), "{text}");
}

#[test]
fn verify_fails_on_a_violating_record() {
    // rank 1 at p = 3 against modulus 2 must FAIL and exit 1
    let path = std::env::temp_dir().join("galclass_cli_bad.csv");
    std::fs::write(
        &path,
        "label,degree,disc,invariants,context\nbad,5,12345,3,D5-subfield\n",
    )
    .unwrap();
    let out = run(&["verify", "--data", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"), "{text}");
}

#[test]
fn malformed_data_is_a_usage_error() {
    let path = std::env::temp_dir().join("galclass_cli_malformed.csv");
    std::fs::write(
        &path,
        "label,degree,disc,invariants,context\nbad,5,12345,,D5-subfield\n",
    )
    .unwrap();
    let out = run(&["verify", "--data", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table14_small_sweep_matches() {
    let out = run(&["table14", "--pmax", "13", "--jobs", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("0 mismatches\n"), "{text}");
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn kondo_cross_check_passes() {
    let out = run(&["kondo", "--data", &data("table1.csv")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# all_pass true"), "{text}");
}

#[test]
fn chartable_is_deterministic_across_methods() {
    let fam = run(&["chartable", "--family", "H8", "--prime", "3"]);
    let gen = run(&["chartable", "--family", "H8", "--prime", "3", "--general"]);
    assert!(fam.status.success());
    assert!(gen.status.success());
    assert_eq!(fam.stdout, gen.stdout, "family and general tables agree");
    let text = String::from_utf8(fam.stdout).unwrap();
    assert!(text.starts_with("H8 3 2\n"), "{text}");
}

#[test]
fn scan_subcommands_succeed() {
    let out = run(&["scan", "--kind", "prop16"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("EXTREMAL 2 WITNESS"), "{text}");

    let out = run(&["scan", "--kind", "v4", "--count", "6", "--seed", "1", "--jobs", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("PASS").count(), 18); // 6 offsets x 3 primes
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["rank", "--prime", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--data", "/nonexistent/file.csv"]);
    assert_eq!(out.status.code(), Some(2));
}
