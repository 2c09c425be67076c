//! End-to-end tests of the command-line surface: exit codes, format
//! stability, the JSON round-trip invariant, config layering, and the
//! deliberate-violation modes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeta-region"))
        .args(args)
        .env_remove("ZETA_REGION_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

#[test]
fn constants_defaults_all_within_tolerance() {
    let out = run(&["constants"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("result: ok"));
    assert!(text.contains("M(0)"));
    assert!(text.contains("147.841120261"));
    assert!(text.contains("521.63246656"));
}

#[test]
fn constants_off_reference_angle_is_flagged_not_compared() {
    let out = run(&["constants", "--theta", "1.85362"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("no golden"));
    assert!(!text.contains("147.84112 "), "reference column should be empty");
}

#[test]
fn constants_json_round_trips_byte_identically() {
    let out = run(&["constants", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let raw = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&raw).expect("valid json");
    let mut reserialized = serde_json::to_string_pretty(&value).expect("serializes");
    reserialized.push('\n');
    assert_eq!(raw, reserialized, "parse + re-serialize must reproduce the bytes");
    assert!(raw.contains("\"provenance\""));
}

#[test]
fn replay_misses_exactly_the_documented_columns() {
    let out = run(&["iterate"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(1), "replay must fail honestly: {text}");
    assert!(text.contains("5.70175289"), "terminal constant row missing");
    let notes: Vec<&str> = text.lines().filter(|l| l.contains(" outside ")).collect();
    assert_eq!(notes.len(), 18, "three columns over six steps: {text}");
    for note in notes {
        assert!(
            note.contains("alpha2") || note.contains("alpha3") || note.contains("C(eta0)"),
            "unexpected mismatch: {note}"
        );
    }
}

#[test]
fn auto_schedule_converges_to_the_published_constant() {
    let out = run(&["iterate", "--schedule", "auto"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("converged in"));
    assert!(text.contains("result: ok"));
}

#[test]
fn classical_polynomial_lands_on_its_own_constant() {
    let out = run(&["iterate", "--schedule", "auto", "--polynomial", "rs", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let records = v["records"].as_array().unwrap();
    let last = records.last().unwrap();
    let r0 = last["R0_out"].as_f64().unwrap();
    assert!((r0 - 5.70216).abs() < 1e-4, "terminal R0 = {r0}");
}

#[test]
fn csv_header_matches_the_record_fields_and_is_stable() {
    let first = run(&["iterate", "--format", "csv"]);
    let text = stdout(&first);
    assert_eq!(
        text.lines().next().unwrap(),
        "step,R_in,r_in,eta0,kappa,delta,alpha1,alpha2,alpha3,C_at_eta0,R0_out"
    );
    assert_eq!(text.lines().count(), 7, "header plus six data rows");
    assert_eq!(first.status.code(), Some(1));
    assert!(stderr(&first).contains("alpha2"), "notes go to stderr in csv");
    let second = run(&["iterate", "--format", "csv"]);
    assert_eq!(first.stdout, second.stdout, "csv output must be byte-stable");
}

#[test]
fn text_output_is_byte_stable_across_runs() {
    let a = run(&["constants"]);
    let b = run(&["constants"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["constants", "--format", "json"]);
    let b = run(&["constants", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn single_column_angle_replay() {
    let out = run(&["optimize-theta", "--steps", "1"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    let rows = text.lines().filter(|l| l.trim_start().starts_with(char::is_numeric)).count();
    assert_eq!(rows, 1, "{text}");
    assert!(text.contains("1.8538"), "optimal angle of the first column: {text}");
}

#[test]
fn angle_replay_rejects_columns_beyond_the_table() {
    let out = run(&["optimize-theta", "--steps", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("7 columns"), "{}", stderr(&out));
}

#[test]
fn verify_defaults_pass_every_suite() {
    let out = run(&["verify"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.matches("  yes  ").count(), 8, "{text}");
    assert!(text.contains("result: ok"));
}

#[test]
fn forced_discount_fails_the_pairing_with_a_witness() {
    let out = run(&["verify", "--inject-kappa", "0.6"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(1), "{text}");
    assert!(text.contains("pair positivity fails at (beta, y)"), "{text}");
    assert!(text.contains("discount forced to 0.6"), "{text}");
}

#[test]
fn verify_off_reference_angle_recomputes_without_goldens() {
    let out = run(&["verify", "--theta", "1.6"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("no golden"), "{text}");
    assert!(text.contains("result: ok"), "{text}");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# comment\nschedule = auto\nformat = csv\n").unwrap();
    let out = run(&["iterate", "--config", path.to_str().unwrap(), "--format", "text"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.starts_with("zeta-region iterate"), "flag must win over file: {text}");
    assert!(text.contains("converged in"), "schedule from file must apply: {text}");
}

#[test]
fn config_file_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "junk = 1\n").unwrap();
    let out = run(&["constants", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown config key"));
}

#[test]
fn invalid_overrides_are_rejected_before_any_computation() {
    let out = run(&["iterate", "--theta", "3.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("outside the open interval"));

    let out = run(&["iterate", "--r-init", "4.0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "--inject-kappa", "1.5"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["constants", "--quad-abs-tol", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_dir_override_writes_an_identical_copy() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_zeta-region"))
        .args(["constants", "--format", "json"])
        .env("ZETA_REGION_OUT_DIR", dir.path())
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let copy = std::fs::read(dir.path().join("constants.json")).expect("copy written");
    assert_eq!(copy, out.stdout);
}

#[test]
fn custom_polynomial_runs_without_references() {
    let out = run(&["iterate", "--schedule", "auto", "--polynomial", "custom:0.9,0.3"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("no golden"), "{text}");
}
