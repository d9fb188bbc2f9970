//! End-to-end checks of the command-line interface: exit codes, output
//! determinism across runs and worker counts, and report schemas.

use std::process::{Command, Output};

fn cwenum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwenum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn field_info_reports_degrees_and_dimensions() {
    let out = cwenum(&["field-info", "--p", "3", "--m", "2", "--l", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("degree 1"), "{text}");
    assert!(text.contains("dim C1 = 1, dim C2 = 3"), "{text}");

    let out = cwenum(&["field-info", "--p", "3", "--m", "3", "--l", "1"]);
    assert!(stdout(&out).contains("dim C1 = 3"));
}

#[test]
fn usage_errors_exit_2() {
    let out = cwenum(&["field-info", "--p", "4", "--m", "2", "--l", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an odd prime"));

    // l out of range.
    let out = cwenum(&["cwe", "--code", "c1", "--p", "3", "--m", "2", "--l", "2"]);
    assert_eq!(out.status.code(), Some(2));

    // Missing required flag is a clap usage error.
    let out = cwenum(&["cwe", "--p", "3", "--m", "2", "--l", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // Non-primitive polynomial override.
    let out = cwenum(&[
        "field-info", "--p", "3", "--m", "2", "--l", "1", "--poly", "1,0,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = cwenum(&[
        "cwe", "--code", "c2", "--p", "3", "--m", "4", "--l", "1", "--method", "brute",
        "--budget", "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sum_dist_matches_pinned_distribution() {
    let out = cwenum(&["sum-dist", "--p", "3", "--m", "2", "--l", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("-3^1: 6, +3^2: 2"), "{text}");
    assert!(text.contains("direct == closed: yes"), "{text}");
}

#[test]
fn cwe_both_methods_match_golden_table() {
    let out = cwenum(&[
        "cwe", "--code", "c2", "--p", "3", "--m", "3", "--l", "1", "--method", "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("C2 [26, 6, 12]"), "{text}");
    assert!(
        text.contains("156*w0^14*w1^6*w2^6") && text.contains("78*w0^2*w1^12*w2^12"),
        "{text}"
    );
    assert!(text.contains("closed == brute: yes"), "{text}");
}

#[test]
fn verify_exits_zero_on_match() {
    let out = cwenum(&["verify", "--code", "c1", "--p", "3", "--m", "6", "--l", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("match"));
}

#[test]
fn json_output_is_deterministic_across_runs_and_workers() {
    let run = |workers: &str| {
        let out = cwenum(&[
            "verify", "--code", "c2", "--p", "3", "--m", "3", "--l", "1", "--format", "json",
            "--workers", workers,
        ]);
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let first = run("1");
    let second = run("1");
    let parallel = run("3");
    assert_eq!(first, second, "two identical runs must agree byte for byte");
    assert_eq!(first, parallel, "worker count must not change the output");
}

#[test]
fn json_report_schema() {
    let out = cwenum(&[
        "cwe", "--code", "c1", "--p", "3", "--m", "2", "--l", "1", "--format", "json",
    ]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["field"]["p"], 3);
    assert_eq!(json["field"]["prim_poly"], serde_json::json!([2, 1, 1]));
    assert_eq!(json["closed"]["code"], "C1");
    assert_eq!(json["closed"]["dim"], 1);
    assert_eq!(
        json["closed"]["entries"][0]["composition"],
        serde_json::json!([8, 0, 0])
    );
    assert_eq!(json["weights"]["nonzero"][0]["weight"], 0);
    assert_eq!(json["min_distance"], 8);

    let out = cwenum(&[
        "sum-dist", "--p", "3", "--m", "2", "--l", "1", "--format", "json",
    ]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["p", "m", "l", "d", "s", "entries", "total"] {
        assert!(
            json["closed"].get(key).is_some(),
            "distribution key {key} missing"
        );
    }
    assert_eq!(json["closed"]["entries"][0]["sign"], -1);
    assert_eq!(json["closed"]["entries"][0]["imaginary"], false);
    assert_eq!(json["closed"]["entries"][0]["half_exp"], 2);
    assert_eq!(json["closed"]["entries"][0]["freq"], 6);
    assert_eq!(json["matched"], true);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("cwenum-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let _ = std::fs::remove_file(&path);
    let out = cwenum(&[
        "field-info", "--p", "5", "--m", "2", "--l", "1", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["field"]["p"], 5);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn sweep_small_grid_matches() {
    let out = cwenum(&["sweep", "--p", "3", "--m", "2-3", "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // 2 degrees: m=2 has l=1, m=3 has l in {1,2}; two codes each.
    assert!(text.contains("sweep: 6 combos, 6 matched, 0 skipped, 0 mismatched"), "{text}");

    // A tiny budget skips the C2 sweeps instead of failing.
    let out = cwenum(&[
        "sweep", "--p", "3", "--m", "3", "--budget", "2000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("skipped (budget)"), "{text}");
}
