use std::path::Path;
use std::process::{Command, Output};

fn palwidth(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_palwidth"));
    cmd.args(args).env_remove("PALWIDTH_CACHE");
    if let Some(dir) = cache {
        cmd.env("PALWIDTH_CACHE", dir);
    }
    cmd.output().expect("spawn palwidth")
}

fn stdout(args: &[&str]) -> String {
    let out = palwidth(args, None);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn normalize_examples() {
    let q = stdout(&["normalize", "--rank", "3", "--class", "2", "--quotient", "y3 y2 y3 y1 y2 y1"]);
    assert_eq!(q, "normal_form: z2.1 z3.2\ncode: 40\nbits: 000101\n");
    assert_eq!(stdout(&["normalize", "--rank", "2", "--class", "2", "x2 x1"]), "x1 x2 z2.1\n");
    assert_eq!(stdout(&["normalize", "--rank", "2", "--class", "1", "x1 x1^-1"]), "e\n");
}

#[test]
fn parse_errors_exit_nonzero() {
    let out = palwidth(&["normalize", "--rank", "2", "x1 ^"], None);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error at byte"));
    let out = palwidth(&["normalize", "--rank", "2", "x3"], None);
    assert!(!out.status.success());
}

#[test]
fn width_and_length() {
    assert_eq!(stdout(&["width", "--rank", "4", "--quotient"]), "6\n");
    let text = stdout(&["length", "--rank", "3", "--quotient", "z2.1 z3.1 z3.2"]);
    assert!(text.contains("length: 4\n"), "{text}");
    let witness = text.lines().find_map(|l| l.strip_prefix("witness: ")).unwrap();
    assert_eq!(witness.split(" | ").count(), 4);
}

#[test]
fn rank_cap_reports_limit() {
    let out = palwidth(&["width", "--rank", "7", "--quotient"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit 6"));
    let out = palwidth(&["width", "--rank", "21", "--class", "1", "--quotient"], None);
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit 20"));
}

#[test]
fn search_commands_need_quotient() {
    let out = palwidth(&["width", "--rank", "3"], None);
    assert!(!out.status.success());
}

#[test]
fn certify_rank_ten() {
    let out = palwidth(&["certify", "--rank", "10", "--format", "json"], None);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1 + 10 + 45 + 1);
    assert!(rows.iter().all(|r| r["holds"] == true));
}

#[test]
fn table_has_every_element() {
    let csv = stdout(&["table", "--rank", "3", "--quotient", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "code,alpha,beta,length,witness");
    assert_eq!(lines.len(), 65);
    let fours: Vec<_> = lines[1..].iter().filter(|l| l.split(',').nth(3) == Some("4")).collect();
    assert_eq!(fours.len(), 1);
    assert!(fours[0].starts_with("56,000,111,4,"));
}

#[test]
fn json_and_csv_carry_the_same_cells() {
    let args = ["spectrum", "--rank", "3", "--quotient"];
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&[&args[..], &["--format", "json"]].concat())).unwrap();
    let csv = stdout(&[&args[..], &["--format", "csv"]].concat());
    let mut rows = csv.lines();
    assert_eq!(rows.next(), Some("length,count"));
    let from_csv: Vec<(u64, u64)> = rows
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    let from_json: Vec<(u64, u64)> = json
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["length"].as_u64().unwrap(), r["count"].as_u64().unwrap()))
        .collect();
    assert_eq!(from_csv, from_json);
    assert_eq!(from_json.iter().map(|r| r.1).sum::<u64>(), 64);
}

#[test]
fn cached_and_cold_runs_match() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["table", "--rank", "3", "--quotient", "--format", "csv"][..],
        &["spectrum", "--rank", "4", "--quotient"][..],
        &["length", "--rank", "4", "--quotient", "z2.1 z3.2 z4.1"][..],
    ] {
        let cold = palwidth(args, None);
        let first = palwidth(args, Some(dir.path()));
        let warm = palwidth(args, Some(dir.path()));
        assert!(cold.status.success() && first.status.success() && warm.status.success());
        assert_eq!(cold.stdout, first.stdout);
        assert_eq!(cold.stdout, warm.stdout);
    }
    assert!(dir.path().join("pwt1-rank3-class2.bin").exists());
    assert!(dir.path().join("pwt1-rank4-class2.bin").exists());

    // --cache overrides the environment
    let other = tempfile::tempdir().unwrap();
    let out = palwidth(
        &["width", "--rank", "2", "--quotient", "--cache", other.path().to_str().unwrap()],
        Some(dir.path()),
    );
    assert_eq!(out.stdout, b"2\n");
    assert!(other.path().join("pwt1-rank2-class2.bin").exists());
}

#[test]
fn identities_report_is_deterministic() {
    let args = ["identities", "--trials", "50", "--seed", "7", "--format", "json"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for r in v.as_array().unwrap() {
        assert_eq!(r["trials"], 50);
        assert_eq!(r["failure_count"], 0);
    }
}

#[test]
fn palindrome_codes() {
    let csv = stdout(&["palindromes", "--rank", "3", "--quotient", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "code");
    // identity plus 3 pivots × 4 choices
    assert_eq!(lines.len() - 1, 1 + 3 * 4);
    assert_eq!(lines[1], "0");
}

#[test]
fn decompose_verifies() {
    let text = stdout(&["decompose", "--rank", "3", "--quotient", "y1 y2 y3 y1 y2"]);
    assert!(text.contains("verified: true"), "{text}");
    let text = stdout(&["decompose", "--rank", "2", "x2^3 x1^-2"]);
    assert!(text.contains("verified: true"), "{text}");
}
