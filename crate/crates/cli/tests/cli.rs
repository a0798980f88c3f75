use std::path::{Path, PathBuf};
use std::process::Command;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let dir = fixtures();
    let mut argv = vec!["isobar".to_string(), "--fixtures".to_string(), dir.display().to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = isobar_cli::run(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn json(r: &Run) -> serde_json::Value {
    serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("not JSON ({e}): {}", r.out))
}

#[test]
fn identity_suites_exit_zero() {
    let r = run(&["identity", "verify", "--family", "gl3", "--m-from", "3", "--m-to", "12"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("10 of 10 passed"));
    let r = run(&["identity", "verify", "--family", "gl3-adjoint", "--format", "json"]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["passed"], true);
    let r = run(&["identity", "verify", "--family", "gl4", "--m-from", "2", "--m-to", "5"]);
    assert_eq!(r.code, 2);
}

#[test]
fn schur_subcommands() {
    let r = run(&["schur", "expand", "--lambda", "2,1", "--n", "3"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("dimension 8"), "{}", r.out);
    let a = run(&["schur", "expand", "--lambda", "3,1", "--n", "3", "--format", "json"]);
    let b = run(&["schur", "expand", "--lambda", "3,1", "--n", "3", "--format", "json", "--algorithm", "tableau"]);
    assert_eq!(json(&a)["terms"], json(&b)["terms"]);
    let r = run(&["schur", "product", "--lambda", "2", "--mu", "1,1", "--format", "json"]);
    assert_eq!(json(&r)["terms"], serde_json::json!({ "3,1": 1, "2,1,1": 1 }));
    let r = run(&["schur", "product", "--lambda", "2", "--mu", "1,1", "--n", "2"]);
    assert_eq!(r.out.trim(), "S(2) * S(1,1) = S(3,1)");
    assert_eq!(run(&["schur", "expand", "--lambda", "1,2", "--n", "3"]).code, 2);
}

#[test]
fn bounds_row_and_scan() {
    let r = run(&["bounds", "row", "--case", "gl3", "--k", "19"]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["effective_bound"], 2);
    let r = run(&["bounds", "row", "--case", "gl4", "--k", "15"]);
    let v = json(&r);
    assert_eq!((v["generic_bound"].as_u64(), v["enhanced_bound"].as_u64()), (Some(7), Some(6)));
    assert_eq!(run(&["bounds", "row", "--case", "gl4", "--k", "2"]).code, 2);

    let r = run(&["bounds", "scan", "--case", "gl4", "--k-max", "200", "--format", "csv"]);
    assert_eq!(r.code, 0);
    let mut reader = csv::Reader::from_reader(r.out.as_bytes());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(headers, ["k", "degree", "generic_denom", "enhanced_denom", "generic", "enhanced", "effective", "source"]);
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 198);
    let k15 = records.iter().find(|r| &r[0] == "15").unwrap();
    assert_eq!((&k15[4], &k15[5], &k15[6]), ("7", "6", "6"));
    assert!(r.err.lines().filter(|l| l.starts_with("PASS")).count() == 4);

    let r = run(&["bounds", "scan", "--case", "gl3", "--k-max", "10", "--format", "json"]);
    let v = json(&r);
    assert_eq!(v["claims"][2]["scanned"], false);
    let r = run(&["bounds", "scan", "--case", "gl3", "--k-max", "30", "--format", "md"]);
    assert!(r.out.starts_with("| k |"));
    assert_eq!(r.out.lines().count(), 2 + 29);
    assert_eq!(run(&["bounds", "scan", "--case", "gl3", "--k-max", "30", "--format", "text"]).code, 2);
}

#[test]
fn sympow_decompose_v1080() {
    let path = fixtures().join("v1080.tbl");
    let r = run(&["sympow", "decompose", "--group", path.to_str().unwrap(), "--char", "2", "--k", "4"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r);
    assert_eq!(v["n"], 2);
    assert_eq!(v["decomposition"], "χ8 + χ13");
    let chars: Vec<u64> = v["constituents"].as_array().unwrap().iter().map(|c| c["character"].as_u64().unwrap()).collect();
    assert_eq!(chars, [8, 13]);
    assert_eq!(v["multiplicities"].as_array().unwrap().len(), 17);
    assert!(v.get("elapsed_ms").is_none());

    let r = run(&["--timing", "sympow", "decompose", "--group", "a4", "--char", "4", "--k", "2"]);
    assert!(json(&r)["elapsed_ms"].is_u64());
    assert!(r.err.contains("elapsed"));

    let r = run(&["sympow", "decompose", "--group", "a4", "--char", "4", "--k", "3", "--exterior", "--format", "text"]);
    assert_eq!(r.out.trim(), "A4: Λ^3(χ4) = χ1  (degree 1, N = 1)");
}

#[test]
fn sympow_other_subcommands() {
    let r = run(&["sympow", "identity", "--group", "psl27", "--char", "2", "--case", "gl3", "--m-to", "12"]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["results"].as_array().unwrap().len(), 10);
    let r = run(&["sympow", "identity", "--group", "sl29", "--char", "2", "--case", "gl3"]);
    assert_eq!(r.code, 2, "a 4-dimensional character is rejected for the gl3 family");
    let r = run(&["sympow", "selftwists", "--group", "a4", "--char", "4"]);
    assert_eq!(json(&r)["s"], serde_json::json!([1, 2, 3]));
    let r = run(&["sympow", "adjoint", "--group", "v1080", "--char", "2"]);
    assert_eq!(json(&r)["link"]["holds"], true);
    assert_eq!(run(&["sympow", "selftwists", "--group", "a4", "--char", "5"]).code, 2);
    assert_eq!(run(&["sympow", "selftwists", "--group", "nosuch", "--char", "1"]).code, 2);
}

#[test]
fn group_subcommands() {
    let r = run(&["group", "table", "--group", "groups/a4.toml", "--format", "toml"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out, std::fs::read_to_string(fixtures().join("a4.tbl")).unwrap());
    let r = run(&["group", "classes", "--group", "groups/s4.toml"]);
    let sizes: Vec<&str> = r.out.lines().map(|l| l.split('\t').nth(2).unwrap()).collect();
    assert_eq!(sizes, ["size 1", "size 3", "size 6", "size 8", "size 6"]);
    let r = run(&["group", "check", "--table", "v1080", "--against", "groups/v1080.toml"]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert_eq!(r.out.lines().count(), 2);
    let r = run(&["group", "table", "--group", "groups/psl27.toml", "--max-order", "100"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("limit"));
}

#[test]
fn group_check_distinguishes_bad_tables() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixtures().join("a4.tbl")).unwrap();
    let corrupted = dir.path().join("bad.tbl");
    std::fs::write(&corrupted, text.replace(r#"["3", "-1", "0", "0"]"#, r#"["3", "-1", "1", "0"]"#)).unwrap();
    let r = run(&["group", "check", "--table", corrupted.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("FAIL"));
    let garbled = dir.path().join("garbled.tbl");
    std::fs::write(&garbled, "order = ").unwrap();
    assert_eq!(run(&["group", "check", "--table", garbled.to_str().unwrap()]).code, 2);
}

#[test]
fn reproduce_with_bundled_fixtures() {
    let r = run(&["reproduce-section4"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.lines().all(|l| !l.starts_with("FAIL")));
    assert!(r.out.lines().any(|l| l.starts_with("SKIPPED [1440,4591]")));
}

fn copy_required(to: &Path) {
    for stem in isobar_cli::reproduce::REQUIRED {
        std::fs::copy(fixtures().join(format!("{stem}.tbl")), to.join(format!("{stem}.tbl"))).unwrap();
    }
}

#[test]
fn reproduce_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let arg = dir.path().to_str().unwrap();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = isobar_cli::run(["isobar", "--fixtures", arg, "reproduce-section4"], &mut out, &mut err);
    assert_eq!(code, 2);
    assert!(String::from_utf8(err).unwrap().contains("missing required fixtures"));

    copy_required(dir.path());
    let a4 = dir.path().join("a4.tbl");
    let text = std::fs::read_to_string(&a4).unwrap();
    std::fs::write(&a4, text.replace(r#"["3", "-1", "0", "0"]"#, r#"["3", "-1", "1", "0"]"#)).unwrap();
    let mut out = Vec::new();
    let code = isobar_cli::run(["isobar", "--fixtures", arg, "reproduce-section4"], &mut out, &mut Vec::new());
    let out = String::from_utf8(out).unwrap();
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.starts_with("FAIL    A4")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("PASS    S4")));
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let args = ["identity", "verify", "--family", "gl4", "--m-from", "3", "--m-to", "10", "--format", "json"];
    let one = run(&[&["--jobs", "1"], &args[..]].concat());
    let four = run(&[&["--jobs", "4"], &args[..]].concat());
    assert_eq!(one.out, four.out);
    assert_eq!(run(&["--jobs", "0", "bounds", "row", "--case", "gl3", "--k", "5"]).code, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["bounds", "row", "--case", "gl5", "--k", "4"]).code, 2);
    assert_eq!(run(&["bounds", "row", "--case", "gl3", "--k", "4", "--bogus"]).code, 2);
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.out.contains("reproduce-section4"));
}

#[test]
fn binary_uses_fixture_environment_variable() {
    let bin = env!("CARGO_BIN_EXE_isobar");
    let status = Command::new(bin)
        .args(["reproduce-section4"])
        .env("ISOBAR_FIXTURES", fixtures())
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let empty = tempfile::tempdir().unwrap();
    let status = Command::new(bin)
        .args(["reproduce-section4"])
        .env("ISOBAR_FIXTURES", empty.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
}
