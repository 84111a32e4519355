use std::process::Command;

use lefschetz_cli::run;

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lefschetz"))
}

/// Runs in-process, returning `(exit code, stdout, stderr)`.
fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lefschetz").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn family_lists_nine_generators() {
    let (code, out, _) = call(&["family", "--n", "4", "--i", "2", "--j", "4"]);
    assert_eq!(code, 0);
    let gens: Vec<&str> = out.lines().collect();
    assert_eq!(
        gens,
        ["x1^2", "x1*x2", "x2^2", "x1*x3", "x2*x3", "x3^2", "x1*x4", "x2*x4", "x4^2"]
    );
}

#[test]
fn family_by_generator_count() {
    let (code, out, _) = call(&["family", "--n", "4", "--mu", "7", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["gens"].as_array().unwrap().len(), 7);
    assert_eq!(call(&["family", "--n", "4", "--mu", "11"]).0, 2);
}

#[test]
fn hilbert_of_family() {
    let (code, out, _) = call(&["hilbert", "--n", "5", "--i", "1", "--j", "3"]);
    assert_eq!((code, out.trim()), (0, "[1,5,8,5,1]"));
    let (_, json, _) = call(&["hilbert", "--n", "5", "--i", "1", "--j", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["hilbert"], serde_json::json!([1, 5, 8, 5, 1]));
}

#[test]
fn slp_failure_exits_one_with_witness() {
    let (code, out, _) = call(&["slp", "--ideal", "n=3; x1^3,x1^2*x2,x1*x2^2,x2^3,x3^3", "--field", "q"]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict: fail"));
    assert!(out.contains("kernel witness at i=1 t=3: x1 + x2 - x3"), "{out}");
}

#[test]
fn slp_and_wlp_pass_on_fixtures() {
    assert_eq!(call(&["slp", "--ideal", "@sec5_J"]).0, 0);
    assert_eq!(call(&["wlp", "--n", "4", "--i", "2", "--j", "4", "--field", "p:32003"]).0, 0);
    assert_eq!(call(&["wlp", "--ideal", "@power:4,3"]).0, 1);
}

#[test]
fn report_json_is_stable_and_parses() {
    let args = ["wlp", "--n", "4", "--i", "2", "--j", "4", "--json"];
    let (code, a, _) = call(&args);
    let (_, b, _) = call(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert_eq!(
        a.trim(),
        r#"{"property":"wlp","field":"q","verdict":"pass","hilbert":[1,4,1],"certificate_prime":2147483647,"maps":[{"source_degree":0,"power":1,"rank":1,"expected":1},{"source_degree":1,"power":1,"rank":1,"expected":1}]}"#
    );
    let report: lefschetz::LefschetzReport = serde_json::from_str(&a).unwrap();
    assert!(report.passed());
}

#[test]
fn ideal_from_file_text_and_json() {
    let dir = std::env::temp_dir().join(format!("lefschetz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = dir.join("ideal.txt");
    std::fs::write(&text, "n=3; x1^2, x2^2, x3^2").unwrap();
    let json = dir.join("ideal.json");
    std::fs::write(&json, r#"{"n":3,"gens":[[2,0,0],[0,2,0],[0,0,2]]}"#).unwrap();
    for path in [&text, &json] {
        let (code, out, _) = call(&["hilbert", "--ideal-file", path.to_str().unwrap()]);
        assert_eq!((code, out.trim()), (0, "[1,3,3,1]"));
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(call(&["slp", "--ideal", "n=3; x1^3, x2^3"]).0, 2);
    assert_eq!(call(&["slp", "--ideal", "n=2; x1^2, x2^2", "--field", "p:12"]).0, 2);
    assert_eq!(call(&["slp", "--ideal", "n=2; y1"]).0, 2);
    assert_eq!(call(&["slp", "--ideal", "@nonsense"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["--workers", "0", "hilbert", "--n", "3", "--i", "1", "--j", "2"]).0, 2);
    assert_eq!(call(&["search", "--n", "3", "--d", "3", "--mu", "11"]).0, 2);
    let (code, _, err) = call(&["hilbert"]);
    assert_eq!(code, 2);
    assert!(err.contains("an ideal is required"));
}

#[test]
fn analyze_sequence_and_ideal() {
    let (code, out, _) = call(&["analyze", "--seq", "1,1,1", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class_h"], true);
    assert_eq!(v["mid_heavy"], false);
    let (_, out, _) = call(&["analyze", "--n", "5", "--i", "1", "--j", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sequence"], serde_json::json!([1, 5, 8, 5, 1]));
    assert_eq!(v["symmetric"], true);
}

#[test]
fn witnesses_verify() {
    for kind in ["fd", "n4", "n5", "identity"] {
        let (code, out, _) = call(&["witness", kind, "--d", "4"]);
        assert_eq!(code, 0, "{kind}");
        assert!(out.contains("verified: true"));
    }
    assert_eq!(call(&["witness", "fd", "--d", "2"]).0, 2);
}

#[test]
fn search_certificates_are_reproducible() {
    let args = ["search", "--n", "3", "--d", "3", "--mu", "6", "--strategy", "random", "--seed", "5", "--max-trials", "100", "--json"];
    let (code, a, _) = call(&args);
    assert_eq!(code, 0);
    let (_, b, _) = call(&["--workers", "1", "search", "--n", "3", "--d", "3", "--mu", "6", "--strategy", "random", "--seed", "5", "--max-trials", "100", "--json"]);
    assert_eq!(a, b);
    let cert: lefschetz::SearchCertificate = serde_json::from_str(&a).unwrap();
    assert!(cert.reverify().unwrap());
    assert!(a.contains(r#""seed":5"#));
}

#[test]
fn search_exhaustive_text() {
    let (code, out, _) = call(&["search", "--n", "3", "--d", "4", "--mu", "7", "--strategy", "exhaustive", "--recertify"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("found after"));
    assert!(out.contains("over q: pass"));
}

#[test]
fn binary_exit_codes_and_env_workers() {
    let status = exe()
        .args(["slp", "--ideal", "n=3; x1^3,x1^2*x2,x1*x2^2,x2^3,x3^3"])
        .env("LEFSCHETZ_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    let status = exe().args(["hilbert", "--n", "5", "--i", "1", "--j", "3"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&status.stdout).trim(), "[1,5,8,5,1]");
    let status = exe().arg("--help").output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = exe().args(["hilbert"]).env("LEFSCHETZ_WORKERS", "zero").output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn verify_paper_fast_level() {
    let (code, out, _) = call(&["verify-paper", "--level", "fast", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["level"], "fast");
    assert_eq!(v["passed"], true);
}
