use std::path::PathBuf;

use clap::Parser;
use ktg_core::cli::{run, Cli, Outcome, EXIT_INPUT, EXIT_OK};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name).display().to_string()
}

fn ktgj(args: &[&str]) -> Outcome {
    run(&Cli::parse_from(std::iter::once("ktgj").chain(args.iter().copied())))
}

fn temp_file(name: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("ktgj-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn validate_reports_stats() {
    let o = ktgj(&["validate", &corpus("two_triangles_two_unzips.ktg")]);
    assert_eq!(o.code, EXIT_OK, "{}", o.output);
    assert!(o.output.contains("t=2"), "{}", o.output);
}

#[test]
fn unknown_id_is_an_input_error() {
    let f = temp_file("bad.ktg", "tet\nU e99\n");
    let o = ktgj(&["validate", &f]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.output.contains("line 2"), "{}", o.output);
}

#[test]
fn missing_file_is_an_input_error() {
    assert_eq!(ktgj(&["jones", "/nonexistent.ktg", "--N", "3"]).code, EXIT_INPUT);
}

#[test]
fn tetrahedron_at_five_is_sixj() {
    let o = ktgj(&["--format", "json", "jones", &corpus("tetrahedron.ktg"), "--N", "5"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.output);
    let v: serde_json::Value = serde_json::from_str(&o.output).unwrap();
    let v = &v[0];
    assert!((v["value_re"].as_f64().unwrap() - 8.854101966249685).abs() < 1e-9, "{v}");
    assert_eq!(v["N"], 5);
}

#[test]
fn strict_mode_rejects_twisted_unzip() {
    let f = temp_file("twisted.ktg", "tet\nH+ e5\nU e5 rings=1\n");
    let o = ktgj(&["jones", &f, "--N", "3"]);
    assert_ne!(o.code, EXIT_OK, "{}", o.output);
    let o = ktgj(&["--mode", "lenient", "jones", &f, "--N", "3", "--method", "both", "--rings", "auto"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.output);
}

#[test]
fn gluing_negative_control_is_reported() {
    assert_eq!(ktgj(&["gluing", &corpus("theta.ktg")]).code, EXIT_OK);
    let o = ktgj(&["gluing", &corpus("theta.ktg"), "--negative-control"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.output.contains("unpaired white face"), "{}", o.output);
}

#[test]
fn asymptotics_csv_header() {
    let o = ktgj(&["--format", "csv", "asymptotics", "--Nlist", "101,201"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.output.starts_with("N,lhs,target,error"));
    assert_eq!(o.output.lines().count(), 3);
}
