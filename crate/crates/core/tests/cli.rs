//! End-to-end runs of the binary. Golden files are rewritten when
//! `SKEWBERGER_UPDATE_GOLDEN` is set.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_skewberger"));
    for (k, _) in std::env::vars() {
        if k.starts_with("SKEWBERGER_") {
            c.env_remove(k);
        }
    }
    c.args(args).envs(env.iter().copied()).output().unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn golden(name: &str, out: &Output) {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let path = golden_path(name);
    if std::env::var_os("SKEWBERGER_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(text, want, "{name} differs from golden");
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn check_sl2_matches_golden() {
    let out = bin(&["--no-timings", "check", "sl(2):std"], &[]);
    assert_eq!(out.status.code(), Some(0));
    golden("check_sl2_std.json", &out);
}

#[test]
fn mismatches_exit_one_with_deltas() {
    let out = bin(&["--no-timings", "check", "sl(2)*sl(4):tensor"], &[]);
    assert_eq!(out.status.code(), Some(1));
    golden("check_sl2_sl4.json", &out);
}

#[test]
fn table_three_csv_matches_golden() {
    let out = bin(&["--no-timings", "--format", "csv", "table", "3", "--max-dim", "4"], &[]);
    assert_eq!(out.status.code(), Some(0));
    golden("table3_dim4.csv", &out);
}

#[test]
fn triples_match_golden() {
    let out = bin(&["triples", "sl(7):wedge(3)", "--root", "e1-e7"], &[]);
    assert_eq!(out.status.code(), Some(0));
    golden("triples_sl7_wedge3.json", &out);
}

#[test]
fn output_is_reproducible() {
    let args = ["--no-timings", "table", "1", "--max-dim", "5"];
    assert_eq!(bin(&args, &[]).stdout, bin(&args, &[]).stdout);
}

#[test]
fn env_overrides_flags() {
    let out = bin(
        &["check", "sl(3):std"],
        &[("SKEWBERGER_FORMAT", "csv"), ("SKEWBERGER_NO_TIMINGS", "true")],
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("spec,dimV,"), "{text}");
    assert!(text.contains("sl(3):std,3,8,18,"));
}

#[test]
fn errors_exit_two() {
    let out = bin(&["check", "sp(3):std"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd symplectic"));
    let out = bin(&["--primes", "4,7", "check", "sl(2):std"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["check", "sl(3"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn row_cap_aborts_with_partial_report() {
    let out = bin(&["--no-timings", "--max-rows", "10", "check", "sl(3):std"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["dimV"], 3);
    assert!(v["dimRbar"].is_null());
    assert!(v["aborted"].as_str().unwrap().contains("rbar"));
}

#[test]
fn cache_round_trip_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = json(&bin(&["--no-timings", "--cache-dir", d, "check", "sp(4):std"], &[]));
    let second = json(&bin(&["--no-timings", "--cache-dir", d, "check", "sp(4):std"], &[]));
    assert_eq!(first["cacheHits"]["rbar"], false);
    assert_eq!(second["cacheHits"]["rbar"], true);
    assert_eq!(first["dimRbar"], second["dimRbar"]);
    bin(&["--cache-dir", d, "check", "sl(3):std"], &[]);
    let out = bin(&["--cache-dir", d, "cache", "verify", "--all"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["entries"], 2);
    assert_eq!(v["checked"].as_array().unwrap().len(), 2);
    let out = bin(&["--cache-dir", d, "cache", "verify"], &[]);
    assert_eq!(json(&out)["checked"].as_array().unwrap().len(), 1);
}

#[test]
fn tampered_cache_entry_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    bin(&["--cache-dir", d, "check", "sl(3):std"], &[]);
    let file = std::fs::read_dir(d).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&file).unwrap().replace("\"dimRbar\": 18", "\"dimRbar\": 19");
    std::fs::write(&file, text).unwrap();
    let out = bin(&["--cache-dir", d, "cache", "verify", "--all"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["mismatches"][0], "sl(3):std");
    std::fs::write(&file, "{ truncated").unwrap();
    let out = bin(&["--no-timings", "--cache-dir", d, "check", "sl(3):std"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dimRbar"], 18);
}
