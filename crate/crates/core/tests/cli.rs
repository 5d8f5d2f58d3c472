use std::path::Path;
use std::process::Command;

use primecert::cli::run_cli;

const GOLDEN_97: &str = include_str!("golden/cert97.txt");
const GOLDEN_CHAIN: &str = include_str!("golden/cert_1000000007.txt");

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("primecert").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn verdict(out: &str) -> &str {
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with("VERDICT ")).collect();
    assert_eq!(lines.len(), 1, "expected one VERDICT line in {out:?}");
    lines[0]
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn lucas_lehmer_subcommand() {
    let r = run(&["ll", "7"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.out,
        "M_7 = 127 PRIME\nVERDICT test=lucas-lehmer p=7 n=127 result=prime\n"
    );
    let r = run(&["ll", "11"]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("M_11 = 2047 COMPOSITE-OR-UNPROVEN\n"));
    assert!(verdict(&r.out).ends_with("result=unproven"));
}

#[test]
fn lucas_lehmer_rejects_non_prime_exponent() {
    let r = run(&["ll", "9"]);
    assert_eq!(r.code, 2);
    assert!(r.out.is_empty());
    assert!(!r.err.is_empty());
}

#[test]
fn pepin_subcommand() {
    let r = run(&["pepin", "4"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.out,
        "F_4 PRIME\nVERDICT test=pepin k=4 n=65537 result=prime\n"
    );
    let r = run(&["pepin", "5"]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("F_5 COMPOSITE-OR-UNPROVEN\n"));
    assert_eq!(run(&["pepin", "0"]).code, 2);
}

#[test]
fn proth_subcommand() {
    let r = run(&["proth", "3", "2", "--base", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.out,
        "P = 13 PRIME\nVERDICT test=proth h=3 k=2 n=13 base=2 result=prime\n"
    );
    // 49 = 3 * 2^4 + 1 is composite: no base is found.
    let r = run(&["proth", "3", "4"]);
    assert_eq!(r.code, 1);
    assert!(verdict(&r.out).contains("base=none"));
    // h must be odd and below 2^k.
    assert_eq!(run(&["proth", "4", "3"]).code, 2);
    assert_eq!(run(&["proth", "9", "3"]).code, 2);
}

#[test]
fn verify_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "cert97.txt", GOLDEN_97);
    let r = run(&["verify", &path]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(
        r.out,
        "ACCEPTED N=97\nVERDICT test=verify n=97 result=accepted\n"
    );
    let path = write(dir.path(), "chain.txt", GOLDEN_CHAIN);
    assert_eq!(run(&["verify", &path]).code, 0);
}

#[test]
fn verify_reports_failing_condition() {
    let dir = tempfile::tempdir().unwrap();
    // 97 with base 2: 2 is a square mod 97, so the gcd condition fails.
    let path = write(
        dir.path(),
        "bad.txt",
        &GOLDEN_97.replace("WITNESS 2 5 5", "WITNESS 2 5 2"),
    );
    let r = run(&["verify", &path]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("REJECTED N=97 "));
    let v = verdict(&r.out);
    assert!(v.contains("result=rejected"), "{v}");
    assert!(v.contains("path=root"), "{v}");
}

#[test]
fn verify_child_failure_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let doc = GOLDEN_CHAIN.replace("WITNESS 148721 1 2", "WITNESS 148721 1 1");
    let path = write(dir.path(), "chain.txt", &doc);
    let r = run(&["verify", &path]);
    assert_eq!(r.code, 1);
    assert!(verdict(&r.out).contains("path=root/500000003"), "{}", r.out);
}

#[test]
fn verify_small_prime_bound_option() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "chain.txt", GOLDEN_CHAIN);
    // With a tiny bound the leaf 148721 has no certificate of its own.
    let r = run(&["verify", &path, "--small-prime-bound", "100"]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("REJECTED N=1000000007 "), "{}", r.out);
}

#[test]
fn verify_malformed_documents() {
    let dir = tempfile::tempdir().unwrap();
    let truncated = &GOLDEN_97[..GOLDEN_97.len() - 4];
    let path = write(dir.path(), "truncated.txt", truncated);
    let r = run(&["verify", &path]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("REJECTED parse-error\n"));
    assert!(verdict(&r.out).contains("condition=parse-error"));
    assert!(r.err.contains("line"), "{}", r.err);

    let path = write(dir.path(), "mismatch.txt", &GOLDEN_97.replace("R 3", "R 4"));
    assert_eq!(run(&["verify", &path]).code, 1);
}

#[test]
fn missing_file_is_an_internal_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.txt");
    let r = run(&["verify", missing.to_str().unwrap()]);
    assert_eq!(r.code, 3);
    assert!(r.out.is_empty());
}

#[test]
fn generate_to_stdout_matches_golden() {
    let r = run(&["generate", "97"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, GOLDEN_97);
    let r = run(&["generate", "1000000007"]);
    assert_eq!(r.out, GOLDEN_CHAIN);
}

#[test]
fn generate_to_file_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let path = path.to_str().unwrap();
    let r = run(&["generate", "1000000007", "-o", path]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("GENERATED N=1000000007 nodes=2\n"));
    assert!(verdict(&r.out).contains("result=certified"));
    assert_eq!(std::fs::read_to_string(path).unwrap(), GOLDEN_CHAIN);
    assert_eq!(run(&["verify", path]).code, 0);
}

#[test]
fn generate_cannot_certify_composites() {
    let r = run(&["generate", "9"]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("CANNOT-CERTIFY N=9\n"));
    assert!(verdict(&r.out).contains("result=cannot-certify"));
    // A bound too small to reach F1^2 > N.
    let r = run(&["generate", "1000000007", "--bound", "1"]);
    assert_eq!(r.code, 1);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &[][..],
        &["frobnicate"][..],
        &["ll"][..],
        &["ll", "seven"][..],
        &["generate", "-5"][..],
        &["verify"][..],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.out.is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_primecert");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["ll", "13"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(ok.stdout).unwrap(),
        "M_13 = 8191 PRIME\nVERDICT test=lucas-lehmer p=13 n=8191 result=prime\n"
    );
    assert_eq!(status(&["pepin", "6"]).status.code(), Some(1));
    assert_eq!(status(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        status(&["verify", "/nonexistent/cert.txt"]).status.code(),
        Some(3)
    );
}
