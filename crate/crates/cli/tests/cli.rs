//! Exit-code contract and report formats of the binary.

use std::path::Path;
use std::process::Command;

use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gbcheck"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn exported(dir: &TempDir, case: &str) -> String {
    let (code, text, _) = run(&["export", case]);
    assert_eq!(code, 0);
    let path = dir.path().join(format!("{case}.case"));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn compute_matches_on_sl2_constant() {
    let dir = TempDir::new().unwrap();
    let path = exported(&dir, "sl2_adjoint");
    let (code, out, _) = run(&["compute", &path, "--sheaf", "constant"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\nchi_integral=0\nchi_cc=0\nMATCH\n"));
    assert!(out.starts_with("case: sl2_adjoint\nsheaf: constant\nvalidation: ok"));
}

#[test]
fn every_exported_case_computes() {
    let dir = TempDir::new().unwrap();
    for case in gbcheck_core::catalog::CASE_NAMES {
        let path = exported(&dir, case);
        let parsed = gbcheck_core::catalog::catalog_case(case).unwrap();
        for sheaf in parsed.sheaves.keys() {
            let (code, out, _) = run(&["compute", &path, "--sheaf", sheaf]);
            assert_eq!(code, 0, "{case} {sheaf}: {out}");
        }
    }
}

#[test]
fn parse_errors_exit_1_with_position() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(exported(&dir, "sl2_adjoint")).unwrap();
    let bad = write(
        &dir,
        "bad.case",
        &text.replace("Ou 2 nss - - - 0", "Ou 2 nss -"),
    );
    let (code, _, err) = run(&["compute", &bad, "--sheaf", "constant"]);
    assert_eq!(code, 1);
    assert!(err.contains("line ") && err.contains("column "), "{err}");
    let key = write(
        &dir,
        "key.case",
        &text.replace("rank = 1", "rank = 1\nflavour = x"),
    );
    assert_eq!(run(&["compute", &key, "--sheaf", "constant"]).0, 1);
}

#[test]
fn unknown_sheaf_and_missing_file_exit_1() {
    let dir = TempDir::new().unwrap();
    let path = exported(&dir, "torus1_two_points");
    let (code, _, err) = run(&["compute", &path, "--sheaf", "nope"]);
    assert_eq!(code, 1);
    assert!(err.contains("skyscraper"));
    let missing = dir.path().join("absent.case");
    assert_eq!(
        run(&["compute", &missing.to_string_lossy(), "--sheaf", "constant"]).0,
        1
    );
    assert!(!Path::new(&missing).exists());
}

#[test]
fn validation_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(exported(&dir, "sl2_adjoint")).unwrap();
    let bad = write(
        &dir,
        "diag.case",
        &text.replace("e rs rs = -1", "e rs rs = 0"),
    );
    let (code, out, _) = run(&["compute", &bad, "--sheaf", "constant"]);
    assert_eq!(code, 2);
    assert!(out.contains("validation: FAILED") && out.contains("diagonal link must be -1"));
    let forced = write(
        &dir,
        "forced.case",
        &text.replace("e I Ou = 0", "e I Ou = 1"),
    );
    assert_eq!(run(&["compute", &forced, "--sheaf", "constant"]).0, 2);
}

#[test]
fn wrong_link_exits_3() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(exported(&dir, "sl2_adjoint")).unwrap();
    let bad = write(
        &dir,
        "wrong.case",
        &text.replace("e mI rs = 1", "e mI rs = 0"),
    );
    let (code, out, _) = run(&["compute", &bad, "--sheaf", "constant"]);
    assert_eq!(code, 3);
    assert!(out.ends_with("MISMATCH\n"));
    // Links into a degree-zero stratum do not reach the sum.
    let silent = write(
        &dir,
        "silent.case",
        &text.replace("e Ou rs = 1", "e Ou rs = 4"),
    );
    assert_eq!(run(&["compute", &silent, "--sheaf", "constant"]).0, 0);
}

#[test]
fn orbit_subcommand() {
    let (code, out, _) = run(&["orbit", "A", "2", "GL", "g1,g1,g2"]);
    assert_eq!(code, 0);
    assert!(out.contains("|W|=6\n|orbit|=3\n|stab|=2\nchi_orbit=3\ngdeg_orbit=3\n"));
    assert!(run(&["orbit", "A", "1", "SL", "g1"])
        .1
        .contains("chi_orbit=2\n"));
    assert!(run(&["orbit", "C", "2", "-", "1,1"])
        .1
        .contains("chi_orbit=1\n"));
    assert!(run(&["orbit", "B", "2", "-", "g1^-1,w:1/3"])
        .1
        .contains("chi_orbit=8\n"));
    assert_eq!(run(&["orbit", "A", "1", "SL", "q7"]).0, 1);
    assert_eq!(run(&["orbit", "A", "1", "SL", "g1,g2"]).0, 1);
}

#[test]
fn volume_subcommand() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "square.txt", "0 0\n3 0\n0 3\n3 3\n1 1\n");
    let (code, out, _) = run(&["volume", &path]);
    assert_eq!(code, 0);
    assert!(out.ends_with("normalized_volume=18\n"));
    let bad = write(&dir, "bad.txt", "0 0\n1 z\n");
    assert_eq!(run(&["volume", &bad]).0, 1);
}

#[test]
fn verify_filter_and_corruption() {
    let (code, out, _) = run(&["verify", "--case", "sl2_adjoint"]);
    assert_eq!(code, 0);
    assert!(out
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .all(|l| l.split(' ').nth(1) == Some("sl2_adjoint")));
    assert!(out.contains("PASS sl2_adjoint gauss_bonnet[constant]"));
    let (code, out, _) = run(&["verify", "--case", "sl2_adjoint", "--corrupt"]);
    assert_eq!(code, 3);
    assert!(out.contains("FAIL sl2_adjoint gauss_bonnet[constant]"));
    let (code, _, err) = run(&["verify", "--case", "nonexistent"]);
    assert_eq!(code, 1);
    assert!(err.contains("torus1_two_points"));
}

#[test]
fn export_unknown_case() {
    let (code, _, err) = run(&["export", "nonexistent"]);
    assert_eq!(code, 1);
    assert!(err.contains("sl2_adjoint"));
}
