//! The `tsvd` binary against golden files.

mod common;

use common::cli::*;

fn ok(r: Result<(), String>) {
    if let Err(e) = r {
        panic!("{e}");
    }
}

#[test]
fn gmap_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    for name in FIXTURES {
        ok(gmap_golden(dir.path(), name));
    }
}

#[test]
fn check_matches_golden() {
    for name in FIXTURES {
        ok(check_golden(name));
    }
}

#[test]
fn tsv_matches_golden() {
    for name in FIXTURES {
        ok(tsv_golden(name));
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    ok(exit_codes(tempfile::tempdir().unwrap().path()));
}

#[test]
fn random_gmap_check_pipeline() {
    ok(pipeline(tempfile::tempdir().unwrap().path()));
}

#[test]
fn verify_prints_one_line_per_check() {
    let r = tsvd(&["verify", golden("counterexample.t3").to_str().unwrap()]);
    let names: Vec<&str> = r
        .stdout
        .lines()
        .map(|l| l.split(' ').next().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "idempotence",
            "reconstruction",
            "orthogonality_u",
            "orthogonality_v",
            "necessary_conditions"
        ]
    );
    assert!(r.stdout.lines().all(|l| l.contains(" PASS value=")));
}

#[test]
fn help_exits_zero() {
    let r = tsvd(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("gmap"));
}
