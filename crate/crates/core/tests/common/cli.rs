//! Drives the `tsvd` binary against the files in `tests/golden`.

use std::path::{Path, PathBuf};
use std::process::Command;

use tsvd::io::{parse_t3, read_t3_file};

pub fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn tsvd<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_tsvd"))
        .args(args)
        .output()
        .expect("run tsvd");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn read(name: &str) -> String {
    std::fs::read_to_string(golden(name)).unwrap()
}

/// Line-by-line comparison in which numeric tokens may differ by `tol`.
fn numeric_match(got: &str, want: &str, tol: f64) -> Result<(), String> {
    let (g, w): (Vec<&str>, Vec<&str>) = (got.lines().collect(), want.lines().collect());
    if g.len() != w.len() {
        return Err(format!("{} lines, expected {}", g.len(), w.len()));
    }
    for (no, (gl, wl)) in g.iter().zip(&w).enumerate() {
        let (gt, wt): (Vec<&str>, Vec<&str>) = (
            gl.split_whitespace().collect(),
            wl.split_whitespace().collect(),
        );
        let same = gt.len() == wt.len()
            && gt
                .iter()
                .zip(&wt)
                .all(|(a, b)| match (a.parse::<f64>(), b.parse::<f64>()) {
                    (Ok(x), Ok(y)) => (x - y).abs() <= tol * y.abs().max(1.0),
                    _ => a == b,
                });
        if !same {
            return Err(format!("line {}: `{gl}` vs `{wl}`", no + 1));
        }
    }
    Ok(())
}

fn expect_code(run: &Run, code: i32, what: &str) -> Result<(), String> {
    if run.code == code {
        Ok(())
    } else {
        Err(format!(
            "{what}: exit {} (expected {code}); stderr: {}",
            run.code, run.stderr
        ))
    }
}

pub const FIXTURES: [&str; 2] = ["counterexample", "identity"];

/// `gmap` output agrees with the golden file to 1e-12 and is byte-stable.
pub fn gmap_golden(dir: &Path, name: &str) -> Result<(), String> {
    let mut texts = Vec::new();
    for run in 0..2 {
        let out = dir.join(format!("{name}.{run}.t3"));
        let r = tsvd(&[
            "gmap".as_ref(),
            golden(&format!("{name}.t3")).as_os_str(),
            out.as_os_str(),
        ]);
        expect_code(&r, 0, "gmap")?;
        texts.push(std::fs::read_to_string(&out).unwrap());
    }
    if texts[0] != texts[1] {
        return Err("gmap output differs between runs".into());
    }
    let want = read(&format!("{name}.gmap.t3"));
    numeric_match(&texts[0], &want, 1e-12)?;
    let got = parse_t3(&texts[0]).map_err(|e| e.to_string())?;
    let want = read_t3_file(golden(&format!("{name}.gmap.t3"))).map_err(|e| e.to_string())?;
    if got.dims() != want.dims() {
        return Err("gmap shape differs".into());
    }
    Ok(())
}

/// `check` reports match byte for byte, with the documented exit codes.
pub fn check_golden(name: &str) -> Result<(), String> {
    let input = golden(&format!("{name}.t3"));
    let auto_code = if name == "counterexample" { 1 } else { 0 };
    for (args, file, code) in [
        (vec![], format!("{name}.check.txt"), auto_code),
        (
            vec!["--level", "necessary"],
            format!("{name}.check_necessary.txt"),
            3,
        ),
    ] {
        let mut full = vec!["check".to_string(), input.display().to_string()];
        full.extend(args.iter().map(|s| s.to_string()));
        let first = tsvd(&full);
        let second = tsvd(&full);
        expect_code(&first, code, &file)?;
        if first.stdout != second.stdout {
            return Err(format!("{file}: output differs between runs"));
        }
        if first.stdout != read(&file) {
            return Err(format!("{file}: got\n{}", first.stdout));
        }
    }
    Ok(())
}

pub fn tsv_golden(name: &str) -> Result<(), String> {
    let input = golden(&format!("{name}.t3"));
    let first = tsvd(&["tsv".as_ref(), input.as_os_str()]);
    let second = tsvd(&["tsv".as_ref(), input.as_os_str()]);
    expect_code(&first, 0, "tsv")?;
    if first.stdout != second.stdout {
        return Err("tsv output differs between runs".into());
    }
    numeric_match(&first.stdout, &read(&format!("{name}.tsv.txt")), 1e-12)
}

/// Every exit code is reachable and means what it should.
pub fn exit_codes(dir: &Path) -> Result<(), String> {
    let ce = golden("counterexample.t3").display().to_string();
    let id = golden("identity.t3").display().to_string();
    let nan = dir.join("nan.t3");
    std::fs::write(&nan, "T3 1 1 2\nNaN\n1\n").unwrap();
    let nan = nan.display().to_string();
    let p5 = dir.join("p5.t3").display().to_string();
    let out = dir.join("out.t3").display().to_string();
    expect_code(
        &tsvd(&["random", "2", "2", "5", "--seed", "1", &p5]),
        0,
        "random",
    )?;

    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["check", &id], 0),
        (vec!["check", &ce, "--level", "exact"], 1),
        (vec!["check", &ce, "--level", "general"], 1),
        (vec!["check", &ce, "--level", "direct"], 1),
        (vec!["check", &nan], 2),
        (vec!["check", "/nonexistent/input.t3"], 2),
        (vec!["gmap", &nan, &out], 2),
        (vec!["check", &p5], 2),
        (vec!["random", "0", "2", "2", &out], 2),
        (vec!["bogus"], 2),
        (vec!["check", &ce, "--level", "necessary"], 3),
        (vec!["truncate", &ce, "-r", "4", &out], 4),
        (vec!["truncate", &ce, "-r", "-1", &out], 4),
        (vec!["check", &ce, "--tol", "-1"], 4),
        (vec!["truncate", &ce, "-r", "2", &out], 0),
        (vec!["verify", &ce], 0),
    ];
    for (args, code) in cases {
        expect_code(&tsvd(&args), code, &args.join(" "))?;
    }
    // a p = 5 f-diagonal for the direct-level range error
    let p5s = dir.join("p5s.t3").display().to_string();
    expect_code(&tsvd(&["gmap", &p5, &p5s]), 0, "gmap p5")?;
    expect_code(&tsvd(&["check", &p5s, "--level", "direct"]), 4, "direct p5")?;
    expect_code(&tsvd(&["check", &p5s]), 0, "auto p5")?;
    Ok(())
}

/// `random → gmap → check --level exact` accepts its own output.
pub fn pipeline(dir: &Path) -> Result<(), String> {
    let a = dir.join("a.t3").display().to_string();
    let s = dir.join("s.t3").display().to_string();
    let prefix = dir.join("f").display().to_string();
    expect_code(
        &tsvd(&["random", "4", "3", "6", "--seed", "42", &a]),
        0,
        "random",
    )?;
    expect_code(&tsvd(&["gmap", &a, &s, &prefix]), 0, "gmap")?;
    expect_code(&tsvd(&["check", &s, "--level", "exact"]), 0, "check exact")?;
    let u = read_t3_file(format!("{prefix}.U.t3")).map_err(|e| e.to_string())?;
    if u.dims() != (4, 4, 6) {
        return Err(format!("U has shape {:?}", u.dims()));
    }
    Ok(())
}
