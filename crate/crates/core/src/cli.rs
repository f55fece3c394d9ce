//! Command-line front end used by the `tsvd` binary.
//!
//! Exit codes: 0 success or s-diagonal, 1 not s-diagonal (or a failed
//! self-check), 2 input error, 3 inconclusive, 4 argument out of range.
//! Data and reports go to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::io::{format_float, read_t3_file, write_t3_file};
use crate::kilmer_martin::{gmap, st_svd, t_singular_values, truncate};
use crate::sdiag::{
    check_direct_p2, check_direct_p3, check_direct_p4, check_fixed_point, check_general,
    check_necessary, classify, Verdict,
};
use crate::tensor::{FDiagonal3, Tensor3};
use crate::tprod::{default_orthogonality_tol, orthogonality_residual};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_SDIAGONAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_OUT_OF_RANGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "tsvd",
    version,
    about = "Third-order tensor ST-SVD and s-diagonal checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    /// Four necessary conditions; never certifies membership.
    Necessary,
    /// Fixed-point test `gmap(S) = S`.
    Exact,
    /// Spectral sign and ordering conditions (any p).
    General,
    /// Closed-form conditions for p = 2, 3, 4.
    Direct,
    /// Necessary conditions, then direct (p <= 4) or general.
    Auto,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write S = gmap(A); optionally also write the U and V factors.
    Gmap {
        input: PathBuf,
        output: PathBuf,
        /// Writes `<prefix>.U.t3` and `<prefix>.V.t3`.
        factors_prefix: Option<String>,
    },
    /// Classify an f-diagonal tensor.
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Level::Auto)]
        level: Level,
        /// Absolute slack; defaults to 1e-10 * max(1, ||S||_F).
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
    },
    /// Print T-singular values and the tubal rank.
    Tsv { input: PathBuf },
    /// Rank-r truncated ST-SVD.
    Truncate {
        input: PathBuf,
        #[arg(short = 'r', allow_negative_numbers = true)]
        r: i64,
        output: PathBuf,
    },
    /// Write a seeded standard-normal tensor.
    Random {
        m: usize,
        n: usize,
        p: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        output: PathBuf,
    },
    /// Self-checks: idempotence, reconstruction, orthogonality, necessary conditions.
    Verify { input: PathBuf },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

type CmdResult = Result<i32, (i32, String)>;

fn input_error(msg: impl std::fmt::Display) -> (i32, String) {
    (EXIT_INPUT, msg.to_string())
}

fn read(path: &Path) -> Result<Tensor3, (i32, String)> {
    read_t3_file(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, t: &Tensor3) -> Result<(), (i32, String)> {
    write_t3_file(path, t).map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let mut io = Io { out, err };
    let result = match cli.command {
        Command::Gmap {
            input,
            output,
            factors_prefix,
        } => cmd_gmap(&input, &output, factors_prefix.as_deref()),
        Command::Check { input, level, tol } => cmd_check(&mut io, &input, level, tol),
        Command::Tsv { input } => cmd_tsv(&mut io, &input),
        Command::Truncate { input, r, output } => cmd_truncate(&mut io, &input, r, &output),
        Command::Random {
            m,
            n,
            p,
            seed,
            output,
        } => cmd_random(m, n, p, seed, &output),
        Command::Verify { input } => cmd_verify(&mut io, &input),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            code
        }
    }
}

fn emit(io: &mut Io<'_>, text: impl std::fmt::Display) -> Result<(), (i32, String)> {
    writeln!(io.out, "{text}").map_err(|e| input_error(format!("cannot write output: {e}")))
}

fn cmd_gmap(input: &Path, output: &Path, prefix: Option<&str>) -> CmdResult {
    let a = read(input)?;
    match prefix {
        None => write(output, &gmap(&a).to_tensor())?,
        Some(prefix) => {
            let f = st_svd(&a);
            write(output, &f.s.to_tensor())?;
            write(Path::new(&format!("{prefix}.U.t3")), &f.u)?;
            write(Path::new(&format!("{prefix}.V.t3")), &f.v)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_check(io: &mut Io<'_>, input: &Path, level: Level, tol: Option<f64>) -> CmdResult {
    let a = read(input)?;
    let tol = match tol {
        Some(t) if t.is_finite() && t >= 0.0 => t,
        Some(t) => {
            return Err((
                EXIT_OUT_OF_RANGE,
                format!("tolerance {t} must be finite and >= 0"),
            ))
        }
        None => 1e-10 * a.frobenius_norm().max(1.0),
    };
    let s = FDiagonal3::try_from_tensor(&a, tol).map_err(input_error)?;
    let report = match level {
        Level::Necessary => check_necessary(&s, tol),
        Level::Exact => check_fixed_point(&s, tol),
        Level::General => check_general(&s, tol),
        Level::Auto => classify(&s, tol),
        Level::Direct => match s.p() {
            2 => check_direct_p2(&s, tol),
            3 => check_direct_p3(&s, tol),
            4 => check_direct_p4(&s, tol),
            p => {
                return Err((
                    EXIT_OUT_OF_RANGE,
                    format!("--level direct needs p in {{2, 3, 4}}, got p = {p}"),
                ))
            }
        }
        .expect("dispatch matches p"),
    };
    emit(io, &report)?;
    Ok(match report.verdict {
        Verdict::SDiagonal => EXIT_OK,
        Verdict::NotSDiagonal => EXIT_NOT_SDIAGONAL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_tsv(io: &mut Io<'_>, input: &Path) -> CmdResult {
    let spectrum = t_singular_values(&read(input)?);
    for (i, sigma) in spectrum.sigmas.iter().enumerate() {
        emit(io, format_args!("sigma {} {}", i + 1, format_float(*sigma)))?;
    }
    emit(io, format_args!("tubal_rank {}", spectrum.tubal_rank))?;
    Ok(EXIT_OK)
}

fn cmd_truncate(io: &mut Io<'_>, input: &Path, r: i64, output: &Path) -> CmdResult {
    let a = read(input)?;
    let max = a.min_dim();
    let r = usize::try_from(r)
        .ok()
        .filter(|&r| r <= max)
        .ok_or_else(|| {
            (
                EXIT_OUT_OF_RANGE,
                format!("rank {r} out of range 0..={max}"),
            )
        })?;
    let t = truncate(&a, r).map_err(|e| (EXIT_OUT_OF_RANGE, e.to_string()))?;
    write(output, &t)?;
    let err = a.sub(&t).expect("same shape").frobenius_norm();
    emit(io, format_args!("frob_error {}", format_float(err)))?;
    Ok(EXIT_OK)
}

fn cmd_random(m: usize, n: usize, p: usize, seed: u64, output: &Path) -> CmdResult {
    let t = Tensor3::random_normal(m, n, p, seed).map_err(input_error)?;
    write(output, &t)?;
    Ok(EXIT_OK)
}

fn cmd_verify(io: &mut Io<'_>, input: &Path) -> CmdResult {
    let a = read(input)?;
    let scale = a.frobenius_norm().max(1.0);
    let f = st_svd(&a);
    let s = f.s.to_tensor();
    let mut all = true;
    let mut line = |io: &mut Io<'_>, name: &str, value: f64, tol: f64| {
        let pass = value <= tol;
        all &= pass;
        emit(
            io,
            format_args!(
                "{name} {} value={} tol={}",
                if pass { "PASS" } else { "FAIL" },
                format_float(value),
                format_float(tol)
            ),
        )
    };

    let idem = gmap(&s)
        .to_tensor()
        .sub(&s)
        .expect("same shape")
        .frobenius_norm();
    line(io, "idempotence", idem, 1e-10 * scale)?;
    let recon = f
        .reconstruct()
        .sub(&a)
        .expect("same shape")
        .frobenius_norm();
    line(io, "reconstruction", recon, 1e-10 * scale)?;
    for (name, factor) in [("orthogonality_u", &f.u), ("orthogonality_v", &f.v)] {
        let residual = orthogonality_residual(factor).expect("factors are square");
        line(io, name, residual, default_orthogonality_tol(factor))?;
    }
    let nec = check_necessary(&f.s, f.s.default_tol());
    let worst = nec.conditions.iter().map(|c| c.worst).fold(0.0, f64::max);
    line(io, "necessary_conditions", worst, nec.tolerance_used)?;

    Ok(if all { EXIT_OK } else { EXIT_NOT_SDIAGONAL })
}
