//! The `quasi-ortho` command line.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 bad input or malformed
//! file, 3 I/O failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::constructions::{build_masa_spread, build_recursive, build_spread_2, ConstructionParams};
use crate::error::Error;
use crate::family_file::{FamilyFile, VerificationSummary};
use crate::verify::{
    extract_and_check_mub, verify_family_symbolic, verify_qo_numeric, MubBasis, NumericOptions,
    VerificationReport, DEFAULT_TOLERANCE,
};
use crate::weyl::notation;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "quasi-ortho", version, about = "Quasi-orthogonal subalgebra families from Weyl operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the recursive family for M_{p^k}^{⊗n} and write it as a family file.
    Generate {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Coordinates of the non-square D, comma separated.
        #[arg(long, value_delimiter = ',')]
        d_override: Option<Vec<u32>>,
        /// Lower coefficients c_0..c_{k-1} of the field polynomial, comma separated.
        #[arg(long, value_delimiter = ',')]
        poly_override: Option<Vec<u32>>,
    },
    /// Check a family file.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Number of random member pairs for the numeric check.
        #[arg(long)]
        sample: Option<usize>,
        /// Write the file back with the verification summary attached.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract the p^{2k}+1 mutually unbiased bases of C^{p^k}.
    Mub {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_delimiter = ',')]
        d_override: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        poly_override: Option<Vec<u32>>,
    },
    /// Print the ten quasi-orthogonal copies of M_3 inside M_9.
    Example,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Numeric,
    Both,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Numeric => "numeric",
            Mode::Both => "both",
        }
    }
}

/// Runs a parsed command, writing human output to `out` and diagnostics to
/// `err`, and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32 {
    let result = match cli.command {
        Command::Generate {
            p,
            k,
            n,
            out: path,
            d_override,
            poly_override,
        } => cmd_generate(p, k, n, path.as_deref(), poly_override, d_override, out),
        Command::Verify {
            path,
            mode,
            tol,
            sample,
            out: annotated,
        } => cmd_verify(&path, mode, tol, sample, annotated.as_deref(), out),
        Command::Mub {
            p,
            k,
            out: path,
            tol,
            d_override,
            poly_override,
        } => cmd_mub(p, k, path.as_deref(), tol, poly_override, d_override, out),
        Command::Example => cmd_example(out),
    };
    match result {
        Ok(code) => code,
        Err(CliError { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

/// Parses `args` (program name first) and runs; clap usage errors exit 2.
pub fn run_from_args<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_BAD_INPUT
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_PASS
            }
        }
    }
}

/// A failed command: its exit code and message.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: EXIT_BAD_INPUT,
            message: e.to_string(),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|e| io_error(path, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| io_error(Path::new("<stdout>"), e)),
    }
}

pub fn cmd_generate(
    p: u32,
    k: usize,
    n: usize,
    path: Option<&Path>,
    poly: Option<Vec<u32>>,
    d: Option<Vec<u32>>,
    out: &mut dyn std::io::Write,
) -> Result<i32, CliError> {
    let params = ConstructionParams::with_overrides(p, k, n, poly, d)?;
    let family = build_recursive(&params)?;
    let text = FamilyFile::from_family(&family).to_toml()?;
    emit(path, &text, out)?;
    if path.is_some() {
        let _ = writeln!(out, "wrote {} members", family.len());
    }
    Ok(EXIT_PASS)
}

pub fn cmd_verify(
    path: &Path,
    mode: Mode,
    tol: f64,
    sample: Option<usize>,
    annotated: Option<&Path>,
    out: &mut dyn std::io::Write,
) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let mut file = FamilyFile::from_toml(&text)?;
    let family = file.to_family()?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    if matches!(mode, Mode::Symbolic | Mode::Both) {
        reports.push(verify_family_symbolic(&family));
    }
    if matches!(mode, Mode::Numeric | Mode::Both) {
        let opts = NumericOptions {
            tol,
            sample,
            ..NumericOptions::default()
        };
        reports.push(verify_qo_numeric(&family, &opts)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    for r in &reports {
        let _ = write!(out, "{r}");
    }
    let _ = writeln!(
        out,
        "{}: {} members, {}",
        path.display(),
        family.len(),
        if passed { "PASS" } else { "FAIL" }
    );
    if let Some(dest) = annotated {
        file.verification = Some(VerificationSummary {
            mode: mode.name().to_string(),
            passed,
            reports,
        });
        std::fs::write(dest, file.to_toml()?).map_err(|e| io_error(dest, e))?;
    }
    Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
}

/// Text rendering of extracted bases; entries use 15 significant digits.
pub fn render_mub(p: u32, k: usize, bases: &[MubBasis], report: &VerificationReport) -> String {
    let d = bases.first().map_or(0, |b| b.vectors.len());
    let mut s = String::new();
    let _ = writeln!(s, "# mutually unbiased bases: p = {p}, k = {k}, dimension {d}, {} bases", bases.len());
    let _ = writeln!(s, "# each vector is one line of re,im pairs");
    for line in report.to_string().lines() {
        let _ = writeln!(s, "# {line}");
    }
    for b in bases {
        let _ = writeln!(s, "basis {}", b.label);
        for v in &b.vectors {
            let row: Vec<String> = v.iter().map(|z| format!("{:+.14e},{:+.14e}", z.re, z.im)).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
    }
    s
}

pub fn cmd_mub(
    p: u32,
    k: usize,
    path: Option<&Path>,
    tol: f64,
    poly: Option<Vec<u32>>,
    d: Option<Vec<u32>>,
    out: &mut dyn std::io::Write,
) -> Result<i32, CliError> {
    let params = ConstructionParams::with_overrides(p, k, 2, poly, d)?;
    let masas = build_masa_spread(&params)?;
    let (bases, report) = extract_and_check_mub(&masas, tol)?;
    let text = render_mub(p, k, &bases, &report);
    emit(path, &text, out)?;
    if path.is_some() {
        let _ = write!(out, "{report}");
    }
    Ok(if report.passed { EXIT_PASS } else { EXIT_FAIL })
}

fn display_label(label: &str) -> String {
    let inner = |s: &str| s.trim_start_matches(|c| c != '[').trim_matches(['[', ']']).to_string();
    match label {
        "D[inf]" => "D_∞".to_string(),
        l if l.starts_with("C[") => format!("C_{{{}}}", inner(l)),
        l if l.starts_with("D[") => format!("D_{}", inner(l)),
        l => l.to_string(),
    }
}

/// The p = 3, n = 2 spread as `span{π(X)} = { ... }` lines.
pub fn render_example() -> crate::error::Result<String> {
    let family = build_spread_2(&ConstructionParams::standard(3, 1, 2)?)?;
    let mut s = String::new();
    for m in &family.members {
        let monomials: Vec<String> = m.subspace.points()?.iter().map(notation).collect();
        let _ = writeln!(
            s,
            "span{{π({})}} = {{ {} }}",
            display_label(&m.label),
            monomials.join(", ")
        );
    }
    Ok(s)
}

pub fn cmd_example(out: &mut dyn std::io::Write) -> Result<i32, CliError> {
    emit(None, &render_example()?, out)?;
    Ok(EXIT_PASS)
}
