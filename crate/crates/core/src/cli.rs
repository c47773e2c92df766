//! The `fockna` command line: classify symbols, test extremal functions,
//! cross-check norms against the Galerkin compression and write the
//! built-in example symbols.
//!
//! Exit codes: 0 success, 2 bad input, 3 unbounded symbol, 4 not extremal,
//! 5 a verification invariant failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gallery;
use crate::kernel::{
    CompositionOperator, ExtremalityReport, KernelCombination, Side, SumKernelCheck, DEFAULT_EXTREMAL_TOL,
};
use crate::linalg::{ComplexVector, Tolerances};
use crate::schema::{CombinationFile, SymbolFile, SymbolSummary};
use crate::symbol::{analyze, AffineSymbol, SymbolReport};
use crate::truncation::{convergence_report, ConvergenceReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNBOUNDED: i32 = 3;
pub const EXIT_NOT_EXTREMAL: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;

/// Slack allowed on monotonicity and the exact-norm bound in `verify`.
const VERIFY_SLACK: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "fockna", about = "Composition operators with affine symbols on Fock spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
struct TolFlags {
    /// Relative singular-value cutoff for pseudoinverses
    #[arg(long, default_value_t = Tolerances::default().rank_cutoff_rel)]
    tol_rank: f64,
    /// Relative residual accepted for range membership
    #[arg(long, default_value_t = Tolerances::default().residual_rel)]
    tol_residual: f64,
    /// Relative slack for norm comparisons
    #[arg(long, default_value_t = Tolerances::default().compare_rel)]
    tol_compare: f64,
    /// Print machine-readable JSON on stdout
    #[arg(long)]
    json: bool,
}

impl TolFlags {
    fn tolerances(&self) -> Result<Tolerances> {
        Tolerances::new(self.tol_rank, self.tol_residual, self.tol_compare)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    /// Test C_phi* (eigen-equation for C_phi C_phi*)
    Adjoint,
    /// Test C_phi (eigen-equation for C_phi* C_phi)
    Composition,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Adjoint => Side::Adjoint,
            SideArg::Composition => Side::Composition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExampleName {
    NilpotentShift,
    WeightedShift,
    IsometryEmbedding,
    Scalar,
    Identity,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide boundedness and compactness and compute the norm
    Classify {
        symbol: PathBuf,
        #[command(flatten)]
        flags: TolFlags,
    },
    /// Print only the norm of C_phi
    Norm {
        symbol: PathBuf,
        #[command(flatten)]
        flags: TolFlags,
    },
    /// Test whether C_phi or its adjoint attains its norm at a kernel combination
    CheckExtremal {
        symbol: PathBuf,
        combination: PathBuf,
        #[arg(long, value_enum, default_value = "adjoint")]
        side: SideArg,
        /// Bound on the relative eigen-equation residual
        #[arg(long, default_value_t = DEFAULT_EXTREMAL_TOL)]
        tol: f64,
        #[command(flatten)]
        flags: TolFlags,
    },
    /// Compare the closed-form norm with Galerkin truncations
    Verify {
        symbol: PathBuf,
        #[arg(long)]
        max_degree: u32,
        /// Write the convergence table as CSV
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        flags: TolFlags,
    },
    /// Write one of the built-in symbols
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 0.5)]
        mu: f64,
        /// Real part of a (scalar) and imaginary part via --a-im
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        a_im: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b_im: f64,
        /// Directory for symbol.json, companion combinations and NOTE.txt;
        /// without it the symbol is printed on stdout
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// Everything a command produced, as emitted with `--json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub args: Vec<String>,
    pub tolerances: Tolerances,
    pub symbol: Option<SymbolSummary>,
    pub extremality: Option<ExtremalityReport>,
    pub sum_kernel_check: Option<SumKernelCheck>,
    pub convergence: Option<ConvergenceReport>,
    pub message: Option<String>,
    pub exit_status: i32,
}

impl RunReport {
    fn new(command: &str, args: &[String], tolerances: Tolerances) -> Self {
        RunReport {
            command: command.to_string(),
            args: args.to_vec(),
            tolerances,
            symbol: None,
            extremality: None,
            sum_kernel_check: None,
            convergence: None,
            message: None,
            exit_status: EXIT_OK,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_symbol(path: &Path) -> Result<AffineSymbol> {
    SymbolFile::parse(&read(path)?)
}

fn fmt_vec(v: &ComplexVector) -> String {
    let parts: Vec<String> = v
        .entries()
        .iter()
        .map(|z| {
            if z.im == 0.0 {
                format!("{:.9}", z.re)
            } else {
                format!("{:.9}{:+.9}i", z.re, z.im)
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

fn describe(sym: &AffineSymbol, r: &SymbolReport, out: &mut dyn Write) -> std::io::Result<()> {
    let mark = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "symbol: C^{} -> C^{}", sym.domain_dim(), sym.codomain_dim())?;
    writeln!(out, "||A||            = {:.12}", r.norm_a)?;
    writeln!(
        out,
        "bounded          : primal {}, dual {}, carswell {}",
        mark(r.verdict.primal),
        mark(r.verdict.dual),
        mark(r.verdict.carswell)
    )?;
    writeln!(out, "compact          : {}", mark(r.compact))?;
    if !r.bounded {
        let reason = if r.norm_a > 1.0 {
            "||A|| > 1"
        } else {
            "translation case: b not admissible"
        };
        writeln!(out, "UNBOUNDED ({reason})")?;
        return Ok(());
    }
    let (Some(v), Some(w0), Some(log_norm)) = (&r.v, &r.w0, r.log_norm) else {
        return Ok(());
    };
    writeln!(out, "v                = {}", fmt_vec(v))?;
    if let Some(u) = &r.u {
        writeln!(out, "u                = {}", fmt_vec(u))?;
    }
    writeln!(out, "w0               = {}", fmt_vec(w0))?;
    writeln!(out, "ln ||C_phi||     = {log_norm:.12}")?;
    writeln!(out, "||C_phi||        = {:.12}", log_norm.exp())?;
    if let Some(f) = r.formulas {
        writeln!(
            out,
            "log-norm formulas: via v {:.12}, via u {:.12}, via w0 {:.12}",
            f.via_v, f.via_u, f.via_w0
        )?;
    }
    writeln!(out, "C_phi* attains its norm at k_w with w = {}", fmt_vec(w0))?;
    if let Some(wc) = &r.composition_kernel_witness {
        writeln!(out, "C_phi  attains its norm at k_w with w = {}", fmt_vec(wc))?;
    }
    Ok(())
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn fail(&mut self, report: &mut RunReport, json: bool, code: i32, e: &Error) -> i32 {
        report.exit_status = code;
        report.message = Some(e.to_string());
        if json {
            let _ = writeln!(self.out, "{}", serde_json::to_string_pretty(report).unwrap_or_default());
        }
        let _ = writeln!(self.err, "error: {e}");
        code
    }

    fn emit_json(&mut self, report: &RunReport) {
        let _ = writeln!(self.out, "{}", serde_json::to_string_pretty(report).unwrap_or_default());
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let mut io = Io { out, err };
    match cli.command {
        Command::Classify { symbol, flags } => classify(&mut io, &echo, &symbol, flags, false),
        Command::Norm { symbol, flags } => classify(&mut io, &echo, &symbol, flags, true),
        Command::CheckExtremal {
            symbol,
            combination,
            side,
            tol,
            flags,
        } => check_extremal(&mut io, &echo, &symbol, &combination, side.into(), tol, flags),
        Command::Verify {
            symbol,
            max_degree,
            report,
            flags,
        } => verify(&mut io, &echo, &symbol, max_degree, report.as_deref(), flags),
        Command::Example {
            name,
            dim,
            mu,
            a,
            a_im,
            b,
            b_im,
            out_dir,
        } => {
            let built = match name {
                ExampleName::NilpotentShift => gallery::nilpotent_shift(dim),
                ExampleName::WeightedShift => gallery::weighted_shift(mu, dim),
                ExampleName::IsometryEmbedding => gallery::isometry_embedding(dim),
                ExampleName::Scalar => gallery::scalar(Complex64::new(a, a_im), Complex64::new(b, b_im)),
                ExampleName::Identity => gallery::identity(dim),
            };
            example(&mut io, name, built, out_dir.as_deref())
        }
    }
}

fn classify(io: &mut Io, echo: &[String], path: &Path, flags: TolFlags, norm_only: bool) -> i32 {
    let command = if norm_only { "norm" } else { "classify" };
    let mut report = RunReport::new(command, echo, Tolerances::default());
    let tol = match flags.tolerances() {
        Ok(t) => t,
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    report.tolerances = tol;
    let sym = match load_symbol(path) {
        Ok(s) => s,
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    let analysis = match analyze(&sym, &tol) {
        Ok(a) => a,
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    report.symbol = Some(SymbolSummary::from(&analysis));
    report.exit_status = if analysis.bounded { EXIT_OK } else { EXIT_UNBOUNDED };
    if flags.json {
        io.emit_json(&report);
    } else if norm_only {
        let _ = match analysis.log_norm {
            Some(l) => writeln!(io.out, "||C_phi|| = {:.12} (log {:.12})", l.exp(), l),
            None => writeln!(io.out, "UNBOUNDED"),
        };
    } else {
        let _ = describe(&sym, &analysis, io.out);
    }
    report.exit_status
}

fn check_extremal(
    io: &mut Io,
    echo: &[String],
    symbol: &Path,
    combination: &Path,
    side: Side,
    eigen_tol: f64,
    flags: TolFlags,
) -> i32 {
    let mut report = RunReport::new("check-extremal", echo, Tolerances::default());
    let tol = match flags.tolerances() {
        Ok(t) => t,
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    report.tolerances = tol;
    let loaded = load_symbol(symbol).and_then(|s| Ok((s, CombinationFile::parse(&read(combination)?)?)));
    let (sym, f) = match loaded {
        Ok(x) => x,
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    let op = match CompositionOperator::new(sym.clone(), &tol) {
        Ok(op) => op,
        Err(Error::Unbounded) => {
            if let Ok(a) = analyze(&sym, &tol) {
                report.symbol = Some(SymbolSummary::from(&a));
            }
            return io.fail(&mut report, flags.json, EXIT_UNBOUNDED, &Error::Unbounded);
        }
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    report.symbol = Some(SymbolSummary::from(op.report()));
    let ext = match op.extremality(&f, side, eigen_tol) {
        Ok(r) => r,
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    report.extremality = Some(ext);

    // two unit kernels with unit coefficients: also run the necessary condition
    let pair = f.terms().len() == 2
        && side == Side::Adjoint
        && f.coefficients().iter().all(|c| (c - Complex64::new(1.0, 0.0)).norm() < 1e-12)
        && f.terms().iter().all(|t| (t.point.norm() - 1.0).abs() <= 1e-12);
    if pair {
        let (x1, x2) = (&f.terms()[0].point, &f.terms()[1].point);
        match op.sum_kernel_check(x1, x2, 1e-10) {
            Ok(c) => report.sum_kernel_check = Some(c),
            Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
        }
    }
    report.exit_status = if ext.is_extremal { EXIT_OK } else { EXIT_NOT_EXTREMAL };

    if flags.json {
        io.emit_json(&report);
    } else {
        let who = match side {
            Side::Adjoint => "C_phi*",
            Side::Composition => "C_phi",
        };
        let _ = writeln!(io.out, "side                 : {who}");
        let _ = writeln!(io.out, "||C_phi||            = {:.12}", op.log_norm().exp());
        let _ = writeln!(io.out, "ln(|Tf|/|f|) - ln|T| = {:.3e}", ext.log_ratio);
        let _ = writeln!(io.out, "eigen residual (rel) = {:.3e}", ext.eigen_residual_rel);
        let verdict = if ext.is_extremal { "EXTREMAL" } else { "NOT EXTREMAL" };
        let _ = writeln!(io.out, "{verdict} (tolerance {eigen_tol:e})");
        if let Some(c) = report.sum_kernel_check {
            let _ = writeln!(
                io.out,
                "two-kernel check     : |phi(x1)| = {:.12}, |phi(x2)| = {:.12}, necessary condition {}",
                c.norm_phi_x1,
                c.norm_phi_x2,
                if c.implication_holds { "consistent" } else { "VIOLATED" }
            );
        }
    }
    report.exit_status
}

fn verify(io: &mut Io, echo: &[String], symbol: &Path, d_max: u32, csv: Option<&Path>, flags: TolFlags) -> i32 {
    let mut report = RunReport::new("verify", echo, Tolerances::default());
    let tol = match flags.tolerances() {
        Ok(t) => t,
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    report.tolerances = tol;
    let sym = match load_symbol(symbol) {
        Ok(s) => s,
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    let analysis = match analyze(&sym, &tol) {
        Ok(a) => a,
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    report.symbol = Some(SymbolSummary::from(&analysis));
    let table = match convergence_report(&sym, d_max) {
        Ok(t) => t,
        Err(e) => return io.fail(&mut report, flags.json, EXIT_INPUT, &e),
    };
    if let Some(path) = csv {
        if let Err(e) = fs::write(path, table.to_csv()) {
            let e = Error::InvalidInput(format!("{}: {e}", path.display()));
            return io.fail(&mut report, flags.json, EXIT_INPUT, &e);
        }
    }
    let monotone = table.is_monotone(VERIFY_SLACK);
    let below = table.is_bounded_by_exact(VERIFY_SLACK);
    report.exit_status = if !analysis.bounded {
        EXIT_UNBOUNDED
    } else if monotone && below {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    if !monotone {
        report.message = Some("truncated norms decreased".into());
    } else if !below {
        report.message = Some("truncated norm exceeded the closed-form norm".into());
    }

    if flags.json {
        report.convergence = Some(table);
        io.emit_json(&report);
    } else {
        let _ = writeln!(io.out, "{:>4}  {:>22}  {:>22}  {:>12}", "d", "truncated", "exact", "gap");
        for r in &table.rows {
            let exact = r.exact_norm.map_or("-".to_string(), |e| format!("{e:.15}"));
            let gap = r.relative_gap.map_or("-".to_string(), |g| format!("{g:.3e}"));
            let _ = writeln!(io.out, "{:>4}  {:>22.15}  {:>22}  {:>12}", r.d, r.truncated_norm, exact, gap);
        }
        let status = match report.exit_status {
            EXIT_OK => "PASS: truncated norms are monotone and bounded by the closed form".to_string(),
            EXIT_UNBOUNDED => "UNBOUNDED: no closed-form norm; truncated norms keep growing".to_string(),
            _ => format!("FAIL: {}", report.message.clone().unwrap_or_default()),
        };
        let _ = writeln!(io.out, "{status}");
        report.convergence = Some(table);
    }
    report.exit_status
}

const EXAMPLE_NOTE: &str = "\
These symbols are finite-dimensional truncations of the shift examples on l^2(N).
The truncation keeps the identities the examples depend on exactly:
  nilpotent-shift:    A e_k = e_{k+1}, A e_dim = 0, b = e_1, A* b = 0, ||C_phi|| = e^{1/2}
  weighted-shift:     A e_1 = mu e_2, A e_k = e_{k+1}, b = (1, sqrt(1-mu^2)/mu, 0, ...),
                      (I - A*A)^{1/2} e_1 = A* b, ||C_phi||^2 = e^{1 + 1/mu^2}
  isometry-embedding: A = [I_n; 0] from C^n to C^{n+1}, b = e_{n+1}, A*A = I, A* b = 0
witness.json holds K_{w0}, at which C_phi* attains its norm; pair.json (shifts only)
holds the two-kernel combination K_{e_i} + K_{e_{i+1}} discussed with these examples.
";

fn example(io: &mut Io, name: ExampleName, built: Result<AffineSymbol>, out_dir: Option<&Path>) -> i32 {
    let sym = match built {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let symbol_json = serde_json::to_string_pretty(&SymbolFile::from_symbol(&sym)).expect("serializable");
    let Some(dir) = out_dir else {
        let _ = writeln!(io.out, "{symbol_json}");
        return EXIT_OK;
    };

    let mut files: Vec<(String, String)> = vec![("symbol.json".into(), symbol_json), ("NOTE.txt".into(), EXAMPLE_NOTE.into())];
    let n = sym.domain_dim();
    let pair_points = match name {
        ExampleName::NilpotentShift if n >= 2 => Some((0, 1)),
        ExampleName::WeightedShift if n >= 3 => Some((1, 2)),
        _ => None,
    };
    if let Some((i, j)) = pair_points {
        let pair = KernelCombination::sum_of_kernels(&[ComplexVector::unit(n, i), ComplexVector::unit(n, j)]).expect("unit points");
        files.push(("pair.json".into(), serde_json::to_string_pretty(&CombinationFile::from_combination(&pair)).expect("serializable")));
    }
    if let Ok(report) = analyze(&sym, &Tolerances::default()) {
        if let Some(w0) = report.w0 {
            if let Ok(k) = KernelCombination::kernel(w0) {
                files.push(("witness.json".into(), serde_json::to_string_pretty(&CombinationFile::from_combination(&k)).expect("serializable")));
            }
        }
    }
    if let Err(e) = fs::create_dir_all(dir) {
        let _ = writeln!(io.err, "error: {}: {e}", dir.display());
        return EXIT_INPUT;
    }
    for (file, body) in files {
        let path = dir.join(&file);
        if let Err(e) = fs::write(&path, body) {
            let _ = writeln!(io.err, "error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
        let _ = writeln!(io.out, "wrote {}", path.display());
    }
    EXIT_OK
}
