//! Command-line front end for `besselzeta-core`.
//!
//! [`run`] parses arguments, dispatches to a subcommand and returns the
//! process exit code: 0 when every check passes, 1 when some check fails,
//! 2 on a usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use besselzeta_core::algebra::Rational;
use besselzeta_core::cosets::{index_bruteforce, index_formula};
use besselzeta_core::hilbert::{classify_place, hilbert_symbol, Place, QuadSpaceData};
use besselzeta_core::lfactor::local_lfactor;
use besselzeta_core::sugano::{bessel_table, PlaceCase, PlaceData, SatakeData};
use besselzeta_core::verifier::{
    check_sample, draw_samples, finish_report, verify, Convention, Mode, VerifyConfig, VerifyReport,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

mod json;

pub use json::report_json;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "besselzeta",
    version,
    about = "Exact checks of the unramified local zeta integral for GSp(4)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the local integral identities and write a report.
    Verify(VerifyArgs),
    /// Print Bessel coefficients phi(h(l, m)) for l + m up to a bound.
    BesselCoeffs(BesselArgs),
    /// Print the twisted degree-five local L-factor.
    Lfactor(LfactorArgs),
    /// Hilbert symbol (a, b)_v; v is a prime or `real`.
    #[command(allow_negative_numbers = true)]
    Hilbert { a: Rational, b: Rational, v: Place },
    /// Classify the finite place p for the quadratic space with discriminant rho.
    #[command(allow_negative_numbers = true)]
    Classify { rho: Rational, p: u64 },
    /// Coset index [H(O) : H^m(O)] by brute force, against the closed formula.
    #[command(allow_negative_numbers = true)]
    CosetIndex {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        rho: i64,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseArg {
    Inert,
    Split,
}

impl From<CaseArg> for PlaceCase {
    fn from(c: CaseArg) -> PlaceCase {
        match c {
            CaseArg::Inert => PlaceCase::Inert,
            CaseArg::Split => PlaceCase::Split,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Symbolic,
    Univariate,
    Series,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Symbolic => Mode::Symbolic,
            ModeArg::Univariate => Mode::Univariate,
            ModeArg::Series => Mode::Series,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Auto,
    Proof,
    #[value(name = "paper-A", alias = "paper-a")]
    PaperA,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    case: CaseArg,
    #[arg(long, value_enum, default_value = "univariate")]
    mode: ModeArg,
    /// Truncation order in T for series mode.
    #[arg(long, default_value_t = 10)]
    order: usize,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Residue field sizes to sample from (perfect squares).
    #[arg(long = "q", value_delimiter = ',', default_value = "4,9,25,49")]
    q_values: Vec<u64>,
    /// Where to write the JSON report.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Split-case coset enumeration for series mode.
    #[arg(long, value_enum, default_value = "auto")]
    convention: ConventionArg,
    /// Flip the sign of one closed-form factor (testing aid).
    #[arg(long, hide = true)]
    tamper: Option<usize>,
}

/// Exact values for the Satake parameter; symbolic when omitted.
#[derive(Args, Debug)]
struct ParamArgs {
    /// chi0(p), the central part of the Satake parameter.
    #[arg(long)]
    c: Option<Rational>,
    /// Square root of chi1(p).
    #[arg(long)]
    a: Option<Rational>,
    /// Square root of chi2(p).
    #[arg(long)]
    b: Option<Rational>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct BesselArgs {
    #[arg(long, value_enum)]
    case: CaseArg,
    /// Largest l + m printed.
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    #[command(flatten)]
    params: ParamArgs,
    /// Residue field size (a perfect square).
    #[arg(long)]
    q: Option<Rational>,
    /// nu(Pi_1) in the split case.
    #[arg(long)]
    u: Option<Rational>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct LfactorArgs {
    /// Value of chi_T at the uniformizer: -1 inert, 1 split.
    #[arg(long, default_value_t = -1, value_parser = parse_twist)]
    twist: i8,
    #[command(flatten)]
    params: ParamArgs,
}

fn parse_twist(s: &str) -> Result<i8, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err("twist must be 1 or -1".into()),
    }
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

/// Parses `argv` (including the program name) and runs the subcommand,
/// printing to standard output.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock())
}

/// As [`run`], writing normal output to `out`. Errors go to standard error.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Verify(args) => cmd_verify(args, out),
        Command::BesselCoeffs(args) => cmd_bessel(args, out),
        Command::Lfactor(args) => cmd_lfactor(args, out),
        Command::Hilbert { a, b, v } => {
            writeln!(out, "{}", hilbert_symbol(&a, &b, v)?)?;
            Ok(EXIT_PASS)
        }
        Command::Classify { rho, p } => {
            let class = classify_place(&QuadSpaceData::new(rho)?, p)?;
            writeln!(out, "{}", class.name())?;
            Ok(EXIT_PASS)
        }
        Command::CosetIndex { p, rho, m } => {
            let brute = index_bruteforce(p, rho, m)?;
            let e = besselzeta_core::hilbert::legendre(&rho.into(), p);
            let formula = index_formula(p, e, m);
            writeln!(out, "brute-force {brute}")?;
            writeln!(out, "formula {formula}")?;
            Ok(if brute == formula {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
    }
}

/// Builds the verify configuration from parsed flags.
fn verify_config(args: &VerifyArgs) -> VerifyConfig {
    let mut cfg = VerifyConfig::new(args.case.into(), args.mode.into());
    cfg.order = args.order;
    cfg.samples = args.samples as usize;
    cfg.seed = args.seed;
    cfg.q_values = args.q_values.clone();
    cfg.convention = match args.convention {
        ConventionArg::Auto => None,
        ConventionArg::Proof => Some(Convention::Proof),
        ConventionArg::PaperA => Some(Convention::PaperA),
    };
    cfg.tamper = args.tamper;
    cfg
}

/// Like [`verify`], with samples checked in parallel. The report is
/// identical to the sequential one.
pub fn verify_parallel(cfg: &VerifyConfig) -> Result<VerifyReport, besselzeta_core::Error> {
    if cfg.mode == Mode::Symbolic {
        return verify(cfg);
    }
    let samples = draw_samples(cfg)?;
    let per_sample = samples
        .par_iter()
        .enumerate()
        .map(|(i, s)| check_sample(cfg, s, i))
        .collect();
    Ok(finish_report(cfg, &samples, per_sample))
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> CliResult {
    let cfg = verify_config(&args);
    let report = verify_parallel(&cfg)?;
    write_summary(&report, out)?;
    if let Some(path) = &args.output {
        let mut text = serde_json::to_string_pretty(&report_json(&report))?;
        text.push('\n');
        std::fs::write(path, text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    }
    Ok(if report.all_pass() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn write_summary(r: &VerifyReport, out: &mut dyn Write) -> std::io::Result<()> {
    write!(out, "case {}, mode {}", r.case.name(), r.mode)?;
    if r.mode == Mode::Series {
        write!(out, ", order {}", r.order)?;
    }
    if r.mode != Mode::Symbolic {
        write!(out, ", seed {}", r.seed)?;
    }
    writeln!(out)?;
    for (c, ok) in &r.conventions {
        writeln!(
            out,
            "convention {c}: {}",
            if *ok { "matches" } else { "differs" }
        )?;
    }
    for c in &r.checks {
        if c.pass {
            writeln!(out, "PASS {}", c.name)?;
        } else if let Some(m) = &c.first_mismatch {
            writeln!(
                out,
                "FAIL {}: first mismatch at T^{}: {} vs {}",
                c.name, m.t_power, m.lhs, m.rhs
            )?;
        } else {
            let err = c.error.as_deref().unwrap_or("unknown");
            writeln!(out, "FAIL {}: {err}", c.name)?;
        }
    }
    let failed = r.failures().count();
    if failed == 0 {
        writeln!(out, "all {} checks passed", r.checks.len())
    } else {
        writeln!(out, "{failed} of {} checks failed", r.checks.len())
    }
}

fn satake(params: &ParamArgs) -> Result<SatakeData, CliError> {
    match (&params.c, &params.a, &params.b) {
        (None, None, None) => Ok(SatakeData::symbolic()),
        (Some(c), Some(a), Some(b)) => Ok(SatakeData::from_roots(c.clone(), a.clone(), b.clone())?),
        _ => Err(CliError("give all of --c, --a, --b or none".into())),
    }
}

fn cmd_bessel(args: BesselArgs, out: &mut dyn Write) -> CliResult {
    let case: PlaceCase = args.case.into();
    let s = satake(&args.params)?;
    let mut p = match case {
        PlaceCase::Inert => PlaceData::symbolic_inert(),
        PlaceCase::Split => PlaceData::symbolic_split(),
    };
    if let Some(q) = &args.q {
        let u =
            match case {
                PlaceCase::Split => Some(args.u.clone().ok_or_else(|| {
                    CliError("--u is required with --q in the split case".into())
                })?),
                PlaceCase::Inert => None,
            };
        p = PlaceData::exact(q, case.legendre(), u)?;
    } else if args.u.is_some() {
        return Err(CliError("--u needs --q".into()));
    }
    let d = args.max_degree;
    let table = bessel_table(&s, &p, d, d)?;
    for total in 0..=d {
        for ell in 0..=total {
            let m = total - ell;
            writeln!(out, "phi(h({ell}, {m})) = {}", table.coeff(m, ell))?;
        }
    }
    Ok(EXIT_PASS)
}

fn cmd_lfactor(args: LfactorArgs, out: &mut dyn Write) -> CliResult {
    let s = satake(&args.params)?;
    writeln!(out, "{}", local_lfactor(&s, args.twist)?)?;
    Ok(EXIT_PASS)
}
