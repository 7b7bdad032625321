//! The `mdsrel` command line: tables, rate curves, mode comparison,
//! verification and simulation, all written as CSV.

mod cache;
mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

pub use cache::{TableCache, HEADER as CACHE_HEADER};
pub use verify::{run_suites, Suite, SuiteOutcome, SuiteResult, MC_SEED, MC_SIGMAS, MC_TRIALS, MC_WORKERS, SUITES};

use crate::enumerator::{weight_distribution, CodeParams, WdMethod};
use crate::error::Error;
use crate::oracle::{monte_carlo, rs_systematic, FiniteField};
use crate::rates::{
    curve_of, derive_channel, float_grid, profile, EventRates, Level, Mode, Quantity, RateModel, RateTables, Scalar,
};
use crate::sphere::ball_volume;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_ASSERT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "mdsrel", version, about = "Exact error-event rates of MDS codes under bounded-distance decoding")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Input-redundancy weight enumerator as `i,j,A_ij`.
    Irwe(TableArgs),
    /// Weight distribution as `r,A_r`, cross-checked by three formulas.
    Wdist(TableArgs),
    /// Sphere coverage table summed over all nonzero codewords.
    Sphere(TableArgs),
    /// One event probability along a grid of channel error rates.
    Curve(CurveArgs),
    /// All word-level event probabilities and the partition residual.
    Budget(BudgetArgs),
    /// Formula versus brute-force suites.
    Verify(VerifyArgs),
    /// Literal and corrected evaluations side by side.
    DiffModes(DiffArgs),
    /// Monte Carlo transmission over a Reed-Solomon code.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Field order; inferred as 2^b when only --b is given.
    #[arg(long)]
    pub q: Option<u64>,
    /// Bits per symbol; inferred when --q is a power of two.
    #[arg(long)]
    pub b: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Table cache directory.
    #[arg(long, env = "MDSREL_CACHE")]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 1e-4)]
    pub p_min: f64,
    #[arg(long, default_value_t = 1e-1)]
    pub p_max: f64,
    #[arg(long, default_value_t = 30)]
    pub points: usize,
    /// Geometric instead of linear spacing.
    #[arg(long)]
    pub log: bool,
    #[arg(long, value_enum, default_value_t = Arithmetic::Float)]
    pub arithmetic: Arithmetic,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum, default_value_t = QuantityArg::Fn)]
    pub quantity: QuantityArg,
    #[arg(long, value_enum, default_value_t = LevelArg::Bit)]
    pub level: LevelArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
    pub mode: ModeArg,
    #[arg(long = "assert", value_enum)]
    pub assertions: Vec<Assertion>,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
    pub mode: ModeArg,
    #[arg(long = "assert", value_enum)]
    pub assertions: Vec<Assertion>,
}

#[derive(Debug, Clone, Args)]
pub struct DiffArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum, default_value_t = QuantityArg::Wc)]
    pub quantity: QuantityArg,
    #[arg(long, value_enum, default_value_t = LevelArg::Word)]
    pub level: LevelArg,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Run every suite even after a failure.
    #[arg(long)]
    pub keep_going: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, default_value_t = 0.02)]
    pub p_min: f64,
    #[arg(long)]
    pub p_max: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub points: usize,
    #[arg(long)]
    pub log: bool,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Arithmetic {
    Float,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Ct,
    Rc,
    Fn,
    Wc,
    Fp,
    Ped,
    Budget,
}

impl QuantityArg {
    fn quantity(self) -> Option<Quantity> {
        Some(match self {
            Self::Ct => Quantity::Ct,
            Self::Rc => Quantity::Rc,
            Self::Fn => Quantity::Fn,
            Self::Wc => Quantity::Wc,
            Self::Fp => Quantity::Fp,
            Self::Ped => Quantity::Ped,
            Self::Budget => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Word,
    Symbol,
    Bit,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Word => Level::Word,
            LevelArg::Symbol => Level::Symbol,
            LevelArg::Bit => Level::Bit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Literal,
    Corrected,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Literal => Mode::Literal,
            ModeArg::Corrected => Mode::Corrected,
        }
    }
}

/// Curve properties checked after evaluation; a failure exits with 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Assertion {
    /// Strictly increasing along the grid.
    Monotone,
    /// Maximum strictly inside the grid, above both ends.
    InteriorMax,
    /// Below the channel error rate at every point.
    BelowP,
    /// Budget residual exactly zero (rational) or within 1e-12 (float).
    Partition,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams(_)
            | Error::ProbabilityOutOfRange(_)
            | Error::BitLevelUnavailable
            | Error::OutOfRange { .. }
            | Error::UnsupportedField(_)
            | Error::TooLarge(_) => EXIT_USAGE,
            Error::FormulaInconsistency(_) => EXIT_ASSERT,
            Error::NotMds(_) | Error::Table(_) | Error::Io(_) => EXIT_VERIFY,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

type CliResult<T = ()> = Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to `stderr`; CSV goes to `--out` or
/// `stdout`.
pub fn run(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "mdsrel: {}", e.message);
            e.code
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult {
    let output = match &command {
        Command::Irwe(a) | Command::Wdist(a) | Command::Sphere(a) => a.output.clone(),
        Command::Curve(a) => a.output.clone(),
        Command::Budget(a) => a.output.clone(),
        Command::Verify(a) => a.output.clone(),
        Command::DiffModes(a) => a.output.clone(),
        Command::Simulate(a) => a.output.clone(),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = output.workers {
        if w == 0 {
            return Err(CliError::usage("--workers must be positive"));
        }
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| CliError::usage(e.to_string()))?;
    let mut text = String::new();
    let status = pool.install(|| match command {
        Command::Irwe(a) => cmd_irwe(&a, &mut text),
        Command::Wdist(a) => cmd_wdist(&a, &mut text),
        Command::Sphere(a) => cmd_sphere(&a, &mut text),
        Command::Curve(a) => cmd_curve(&a, &mut text),
        Command::Budget(a) => cmd_budget(&a, &mut text),
        Command::Verify(a) => cmd_verify(&a, &mut text),
        Command::DiffModes(a) => cmd_diff_modes(&a, &mut text),
        Command::Simulate(a) => cmd_simulate(&a, &mut text),
    });
    // output is written even when an assertion fails, so it can be inspected
    match &output.out {
        Some(path) if !text.is_empty() => std::fs::write(path, &text)?,
        _ => stdout.write_all(text.as_bytes())?,
    }
    let _ = stderr.flush();
    status
}

/// Code parameters from `--n --k --q --b`.
pub fn code_params(args: &CodeArgs) -> CliResult<CodeParams> {
    let q = match (args.q, args.b) {
        (Some(q), Some(b)) => {
            if 1u64.checked_shl(b) != Some(q) {
                return Err(CliError::usage(format!("--q {q} is not 2^{b}")));
            }
            q
        }
        (Some(q), None) => q,
        (None, Some(b)) if (1..=63).contains(&b) => 1u64 << b,
        (None, Some(b)) => return Err(CliError::usage(format!("--b {b} out of range"))),
        (None, None) => return Err(CliError::usage("one of --q or --b is required")),
    };
    let b = args.b.or_else(|| q.is_power_of_two().then(|| q.trailing_zeros()));
    Ok(CodeParams::new(args.n, args.k, q, b)?)
}

fn rate_tables(params: CodeParams, output: &OutputArgs, with_cover: bool) -> CliResult<RateTables> {
    Ok(match &output.cache {
        Some(dir) => TableCache::new(dir)?.tables(params, with_cover)?,
        None => RateTables::new(params),
    })
}

fn cmd_irwe(a: &TableArgs, out: &mut String) -> CliResult {
    let params = code_params(&a.code)?;
    let tables = rate_tables(params, &a.output, false)?;
    let _ = writeln!(out, "i,j,A_ij");
    for (i, row) in tables.irwe.rows().iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let _ = writeln!(out, "{i},{j},{v}");
        }
    }
    let total = tables.irwe.total();
    let expect = num_traits::pow(BigInt::from(params.q), params.k);
    match tables.irwe.check_invariants() {
        Ok(()) => {
            let _ = writeln!(out, "# sum={total} q^k={expect} ok");
            Ok(())
        }
        Err(e) => {
            let _ = writeln!(out, "# FAILED: {e}");
            Err(e.into())
        }
    }
}

fn cmd_wdist(a: &TableArgs, out: &mut String) -> CliResult {
    let params = code_params(&a.code)?;
    let irwe = rate_tables(params, &a.output, false)?.irwe;
    let marginal = irwe.weight_distribution();
    let _ = writeln!(out, "r,A_r");
    for (r, v) in marginal.iter().enumerate() {
        let _ = writeln!(out, "{r},{v}");
    }
    let disagree: Vec<_> = [WdMethod::MdsFormula, WdMethod::AlternatingSum]
        .into_iter()
        .filter(|&m| weight_distribution(&params, m) != marginal)
        .collect();
    if disagree.is_empty() {
        let _ = writeln!(out, "# three formulas agree");
        if let Err(e) = irwe.check_invariants() {
            let _ = writeln!(out, "# FAILED: {e}");
            return Err(e.into());
        }
        Ok(())
    } else {
        let _ = writeln!(out, "# FAILED: {disagree:?} differ from the IRWE marginal");
        Err(CliError {
            code: EXIT_ASSERT,
            message: format!("{disagree:?} differ from the IRWE marginal"),
        })
    }
}

fn cmd_sphere(a: &TableArgs, out: &mut String) -> CliResult {
    let params = code_params(&a.code)?;
    let tables = rate_tables(params, &a.output, true)?;
    let _ = writeln!(out, "r1,r2,words,info_weighted,changes");
    for (r1, row) in tables.cover().rows().iter().enumerate() {
        for (r2, c) in row.iter().enumerate() {
            if !c.words.is_zero() {
                let _ = writeln!(out, "{r1},{r2},{},{},{}", c.words, c.info_weighted, c.changes);
            }
        }
    }
    let _ = writeln!(out, "# ball_volume={}", ball_volume(&params));
    Ok(())
}

/// A point of the p grid: its printed form and value.
#[derive(Debug, Clone)]
struct GridPoint {
    shown: String,
    value: f64,
}

fn grid(g: &GridArgs, min_points: usize) -> CliResult<Vec<GridPoint>> {
    let valid = |p: f64| (0.0..=1.0).contains(&p);
    if !valid(g.p_min) || !valid(g.p_max) {
        return Err(CliError::usage("grid bounds must lie in [0, 1]"));
    }
    if g.points < min_points || (g.points > 1 && g.p_min >= g.p_max) {
        return Err(CliError::usage(format!("need --points >= {min_points} and --p-min < --p-max")));
    }
    if g.log && g.p_min <= 0.0 {
        return Err(CliError::usage("--log needs --p-min > 0"));
    }
    Ok(float_grid(g.p_min, g.p_max, g.points, g.log)
        .into_iter()
        .map(|p| {
            // 13 significant digits drop the spacing arithmetic's noise; the
            // rational path then evaluates at exactly the printed decimal
            let value: f64 = format!("{p:.12e}").parse().unwrap();
            GridPoint {
                shown: format!("{value:e}"),
                value,
            }
        })
        .collect())
}

/// 17 significant digits, exponent form.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Exact value of a decimal literal such as `1.5e-3`.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let v = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    Some(if neg { -v } else { v })
}

trait Shown: Scalar {
    fn shown(&self) -> String;
    fn at(p: &GridPoint) -> Self;
    fn abs_val(&self) -> Self;
}

impl Shown for f64 {
    fn shown(&self) -> String {
        format_float(*self)
    }
    fn at(p: &GridPoint) -> Self {
        p.value
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Shown for BigRational {
    fn shown(&self) -> String {
        self.to_string()
    }
    fn at(p: &GridPoint) -> Self {
        parse_decimal(&p.shown).expect("grid points are printed decimals")
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

fn check_assertions<S: Shown>(assertions: &[Assertion], points: &[(S, S)]) -> CliResult {
    let mut failed = Vec::new();
    for &a in assertions {
        let values: Vec<&S> = points.iter().map(|(_, v)| v).collect();
        let ok = match a {
            Assertion::Monotone => values.windows(2).all(|w| w[0] < w[1]),
            Assertion::InteriorMax => {
                let top = (0..values.len()).fold(0, |best, i| if values[i] > values[best] { i } else { best });
                top > 0 && top + 1 < values.len() && values[0] < values[top] && values[values.len() - 1] < values[top]
            }
            Assertion::BelowP => points.iter().all(|(p, v)| v < p),
            Assertion::Partition => {
                return Err(CliError::usage("--assert partition applies to budgets"));
            }
        };
        if !ok {
            failed.push(format!("{a:?}"));
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_ASSERT,
            message: format!("assertion failed: {}", failed.join(", ")),
        })
    }
}

fn cmd_curve(a: &CurveArgs, out: &mut String) -> CliResult {
    let Some(quantity) = a.quantity.quantity() else {
        let budget = BudgetArgs {
            code: a.code.clone(),
            grid: a.grid.clone(),
            output: a.output.clone(),
            mode: a.mode,
            assertions: a.assertions.clone(),
        };
        return cmd_budget(&budget, out);
    };
    let params = code_params(&a.code)?;
    let points = grid(&a.grid, 2)?;
    let needs_cover = matches!(quantity, Quantity::Wc | Quantity::Fp | Quantity::Ped);
    let tables = rate_tables(params, &a.output, needs_cover)?;
    let prof = profile(&tables, quantity, a.level.into(), a.mode.into())?;
    match a.grid.arithmetic {
        Arithmetic::Float => curve_csv::<f64>(&params, &prof, &points, &a.assertions, out),
        Arithmetic::Rational => curve_csv::<BigRational>(&params, &prof, &points, &a.assertions, out),
    }
}

fn curve_csv<S: Shown>(
    params: &CodeParams,
    prof: &crate::rates::RateProfile,
    points: &[GridPoint],
    assertions: &[Assertion],
    out: &mut String,
) -> CliResult {
    let ps: Vec<S> = points.iter().map(S::at).collect();
    let values = curve_of(params, prof, &ps)?;
    let _ = writeln!(out, "p,value");
    for (gp, (_, v)) in points.iter().zip(&values) {
        let _ = writeln!(out, "{},{}", gp.shown, v.shown());
    }
    check_assertions(assertions, &values)
}

fn cmd_budget(a: &BudgetArgs, out: &mut String) -> CliResult {
    let params = code_params(&a.code)?;
    let points = grid(&a.grid, 2)?;
    let tables = rate_tables(params, &a.output, true)?;
    let model = RateModel::build(&tables, a.mode.into())?;
    match a.grid.arithmetic {
        Arithmetic::Float => budget_csv::<f64>(&model, &points, &a.assertions, 1e-12, out),
        Arithmetic::Rational => budget_csv::<BigRational>(&model, &points, &a.assertions, 0.0, out),
    }
}

fn budget_csv<S: Shown>(
    model: &RateModel,
    points: &[GridPoint],
    assertions: &[Assertion],
    tolerance: f64,
    out: &mut String,
) -> CliResult {
    let rows: Vec<EventRates<S>> = points
        .par_iter()
        .map(|gp| Ok(model.budget(&derive_channel(S::at(gp), &model.params)?)))
        .collect::<Result<_, Error>>()?;
    let _ = writeln!(out, "p,ct,rc,fn,wc,fp,ped,residual");
    for (gp, r) in points.iter().zip(&rows) {
        let cols: Vec<String> = r.word_rates().iter().map(|(_, v)| v.shown()).collect();
        let _ = writeln!(out, "{},{},{}", gp.shown, cols.join(","), r.residual.shown());
    }
    let mut failed = Vec::new();
    for &a in assertions {
        let ok = match a {
            Assertion::Partition => rows.iter().all(|r| r.residual.abs_val().to_f64() <= tolerance),
            other => {
                let series: Vec<(S, S)> = rows.iter().map(|r| (r.p.clone(), r.residual.clone())).collect();
                check_assertions(&[other], &series).is_ok()
            }
        };
        if !ok {
            failed.push(format!("{a:?}"));
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_ASSERT,
            message: format!("assertion failed: {}", failed.join(", ")),
        })
    }
}

fn cmd_diff_modes(a: &DiffArgs, out: &mut String) -> CliResult {
    let quantity = match a.quantity {
        QuantityArg::Wc => Quantity::Wc,
        QuantityArg::Ped => Quantity::Ped,
        other => {
            return Err(CliError::usage(format!(
                "{other:?} is identical in both modes; diff-modes takes wc or ped"
            )))
        }
    };
    let params = code_params(&a.code)?;
    let points = grid(&a.grid, 2)?;
    let tables = rate_tables(params, &a.output, true)?;
    let level: Level = a.level.into();
    let literal = profile(&tables, quantity, level, Mode::Literal)?;
    let corrected = profile(&tables, quantity, level, Mode::Corrected)?;
    match a.grid.arithmetic {
        Arithmetic::Float => diff_csv::<f64>(&params, &literal, &corrected, &points, out),
        Arithmetic::Rational => diff_csv::<BigRational>(&params, &literal, &corrected, &points, out),
    }
}

fn diff_csv<S: Shown>(
    params: &CodeParams,
    literal: &crate::rates::RateProfile,
    corrected: &crate::rates::RateProfile,
    points: &[GridPoint],
    out: &mut String,
) -> CliResult {
    let ps: Vec<S> = points.iter().map(S::at).collect();
    let lit = curve_of(params, literal, &ps)?;
    let cor = curve_of(params, corrected, &ps)?;
    let _ = writeln!(out, "p,literal,corrected,abs_diff,rel_diff");
    for ((gp, (_, l)), (_, c)) in points.iter().zip(&lit).zip(&cor) {
        let abs = l.sub(c).abs_val();
        let rel = if !c.vanishes() {
            abs.div(&c.abs_val()).shown()
        } else if abs.vanishes() {
            S::zeroed().shown()
        } else {
            "inf".to_string()
        };
        let _ = writeln!(out, "{},{},{},{},{}", gp.shown, l.shown(), c.shown(), abs.shown(), rel);
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut String) -> CliResult {
    let results = run_suites(a.keep_going);
    let mut failures = 0;
    for r in &results {
        let (tag, detail) = match &r.outcome {
            Ok(s) => ("pass", s),
            Err(s) => {
                failures += 1;
                ("FAIL", s)
            }
        };
        let _ = writeln!(out, "[{tag}] {} ({:.2}s): {detail}", r.name, r.elapsed.as_secs_f64());
    }
    let skipped = SUITES.len() - results.len();
    let passed = results.len() - failures;
    let _ = writeln!(out, "{passed} suites passed, {failures} failed, {skipped} not run");
    if failures == 0 {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_VERIFY,
            message: format!("{failures} verification suite(s) failed"),
        })
    }
}

fn cmd_simulate(a: &SimulateArgs, out: &mut String) -> CliResult {
    let params = code_params(&a.code)?;
    if params.b.is_none() {
        return Err(Error::BitLevelUnavailable.into());
    }
    let field = FiniteField::new(params.q)?;
    let code = rs_systematic(field, params.n, params.k)?;
    let g = GridArgs {
        p_min: a.p_min,
        p_max: a.p_max.unwrap_or(a.p_min),
        points: a.points,
        log: a.log,
        arithmetic: Arithmetic::Float,
    };
    let points = grid(&g, 1)?;
    let model = RateModel::build(&RateTables::new(code.params), Mode::Corrected)?;
    let workers = a.output.workers.unwrap_or(MC_WORKERS);
    let _ = writeln!(out, "# trials={} seed={} workers={workers}", a.trials, a.seed);
    let _ = writeln!(out, "p,quantity,count,rate,std_error,analytic,z");
    for gp in &points {
        let report = monte_carlo(&code, gp.value, a.trials, a.seed, workers)?;
        let analytic = model.budget(&derive_channel(gp.value, &code.params)?);
        for (q, &want) in analytic.word_rates() {
            let se = report.standard_error_at(want);
            let got = report.rate(q);
            let z = if se > 0.0 { (got - want) / se } else { 0.0 };
            let _ = writeln!(
                out,
                "{},{q},{},{},{},{},{}",
                gp.shown,
                report.count(q),
                format_float(got),
                format_float(se),
                format_float(want),
                format_float(z)
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_parse_exactly() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(parse_decimal("0.05"), Some(r(1, 20)));
        assert_eq!(parse_decimal("1.0000000000000000e-4"), Some(r(1, 10_000)));
        assert_eq!(parse_decimal("-2.5E1"), Some(r(-25, 1)));
        assert_eq!(parse_decimal("3"), Some(r(3, 1)));
        assert_eq!(parse_decimal("e5"), None);
        assert_eq!(parse_decimal("x"), None);
    }

    #[test]
    fn float_format_has_seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(1e-4), "1.0000000000000000e-4");
    }

    #[test]
    fn bit_width_inference() {
        let args = |q, b| CodeArgs { n: 7, k: 3, q, b };
        assert_eq!(code_params(&args(Some(8), None)).unwrap().b, Some(3));
        assert_eq!(code_params(&args(None, Some(3))).unwrap().q, 8);
        assert_eq!(code_params(&args(Some(7), None)).unwrap().b, None);
        assert_eq!(code_params(&args(Some(8), Some(2))).unwrap_err().code, EXIT_USAGE);
        assert_eq!(code_params(&args(None, None)).unwrap_err().code, EXIT_USAGE);
    }
}
