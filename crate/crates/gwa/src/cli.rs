//! Command-line interface.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gwa_core::asymptotics::FitBasis;
use gwa_core::geometry::{polygon_of, DivisorClass, Surface};
use gwa_core::kontsevich::count_plane;
use gwa_core::tropical::LambdaFunctional;
use gwa_core::CountSeries;
use serde::Serialize;

use crate::formats::{parse_class, parse_surface, series_from_json, series_to_csv, series_to_json, PolygonFile};
use crate::parallel::{resolve_threads, write_trace, Checkpoint};
use crate::plot::render_svg;
use crate::suite::{
    compute_series, default_mode, factorial_report, lambda_report, monotone_report, oracle_report, Engine, TropicalMode,
};

#[derive(Debug, Parser)]
#[command(name = "gwa", version, about = "Counts of rational curves on rational surfaces and their growth")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count rational curves in one class.
    Count(CountArgs),
    /// Counts of nD for n = 1..=n_max.
    Series(SeriesArgs),
    /// Fit log N_n against n log n and n.
    Fit(FitArgs),
    /// Run a verification check; exit status 0 iff it passes.
    Verify(VerifyArgs),
    /// Dump the Newton polygon of a class on a toric surface.
    Polygon(ClassArgs),
    /// Plot log N_n / (n log n) from a series file as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineKind {
    Recursion,
    Tropical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Monotone,
    Factorial,
    Lambda,
    Oracle,
}

#[derive(Debug, Clone, Args)]
pub struct ClassArgs {
    /// plane, blown_plane:<k> or hirzebruch:<s>
    #[arg(long, default_value = "plane", value_parser = parse_surface)]
    pub surface: Surface,
    /// Comma-separated coefficients: d | d,d1..dk | a,b (for aF + bE)
    #[arg(long, default_value = "1", value_parser = parse_class)]
    pub class: DivisorClass,
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    /// Linear order used for lattice paths
    #[arg(long, default_value = "x-y")]
    pub lambda: LambdaFunctional,
    /// Worker threads (falls back to GWA_THREADS, then all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    /// Resumable JSON file of partial sums
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
}

impl EngineArgs {
    fn engine(&self) -> Result<Engine> {
        let mut engine = Engine::new(self.lambda, resolve_threads(self.threads));
        if let Some(path) = &self.checkpoint {
            let ck = Checkpoint::open(path).with_context(|| format!("opening checkpoint {}", path.display()))?;
            engine.checkpoint = Some(Arc::new(ck));
        }
        Ok(engine)
    }
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Defaults to recursion on the plane and tropical elsewhere
    #[arg(long, value_enum)]
    pub engine: Option<EngineKind>,
    /// Print the raw weighted path total instead of the irreducible count
    #[arg(long)]
    pub path_total: bool,
    /// Write each weighted path as a JSON line to this file
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub engine_args: EngineArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long)]
    pub n_max: u32,
    /// Output file (stdout when absent)
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: SeriesFormat,
    #[command(flatten)]
    pub engine_args: EngineArgs,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected <min>:<max>, got {s:?}"))?;
    let a: u32 = a.parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: u32 = b.parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long, default_value = "20:200", value_parser = parse_range)]
    pub range: (u32, u32),
    /// Read counts from a series JSON file instead of computing them
    #[arg(long)]
    pub series: Option<PathBuf>,
    /// Add a constant column to the fit basis
    #[arg(long)]
    pub with_constant: bool,
    /// Add a log n column to the fit basis
    #[arg(long)]
    pub with_log: bool,
    #[arg(long, default_value_t = 0.15)]
    pub tolerance: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub engine_args: EngineArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub check: CheckKind,
    #[command(flatten)]
    pub class: ClassArgs,
    /// Largest plane degree for the oracle check
    #[arg(long, default_value_t = 4)]
    pub max_degree: u32,
    /// Series length for monotone and factorial checks
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
    /// Hirzebruch index for the factorial check
    #[arg(long, default_value_t = 2)]
    pub s: u32,
    #[arg(long, default_value = "20:200", value_parser = parse_range)]
    pub range: (u32, u32),
    #[arg(long, default_value_t = 0.15)]
    pub tolerance: f64,
    /// Also write the report to this file
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub engine_args: EngineArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub series: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(writeln!(out, "{}", text.trim_end())?),
    }
}

fn emit_json<T: Serialize>(value: &T, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    if let Some(path) = output {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    writeln!(out, "{text}")?;
    Ok(())
}

fn read_series(path: &Path) -> Result<CountSeries> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    series_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_count(a: &CountArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let ClassArgs { surface, class } = &a.class;
    let engine_kind =
        a.engine.unwrap_or(if *surface == Surface::Plane { EngineKind::Recursion } else { EngineKind::Tropical });
    if engine_kind == EngineKind::Recursion {
        if *surface != Surface::Plane {
            bail!("the recursion engine only handles the plane; use --engine tropical");
        }
        if a.path_total || a.trace.is_some() {
            bail!("--path-total and --trace need --engine tropical");
        }
        let d = match class.coeffs() {
            [d] if *d > 0 => *d as u32,
            _ => bail!("plane class must be a single positive degree"),
        };
        writeln!(out, "{}", count_plane(d))?;
        return Ok(0);
    }

    let mut mode = if a.path_total { TropicalMode::PathTotal } else { TropicalMode::Irreducible };
    if mode == TropicalMode::Irreducible && default_mode(surface) == TropicalMode::PathTotal {
        writeln!(err, "note: {surface} is not a toric Del Pezzo surface; printing the raw weighted path total")?;
        mode = TropicalMode::PathTotal;
    }
    let engine = a.engine_args.engine()?;
    let count = engine.count(class, surface, mode)?;
    if let Some(path) = &a.trace {
        let polygon = polygon_of(class, surface)?;
        let mut file =
            std::io::BufWriter::new(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?);
        write_trace(&polygon, a.engine_args.lambda, 0, &mut file)?;
        file.flush()?;
    }
    writeln!(out, "{count}")?;
    Ok(0)
}

fn class_series(c: &ClassArgs, n_max: u32, engine_args: &EngineArgs) -> Result<CountSeries> {
    let engine = engine_args.engine()?;
    compute_series(&c.surface, &c.class, n_max, &engine, default_mode(&c.surface))
}

fn cmd_series(a: &SeriesArgs, out: &mut dyn Write) -> Result<i32> {
    if a.n_max == 0 {
        bail!("--n-max must be positive");
    }
    let series = class_series(&a.class, a.n_max, &a.engine_args)?;
    let text = match a.format {
        SeriesFormat::Json => series_to_json(&series),
        SeriesFormat::Csv => series_to_csv(&series),
    };
    emit(&text, a.output.as_deref(), out)?;
    Ok(0)
}

fn basis(with_constant: bool, with_log: bool) -> FitBasis {
    FitBasis { constant: with_constant, log_n: with_log }
}

fn cmd_fit(a: &FitArgs, out: &mut dyn Write) -> Result<i32> {
    let series = match &a.series {
        Some(path) => read_series(path)?,
        None => class_series(&a.class, a.range.1, &a.engine_args)?,
    };
    let report = lambda_report(&series, a.range, basis(a.with_constant, a.with_log), a.tolerance)?;
    emit_json(&report.fit, a.output.as_deref(), out)?;
    Ok(0)
}

#[derive(Serialize)]
struct VerifyError<'a> {
    check: &'a str,
    all_hold: bool,
    error: String,
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let name = match a.check {
        CheckKind::Monotone => "monotone",
        CheckKind::Factorial => "factorial",
        CheckKind::Lambda => "lambda",
        CheckKind::Oracle => "oracle",
    };
    match run_check(a, out) {
        Ok(true) => Ok(0),
        Ok(false) => Ok(1),
        Err(e) => {
            emit_json(
                &VerifyError { check: name, all_hold: false, error: format!("{e:#}") },
                a.output.as_deref(),
                out,
            )?;
            Ok(2)
        }
    }
}

fn run_check(a: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let output = a.output.as_deref();
    match a.check {
        CheckKind::Oracle => {
            let engine = a.engine_args.engine()?;
            let r = oracle_report(a.max_degree, engine.threads, engine.checkpoint)?;
            emit_json(&r, output, out)?;
            Ok(r.all_hold)
        }
        CheckKind::Monotone => {
            let series = class_series(&a.class, a.n_max, &a.engine_args)?;
            let r = monotone_report(&series);
            emit_json(&r, output, out)?;
            Ok(r.report.all_hold)
        }
        CheckKind::Factorial => {
            let r = factorial_report(a.s, a.n_max, &a.engine_args.engine()?)?;
            emit_json(&r, output, out)?;
            Ok(r.report.all_hold)
        }
        CheckKind::Lambda => {
            let series = class_series(&a.class, a.range.1, &a.engine_args)?;
            let r = lambda_report(&series, a.range, FitBasis::default(), a.tolerance)?;
            emit_json(&r, output, out)?;
            Ok(r.all_hold)
        }
    }
}

fn cmd_polygon(a: &ClassArgs, out: &mut dyn Write) -> Result<i32> {
    if !a.surface.is_toric() {
        bail!("{} is not toric", a.surface);
    }
    let polygon = polygon_of(&a.class, &a.surface)?;
    emit_json(&PolygonFile::from(&polygon), None, out)?;
    Ok(0)
}

fn cmd_plot(a: &PlotArgs) -> Result<i32> {
    let series = read_series(&a.series)?;
    let svg = render_svg(&series)?;
    fs::write(&a.output, svg).with_context(|| format!("writing {}", a.output.display()))?;
    Ok(0)
}

/// Runs a parsed command and returns the process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Count(a) => cmd_count(a, out, err),
        Command::Series(a) => cmd_series(a, out),
        Command::Fit(a) => cmd_fit(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Polygon(a) => cmd_polygon(a, out),
        Command::Plot(a) => cmd_plot(a),
    }
}
