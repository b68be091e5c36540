//! Command-line front end. The binary only parses arguments and calls
//! [`run`]; everything here writes to a caller-supplied sink so it can be
//! exercised directly from tests.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, make_space, CatalogRecord, FamilySpec, SpaceParams};
use crate::classify::{classify_general, family_scan, ClassifyOptions, ScanRange};
use crate::curvature::MetricPoint;
use crate::error::Error;
use crate::flow::{integrate_batch, sample_region, FlowOptions, DEFAULT_STEP, DEFAULT_T_MAX};
use crate::reduced::run_grid;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    /// 0 success, 1 usage error, 2 numeric failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numeric() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

/// Parses a decimal or an integer fraction such as `4/23`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let den: i64 = den.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            if den == 0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            num as f64 / den as f64
        }
        None => s.parse::<f64>().map_err(|e| format!("{s:?}: {e}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

/// Parses an inclusive range `A..B` (or `A..=B`, or a single `A`).
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok(parse(lo)?..=parse(hi.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            Ok(v..=v)
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "wallach-flow",
    version,
    about = "Normalized Ricci flow on generalized Wallach spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the generalized Wallach spaces, or instantiate one row.
    Catalog(CatalogArgs),
    /// Classify a parameter triple.
    Classify(ClassifyArgs),
    /// Integrate the flow from given or sampled starting metrics.
    Simulate(SimulateArgs),
    /// Run the reduced planar system on a fixed grid.
    Reduce(ReduceArgs),
    /// Classify every instance of a family over a parameter range.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Default, Args)]
pub struct FamilyArgs {
    /// Row of the table (1-15).
    #[arg(long)]
    pub family: Option<u8>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    /// The single parameter `l` of rows 4 and 5.
    #[arg(long = "l-param")]
    pub l_param: Option<u32>,
}

impl FamilyArgs {
    fn any(&self) -> bool {
        self.family.is_some() || self.k.is_some() || self.l.is_some() || self.m.is_some() || self.l_param.is_some()
    }

    fn spec(&self) -> CliResult<FamilySpec> {
        let row = self
            .family
            .ok_or_else(|| CliError::Usage("--family is required with --k/--l/--m/--l-param".into()))?;
        let l = match row {
            4 | 5 => self.l_param.or(self.l),
            _ => self.l,
        };
        Ok(FamilySpec::from_row(row, self.k, l, self.m)?)
    }
}

#[derive(Debug, Default, Args)]
pub struct SpaceArgs {
    #[arg(long, value_parser = parse_real)]
    pub a1: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    pub a2: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    pub a3: Option<f64>,
    /// Common value of equal parameters.
    #[arg(long, value_parser = parse_real)]
    pub a: Option<f64>,
    #[command(flatten)]
    pub family: FamilyArgs,
}

impl SpaceArgs {
    /// Resolves exactly one of the three selector groups.
    pub fn resolve(&self) -> CliResult<SpaceParams> {
        let triple = self.a1.is_some() || self.a2.is_some() || self.a3.is_some();
        let groups = [triple, self.a.is_some(), self.family.any()];
        match groups.iter().filter(|&&g| g).count() {
            0 => {
                return Err(CliError::Usage(
                    "select a space with --a, --a1/--a2/--a3 or --family".into(),
                ))
            }
            1 => {}
            _ => {
                return Err(CliError::Usage(
                    "--a, --a1/--a2/--a3 and --family are mutually exclusive".into(),
                ))
            }
        }
        if triple {
            match (self.a1, self.a2, self.a3) {
                (Some(a1), Some(a2), Some(a3)) => Ok(SpaceParams::new(a1, a2, a3)?),
                _ => Err(CliError::Usage("--a1, --a2 and --a3 must be given together".into())),
            }
        } else if let Some(a) = self.a {
            Ok(SpaceParams::equal(a)?)
        } else {
            Ok(make_space(self.family.spec()?)?)
        }
    }
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// `json` prints records; the default is a text table.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Also treat a1+a2+a3 = 1/2 as losing positivity for some metrics.
    #[arg(long)]
    pub conjecture: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, value_parser = parse_real)]
    pub x1: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    pub x2: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    pub x3: Option<f64>,
    /// Number of sampled starts on the invariant surface (ignored with --x1/--x2/--x3).
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "t-max", value_parser = parse_real, default_value_t = DEFAULT_T_MAX)]
    pub t_max: f64,
    #[arg(long, value_parser = parse_real, default_value_t = DEFAULT_STEP)]
    pub dt: f64,
    #[arg(long = "continue-after-exit")]
    pub continue_after_exit: bool,
    /// Directory receiving one CSV per trajectory and `summary.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// With `csv` and a single trajectory and no --out, the trajectory CSV goes to stdout.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long, value_parser = parse_real)]
    pub a: f64,
    #[arg(long, value_parser = parse_real)]
    pub x0: f64,
    #[arg(long, value_parser = parse_real)]
    pub y0: f64,
    #[arg(long, value_parser = parse_real)]
    pub left: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub family: u8,
    /// `k = l = m` over an inclusive range `A..B` (rows 1-3).
    #[arg(long = "equal-k", value_parser = parse_range)]
    pub equal_k: Option<RangeInclusive<u32>>,
    #[arg(long, value_parser = parse_range)]
    pub k: Option<RangeInclusive<u32>>,
    #[arg(long, value_parser = parse_range)]
    pub l: Option<RangeInclusive<u32>>,
    #[arg(long, value_parser = parse_range)]
    pub m: Option<RangeInclusive<u32>>,
    /// Range of the parameter `l` of rows 4 and 5.
    #[arg(long = "l-param", value_parser = parse_range)]
    pub l_param: Option<RangeInclusive<u32>>,
    #[arg(long)]
    pub conjecture: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl ScanArgs {
    fn range(&self) -> CliResult<ScanRange> {
        let triple = self.k.is_some() || self.l.is_some() || self.m.is_some();
        match (self.family, &self.equal_k, triple, &self.l_param) {
            (1..=3, Some(ks), false, None) => Ok(ScanRange::EqualK(ks.clone())),
            (1..=3, None, true, None) => {
                let pick = |r: &Option<RangeInclusive<u32>>| r.clone().unwrap_or(1..=1);
                Ok(ScanRange::Triples {
                    k: pick(&self.k),
                    l: pick(&self.l),
                    m: pick(&self.m),
                })
            }
            (4..=5, None, false, Some(ls)) => Ok(ScanRange::L(ls.clone())),
            (6..=15, None, false, None) => Ok(ScanRange::Fixed),
            (row, ..) => Err(CliError::Usage(format!(
                "row {row} needs {}",
                match row {
                    1..=3 => "either --equal-k or --k/--l/--m ranges",
                    4..=5 => "--l-param",
                    6..=15 => "no range flags",
                    _ => "a row between 1 and 15",
                }
            ))),
        }
    }
}

/// Opens `--out` or falls back to `stdout`.
fn sink<'a>(out: &Option<PathBuf>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(stdout),
    })
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Catalog(args) => cmd_catalog(&args, stdout),
        Command::Classify(args) => cmd_classify(&args, stdout),
        Command::Simulate(args) => cmd_simulate(&args, stdout),
        Command::Reduce(args) => cmd_reduce(&args, stdout),
        Command::Scan(args) => cmd_scan(&args, stdout),
    }
}

pub fn cmd_catalog(args: &CatalogArgs, stdout: &mut dyn Write) -> CliResult {
    let mut w = sink(&args.out, stdout)?;
    let specs = if args.family.any() {
        vec![args.family.spec()?]
    } else {
        catalog::representatives()
    };
    let records = specs
        .iter()
        .map(|&spec| Ok(CatalogRecord::new(spec, &make_space(spec)?)))
        .collect::<Result<Vec<_>, Error>>()?;

    if args.format == Some(Format::Json) {
        if args.family.any() {
            serde_json::to_writer(&mut w, &records[0]).map_err(io::Error::from)?;
        } else {
            serde_json::to_writer(&mut w, &records).map_err(io::Error::from)?;
        }
        writeln!(w)?;
        return Ok(w.flush()?);
    }

    writeln!(
        w,
        "row  g / h                                a1               a2               a3               theta"
    )?;
    for (spec, rec) in specs.iter().zip(&records) {
        let (g, h) = spec.algebras();
        let algebras = format!("{g} / {h}");
        match FamilySpec::formula(spec.row()) {
            Some(f) if !args.family.any() => {
                writeln!(
                    w,
                    "{:<4} {:<36} {:<16} {:<16} {:<16} {}",
                    spec.row(),
                    algebras,
                    f[0],
                    f[1],
                    f[2],
                    f[3]
                )?;
                writeln!(
                    w,
                    "     e.g. {:<31} {:<16.10} {:<16.10} {:<16.10} {:.10}",
                    spec.to_string(),
                    rec.a1,
                    rec.a2,
                    rec.a3,
                    rec.theta
                )?;
            }
            _ => writeln!(
                w,
                "{:<4} {:<36} {:<16} {:<16} {:<16} {}",
                spec.row(),
                algebras,
                fraction(rec.a1),
                fraction(rec.a2),
                fraction(rec.a3),
                fraction(rec.theta)
            )?,
        }
    }
    Ok(w.flush()?)
}

/// Small-denominator fraction text for table values, decimal otherwise.
fn fraction(v: f64) -> String {
    for den in 1..=200u32 {
        let num = (v * den as f64).round();
        if (num / den as f64 - v).abs() < 1e-12 {
            return if den == 1 {
                format!("{num}")
            } else {
                format!("{num}/{den}")
            };
        }
    }
    format!("{v}")
}

pub fn cmd_classify(args: &ClassifyArgs, stdout: &mut dyn Write) -> CliResult {
    let params = args.space.resolve()?;
    let verdict = classify_general(
        &params,
        ClassifyOptions {
            conjecture: args.conjecture,
        },
    )?;
    let mut w = sink(&args.out, stdout)?;
    serde_json::to_writer(&mut w, &verdict).map_err(io::Error::from)?;
    writeln!(w)?;
    Ok(w.flush()?)
}

#[derive(Debug, Serialize)]
pub struct SimulationSummary {
    pub n_exited: usize,
    pub n_stayed: usize,
    pub n_failed: usize,
    /// Per trajectory, in start order; `null` when no exit happened.
    pub first_exit_times: Vec<Option<f64>>,
    pub max_first_integral_drift: f64,
}

pub fn cmd_simulate(args: &SimulateArgs, stdout: &mut dyn Write) -> CliResult {
    let params = args.space.resolve()?;
    let starts = match (args.x1, args.x2, args.x3) {
        (Some(x1), Some(x2), Some(x3)) => vec![MetricPoint::new(x1, x2, x3)?],
        (None, None, None) => sample_region(&params, args.samples, args.seed)?,
        _ => return Err(CliError::Usage("--x1, --x2 and --x3 must be given together".into())),
    };
    let opts = FlowOptions {
        t_max: args.t_max,
        step: args.dt,
        continue_after_exit: args.continue_after_exit,
    };
    let results = integrate_batch(&params, &starts, &opts);

    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
    }
    let mut summary = SimulationSummary {
        n_exited: 0,
        n_stayed: 0,
        n_failed: 0,
        first_exit_times: Vec::with_capacity(results.len()),
        max_first_integral_drift: 0.0,
    };
    let mut failure = None;
    for (i, result) in results.iter().enumerate() {
        let tr = match result {
            Ok(tr) => {
                let exit = tr.exit_event().map(|e| e.t);
                if exit.is_some() {
                    summary.n_exited += 1;
                } else {
                    summary.n_stayed += 1;
                }
                summary.first_exit_times.push(exit);
                tr
            }
            Err(e) => {
                summary.n_failed += 1;
                summary.first_exit_times.push(None);
                failure.get_or_insert_with(|| format!("trajectory {i}: {e}"));
                match e.partial_trajectory() {
                    Some(tr) => tr,
                    None => continue,
                }
            }
        };
        summary.max_first_integral_drift = summary.max_first_integral_drift.max(tr.first_integral_drift());
        if let Some(dir) = &args.out {
            let file = File::create(trajectory_path(dir, i))?;
            let mut w = BufWriter::new(file);
            tr.write_csv(&mut w)?;
            if let Err(e) = result {
                writeln!(w, "# failed: {e}")?;
            }
            w.flush()?;
        } else if results.len() == 1 && args.format == Some(Format::Csv) {
            tr.write_csv(&mut *stdout)?;
        }
    }

    let line = serde_json::to_string(&summary).map_err(io::Error::from)?;
    if let Some(dir) = &args.out {
        fs::write(dir.join("summary.json"), format!("{line}\n"))?;
    }
    if !(args.out.is_none() && results.len() == 1 && args.format == Some(Format::Csv)) {
        writeln!(stdout, "{line}")?;
    }
    match failure {
        Some(msg) => Err(CliError::Numeric(msg)),
        None => Ok(()),
    }
}

pub fn trajectory_path(dir: &Path, index: usize) -> PathBuf {
    dir.join(format!("trajectory_{index:04}.csv"))
}

pub fn cmd_reduce(args: &ReduceArgs, stdout: &mut dyn Write) -> CliResult {
    let run = run_grid(args.a, args.x0, args.y0, args.left, args.steps)?;
    let mut w = sink(&args.out, stdout)?;
    match args.format {
        Format::Csv => run.write_csv(&mut w)?,
        Format::Json => {
            serde_json::to_writer(&mut w, &run).map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    match run.halt {
        Some(h) => Err(CliError::Numeric(format!(
            "reduced system singular near node {} (x = {}, y = {})",
            h.i, h.x, h.y
        ))),
        None => Ok(()),
    }
}

pub fn cmd_scan(args: &ScanArgs, stdout: &mut dyn Write) -> CliResult {
    let range = args.range()?;
    let entries = family_scan(
        args.family,
        &range,
        ClassifyOptions {
            conjecture: args.conjecture,
        },
    )?;
    let mut w = sink(&args.out, stdout)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer(&mut w, &entries).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        Format::Csv => {
            writeln!(w, "family,spec,a1,a2,a3,theta,kind,rule")?;
            for e in &entries {
                let (a, theta) = match e.params {
                    Some(p) => (p.as_array().map(|v| v.to_string()), p.theta().to_string()),
                    None => ([(); 3].map(|_| String::new()), String::new()),
                };
                let (kind, rule) = match (&e.verdict, &e.skipped) {
                    (Some(v), _) => (format!("{:?}", v.kind), v.rule.describe().to_string()),
                    (None, Some(reason)) => ("Skipped".to_string(), reason.clone()),
                    (None, None) => (String::new(), String::new()),
                };
                writeln!(
                    w,
                    "{},\"{}\",{},{},{},{},{},\"{}\"",
                    e.family,
                    e.spec,
                    a[0],
                    a[1],
                    a[2],
                    theta,
                    kind,
                    rule.replace('"', "'")
                )?;
            }
        }
    }
    Ok(w.flush()?)
}
