//! The `hyperspace` command-line tool.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports failures,
//! 2 for usage, parse and input errors.

pub mod svg;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use hyperspace_core::document::{parse_path, parse_set, FrameStream};
use hyperspace_core::metric::{brute_force_hausdorff, directed_distance};
use hyperspace_core::verify::{self, GeneratorConfig, MixWeights, SuiteReport};
use hyperspace_core::{CompactSet, DistanceResult};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Core(#[from] hyperspace_core::Error),
    #[error("{0}")]
    Output(#[from] serde_json::Error),
    #[error("verification failed: {0} failing case(s)")]
    Verification(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "hyperspace", version, about = "Compact sets under the Hausdorff metric")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Directed and Hausdorff distances between two set documents.
    Dist(DistArgs),
    /// Sample a path document into frames.
    Path(PathArgs),
    /// Run a randomised verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct DistArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    /// Target certified error.
    #[arg(long, default_value_t = hyperspace_core::DEFAULT_TOL)]
    pub tol: f64,
    /// Also run the grid oracle at this resolution.
    #[arg(long, value_name = "R")]
    pub oracle: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    pub spec: PathBuf,
    #[arg(long, value_name = "N")]
    pub frames: usize,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    /// Write one SVG per frame into this directory (2D paths only).
    #[arg(long, value_name = "DIR")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    MetricAxioms,
    PathModulus,
    Oracle,
    Contraction,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mix {
    /// Points, boxes, segments and unions in equal proportion.
    Default,
    Points,
    Boxes,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Restrict to one dimension (default: 1, 2 and 3).
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mix::Default)]
    pub mix: Mix,
    /// Largest number of points in a generated finite set.
    #[arg(long)]
    pub max_points: Option<usize>,
    /// Grid size of the path-modulus suite.
    #[arg(long, default_value_t = 21)]
    pub grid: usize,
    /// Oracle resolution for the oracle and contraction suites.
    #[arg(long, default_value_t = 1e-2)]
    pub resolution: f64,
}

/// Runs a parsed command line, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Dist(args) => cmd_dist(args, out),
        Command::Path(args) => cmd_path(args, out),
        Command::Verify(args) => cmd_verify(args, out),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_set(path: &Path) -> CliResult<CompactSet> {
    parse_set(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> CliResult {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DistOutput {
    pub dbar_ab: f64,
    pub dbar_ba: f64,
    pub h: f64,
    pub err: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<DistanceResult>,
}

pub fn cmd_dist(args: &DistArgs, out: &mut dyn Write) -> CliResult {
    let a = load_set(&args.a)?;
    let b = load_set(&args.b)?;
    if a.dim() != b.dim() {
        return Err(CliError::Usage(format!(
            "dimension mismatch: {} is {}-dimensional, {} is {}-dimensional",
            args.a.display(),
            a.dim(),
            args.b.display(),
            b.dim()
        )));
    }
    let ab = directed_distance(&a, &b, args.tol)?;
    let ba = directed_distance(&b, &a, args.tol)?;
    let h = ab.max(ba);
    let oracle = args
        .oracle
        .map(|res| brute_force_hausdorff(&a, &b, res))
        .transpose()?;
    emit(
        out,
        &DistOutput {
            dbar_ab: ab.value,
            dbar_ba: ba.value,
            h: h.value,
            err: ab.err.max(ba.err),
            oracle,
        },
    )
}

#[derive(Debug, Clone, Serialize)]
struct PathOutput<'a> {
    frames: usize,
    out: &'a Path,
    #[serde(skip_serializing_if = "Option::is_none")]
    svg_dir: Option<&'a Path>,
    svg_files: usize,
}

pub fn cmd_path(args: &PathArgs, out: &mut dyn Write) -> CliResult {
    let spec = read(&args.spec)?;
    let path = parse_path(&spec).map_err(|e| CliError::Usage(format!("{}: {e}", args.spec.display())))?;
    if args.frames < 2 {
        return Err(CliError::Usage(format!("--frames must be at least 2, got {}", args.frames)));
    }
    if args.svg.is_some() && path.dim() != 2 {
        return Err(CliError::Usage(format!("--svg needs a 2-dimensional path, this one is {}-dimensional", path.dim())));
    }

    let stream = FrameStream::sample(&path, args.frames)?;
    let file = fs::File::create(&args.out).map_err(|source| CliError::Io {
        path: args.out.clone(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    serde_json::to_writer(&mut writer, &stream)?;
    writer.flush().map_err(|source| CliError::Io {
        path: args.out.clone(),
        source,
    })?;

    let svg_files = match &args.svg {
        Some(dir) => write_svgs(&stream, dir)?.len(),
        None => 0,
    };
    emit(
        out,
        &PathOutput {
            frames: stream.frames.len(),
            out: &args.out,
            svg_dir: args.svg.as_deref(),
            svg_files,
        },
    )
}

/// Writes `frame_NNNN.svg` for every frame, all sharing one view box.
pub fn write_svgs(stream: &FrameStream, dir: &Path) -> CliResult<Vec<PathBuf>> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let sets = stream.sets()?;
    let bounds: Vec<_> = sets.iter().map(CompactSet::bounding_box).collect();
    let view = svg::View::covering(&bounds).ok_or_else(|| CliError::Usage("no frames to draw".into()))?;
    let mut files = Vec::with_capacity(sets.len());
    for (i, (frame, set)) in stream.frames.iter().zip(&sets).enumerate() {
        let file = dir.join(format!("frame_{i:04}.svg"));
        fs::write(&file, svg::render_frame(set, frame.t, &view)).map_err(io_err(&file))?;
        files.push(file);
    }
    Ok(files)
}

fn generator(args: &VerifyArgs, dim: usize, scale: f64) -> GeneratorConfig {
    let mut config = GeneratorConfig::new(dim, args.seed);
    config.scale = scale;
    config.weights = match args.mix {
        Mix::Default => MixWeights::default(),
        Mix::Points => MixWeights::only_points(),
        Mix::Boxes => MixWeights::only_boxes(),
    };
    if let Some(k) = args.max_points {
        config.max_points = k;
    }
    config
}

/// Total number of contraction cases compared against the grid oracle.
const ORACLE_CROSS_CHECKS: usize = 20;

/// Splits `cases` over the selected dimensions and merges the reports. The
/// closure also gets a function splitting any other count the same way.
fn per_dim(
    args: &VerifyArgs,
    name: &str,
    scale: f64,
    run: impl Fn(&GeneratorConfig, usize, &dyn Fn(usize) -> usize) -> SuiteReport,
) -> SuiteReport {
    let dims: Vec<usize> = match args.dim {
        Some(d) => vec![d],
        None => vec![1, 2, 3],
    };
    let k = dims.len();
    let reports = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let share = |total: usize| total / k + usize::from(i < total % k);
            run(&generator(args, d, scale), share(args.cases), &share)
        })
        .collect();
    SuiteReport::merge(name, reports)
}

fn run_suite(args: &VerifyArgs, suite: Suite) -> SuiteReport {
    match suite {
        Suite::MetricAxioms => per_dim(args, "metric-axioms", 10.0, |cfg, n, _| {
            verify::run_metric_axioms(cfg, n, args.tol)
        }),
        Suite::PathModulus => per_dim(args, "path-modulus", 10.0, |cfg, n, _| {
            verify::run_random_path_modulus(cfg, n, args.grid, args.tol)
        }),
        // small coordinates keep the oracle grids within budget
        Suite::Oracle => per_dim(args, "oracle", 1.0, |cfg, n, _| {
            verify::run_oracle_equivalence(cfg, n, args.resolution)
        }),
        Suite::Contraction => per_dim(args, "contraction", 0.5, |cfg, n, share| {
            verify::run_contraction(cfg, n, args.tol, share(ORACLE_CROSS_CHECKS).min(n), args.resolution)
        }),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(CliError::Usage(format!("--tol must be finite and non-negative, got {}", args.tol)));
    }
    if !(args.resolution.is_finite() && args.resolution > 0.0) {
        return Err(CliError::Usage(format!("--resolution must be positive, got {}", args.resolution)));
    }
    if args.dim == Some(0) {
        return Err(CliError::Usage("--dim must be at least 1".into()));
    }
    if args.grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let failures = if args.suite == Suite::All {
        let reports: Vec<SuiteReport> = [Suite::MetricAxioms, Suite::PathModulus, Suite::Oracle, Suite::Contraction]
            .into_iter()
            .map(|s| run_suite(args, s))
            .collect();
        emit(out, &reports)?;
        reports.iter().map(|r| r.failures.len()).sum()
    } else {
        let report = run_suite(args, args.suite);
        emit(out, &report)?;
        report.failures.len()
    };
    if failures > 0 {
        return Err(CliError::Verification(failures));
    }
    Ok(())
}
