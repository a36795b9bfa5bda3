#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use agfrft::filtering::{gradient_descent, grid_search, GdConfig, GdInit, Grid, OptResult};
use agfrft::graphs::{gso, GsoKind};
use agfrft::harness::config::parse_grid;
use agfrft::harness::io::load_complex_csv;
use agfrft::harness::pipelines::{synthetic_image, synthetic_pointcloud, synthetic_series};
use agfrft::harness::{
    format_g, load_edges_csv, load_pgm, load_ply_ascii, load_signal_csv, results_csv, run_image,
    run_pointcloud, run_timeseries, ExperimentConfig, Pipeline, ResultRow,
};
use agfrft::properties::{check_properties, SuiteTolerances};
use agfrft::rotations::{AxisKind, Family};
use agfrft::spectral::{build_operator, build_spectrum, Method, OperatorCache, TransformKind};
use agfrft::{filtering, C64};
use anyhow::{bail, Context};
use clap::parser::ValueSource;
use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};

/// Angular graph fractional Fourier transforms and denoising experiments.
#[derive(Debug, Parser)]
#[command(name = "agfrft", version)]
struct Cli {
    /// Worker threads for grid search and pipelines (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a transform to a graph signal and print its spectrum as `re,im`.
    Transform(TransformArgs),
    /// Wiener-filter a noisy signal, selecting parameters by grid search.
    DenoiseGrid(DenoiseGridArgs),
    /// Wiener-filter a noisy signal, fitting filter and parameters by gradient descent.
    DenoiseGd(DenoiseGdArgs),
    /// Time-series denoising experiment on a sequence graph.
    Timeseries(ExperimentArgs),
    /// Image denoising experiment on 8x8 pixel-graph blocks.
    Image(ExperimentArgs),
    /// Point-cloud denoising experiment on k-NN patch graphs.
    Pointcloud(ExperimentArgs),
    /// Verify the algebraic properties on a seeded random graph.
    CheckProperties(CheckArgs),
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge list CSV (`i,j,w`, 0-based, each undirected edge once).
    #[arg(long)]
    graph: PathBuf,
    /// Node count; defaults to the largest edge index plus one.
    #[arg(long)]
    nodes: Option<usize>,
    /// Shift operator.
    #[arg(long, default_value = "laplacian")]
    gso: GsoKind,
}

#[derive(Debug, Args)]
struct MethodArgs {
    /// Transform kind: gft, gfrft, agft, agfrft-i or agfrft-ii.
    #[arg(long, default_value = "agfrft-i")]
    kind: TransformKind,
    /// Rotation axis: roll, pitch or yaw.
    #[arg(long, default_value = "yaw")]
    axis: AxisKind,
    /// Rotation family: df or legacy.
    #[arg(long, default_value = "df")]
    family: Family,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    method: MethodArgs,
    /// Input signal CSV: one real per line, or `re,im` rows.
    #[arg(long)]
    signal: PathBuf,
    /// Rotation angle.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    /// Fractional order.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Angle scale of the degeneracy-friendly family.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    kappa: f64,
    /// Apply the inverse transform instead.
    #[arg(long)]
    inverse: bool,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DenoiseCommon {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    method: MethodArgs,
    /// Noisy signal CSV.
    #[arg(long)]
    signal: PathBuf,
    /// Clean reference signal CSV used to fit the filter.
    #[arg(long)]
    reference: PathBuf,
    /// Write the denoised signal here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DenoiseGridArgs {
    #[command(flatten)]
    common: DenoiseCommon,
    /// Fractional orders, `start:step:end` or a comma list.
    #[arg(long, default_value = "0:0.1:1")]
    alpha_grid: String,
    /// Angles, `start:step:end` or a comma list.
    #[arg(long, default_value = "0:0.628:6.2832")]
    theta_grid: String,
}

#[derive(Debug, Args)]
struct DenoiseGdArgs {
    #[command(flatten)]
    common: DenoiseCommon,
    /// Learning rate.
    #[arg(long, default_value_t = 0.01)]
    lr: f64,
    /// Number of iterations.
    #[arg(long, default_value_t = 1000)]
    epochs: usize,
    /// Initial angle.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta0: f64,
    /// Initial fractional order.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha0: f64,
    /// Initial angle scale.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    kappa0: f64,
    /// Write the per-iteration trace as CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

/// Flags shared by the three experiment pipelines. Explicit flags override
/// values read from `--config`.
#[derive(Debug, Args)]
struct ExperimentArgs {
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Input data (CSV series, PGM image or ASCII PLY); a synthetic fixture if omitted.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Results CSV path; printed to standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Transform kinds, comma separated.
    #[arg(long, default_value = "gfrft,agft,agfrft-i,agfrft-ii")]
    methods: String,
    /// Rotation axes, comma separated.
    #[arg(long, default_value = "yaw")]
    axes: String,
    /// Rotation families, comma separated.
    #[arg(long, default_value = "df")]
    families: String,
    /// Noise levels, comma separated [default: 0.5,1,1.5; images 20,30,40].
    #[arg(long)]
    sigma: Option<String>,
    /// k of the sequence or point-cloud k-NN graph.
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Series checkpoints (truncation lengths), comma separated.
    #[arg(long, default_value = "100,200,300")]
    t: String,
    /// Shift operator: adjacency or laplacian.
    #[arg(long, default_value = "laplacian")]
    gso: String,
    /// Optimizer: grid or gd.
    #[arg(long, default_value = "grid")]
    optimizer: String,
    /// Fractional orders for grid search.
    #[arg(long, default_value = "0:0.1:1")]
    alpha_grid: String,
    /// Angles for grid search.
    #[arg(long, default_value = "0:0.628:6.2832")]
    theta_grid: String,
    /// Gradient-descent learning rate.
    #[arg(long, default_value_t = 0.01)]
    lr: f64,
    /// Gradient-descent iterations.
    #[arg(long, default_value_t = 1000)]
    epochs: usize,
    /// Maximum points per point-cloud patch.
    #[arg(long, default_value_t = 100)]
    max_patch: usize,
    /// Noise seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Graph size.
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Seed of the random shift operator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Single tolerance for every check; per-check defaults if omitted.
    #[arg(long)]
    tol: Option<f64>,
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<agfrft::Error> for Failure {
    fn from(e: agfrft::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let sub = matches.subcommand().map(|(_, m)| m);
    let result = match cli.command {
        Command::Transform(a) => cmd_transform(&a),
        Command::DenoiseGrid(a) => cmd_denoise_grid(&a),
        Command::DenoiseGd(a) => cmd_denoise_gd(&a),
        Command::Timeseries(a) => cmd_experiment(Pipeline::Timeseries, &a, sub),
        Command::Image(a) => cmd_experiment(Pipeline::Image, &a, sub),
        Command::Pointcloud(a) => cmd_experiment(Pipeline::Pointcloud, &a, sub),
        Command::CheckProperties(a) => cmd_check(&a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_spectrum(g: &GraphArgs) -> anyhow::Result<Arc<agfrft::Spectrum>> {
    let graph = load_edges_csv::<f64>(&g.graph, g.nodes)?;
    Ok(Arc::new(build_spectrum(&gso(&graph, g.gso))?))
}

fn method_of(m: &MethodArgs) -> Method {
    Method::new(m.kind, m.axis, m.family)
}

fn cmd_transform(a: &TransformArgs) -> Outcome {
    for (name, v) in [("theta", a.theta), ("alpha", a.alpha), ("kappa", a.kappa)] {
        if !v.is_finite() {
            return Err(Failure::Usage(format!("--{name} must be finite")));
        }
    }
    let spec = load_spectrum(&a.graph)?;
    let signal: Vec<C64> = load_complex_csv(&a.signal)?;
    let op = build_operator(&spec, &method_of(&a.method), a.theta, a.alpha, a.kappa)?;
    let out = if a.inverse {
        op.apply_inverse(&signal)?
    } else {
        op.apply_complex(&signal)?
    };
    let mut text = String::from("re,im\n");
    for c in out {
        let _ = writeln!(text, "{:e},{:e}", c.re, c.im);
    }
    emit(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn load_pair(c: &DenoiseCommon) -> anyhow::Result<(Vec<f64>, Vec<f64>)> {
    let y = load_signal_csv(&c.signal)?;
    let x = load_signal_csv(&c.reference)?;
    if x.len() != y.len() {
        bail!("signal has {} values but reference has {}", y.len(), x.len());
    }
    Ok((y, x))
}

fn report(c: &DenoiseCommon, cache: &OperatorCache<f64>, y: &[f64], r: &OptResult<f64>) -> Outcome {
    let method = method_of(&c.method);
    println!("method,axis,family,theta,alpha,kappa,mse,psnr");
    println!(
        "{},{},{},{},{},{},{},{}",
        method.kind,
        method.axis,
        method.family,
        format_g(r.theta),
        format_g(r.alpha),
        format_g(r.kappa),
        format_g(r.mse),
        format_g(agfrft::harness::psnr(r.mse, 1.0)?)
    );
    if let Some(path) = &c.out {
        let op = build_operator(cache.spectrum(), &method, r.theta, r.alpha, r.kappa)?;
        let z = filtering::filter_signal(&op, &r.h, y)?;
        let mut text = String::from("value\n");
        for v in z.signal {
            let _ = writeln!(text, "{v:e}");
        }
        emit(Some(path), &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_denoise_grid(a: &DenoiseGridArgs) -> Outcome {
    let alpha = parse_grid::<f64>(&a.alpha_grid).map_err(|e| Failure::Usage(format!("--alpha-grid: {e}")))?;
    let theta = parse_grid::<f64>(&a.theta_grid).map_err(|e| Failure::Usage(format!("--theta-grid: {e}")))?;
    let grid = Grid::new(theta, alpha).map_err(|e| Failure::Usage(e.to_string()))?;
    let (y, x) = load_pair(&a.common)?;
    let cache = OperatorCache::new(load_spectrum(&a.common.graph)?);
    let r = grid_search(&cache, &method_of(&a.common.method), &y, &x, &grid)?;
    report(&a.common, &cache, &y, &r)
}

fn cmd_denoise_gd(a: &DenoiseGdArgs) -> Outcome {
    if !(a.lr > 0.0) || a.epochs == 0 {
        return Err(Failure::Usage("--lr and --epochs must be positive".into()));
    }
    let (y, x) = load_pair(&a.common)?;
    let cache = OperatorCache::unmemoized(load_spectrum(&a.common.graph)?);
    let init = GdInit {
        h: None,
        theta: a.theta0,
        alpha: a.alpha0,
        kappa: a.kappa0,
    };
    let cfg = GdConfig {
        learning_rate: a.lr,
        max_iter: a.epochs,
        ..GdConfig::default()
    };
    let r = gradient_descent(&cache, &method_of(&a.common.method), &y, &x, &init, &cfg)?;
    if let Some(path) = &a.trace {
        let mut text = String::from("iteration,loss,best_loss,theta,alpha,kappa\n");
        for (i, t) in r.trace.iter().enumerate() {
            let _ = writeln!(
                text,
                "{i},{},{},{},{},{}",
                format_g(t.loss),
                format_g(t.best_loss),
                format_g(t.theta),
                format_g(t.alpha),
                format_g(t.kappa)
            );
        }
        emit(Some(path), &text)?;
    }
    report(&a.common, &cache, &y, &r)
}

fn explicit(m: Option<&ArgMatches>, id: &str) -> bool {
    m.and_then(|m| m.value_source(id)) == Some(ValueSource::CommandLine)
}

fn build_config(p: Pipeline, a: &ExperimentArgs, m: Option<&ArgMatches>) -> Result<ExperimentConfig<f64>, Failure> {
    let mut cfg = match &a.config {
        Some(path) => ExperimentConfig::from_file(path, p)?,
        None => ExperimentConfig::new(p),
    };
    if cfg.pipeline != p {
        return Err(Failure::Usage(format!(
            "configuration is for the {} pipeline, not {p}",
            cfg.pipeline
        )));
    }
    let from_config = a.config.is_some();
    let settings: Vec<(&str, &str, String)> = vec![
        ("methods", "methods", a.methods.clone()),
        ("axes", "axes", a.axes.clone()),
        ("families", "families", a.families.clone()),
        ("k", "k", a.k.to_string()),
        ("t", "t", a.t.clone()),
        ("gso", "gso", a.gso.clone()),
        ("optimizer", "optimizer", a.optimizer.clone()),
        ("alpha_grid", "alpha_grid", a.alpha_grid.clone()),
        ("theta_grid", "theta_grid", a.theta_grid.clone()),
        ("lr", "lr", a.lr.to_string()),
        ("epochs", "epochs", a.epochs.to_string()),
        ("max_patch", "max_patch", a.max_patch.to_string()),
        ("seed", "seed", a.seed.to_string()),
    ];
    for (id, key, value) in settings {
        if !from_config || explicit(m, id) {
            cfg.set(key, &value)
                .map_err(|e| Failure::Usage(format!("--{}: {e}", id.replace('_', "-"))))?;
        }
    }
    if let Some(s) = &a.sigma {
        cfg.set("sigmas", s).map_err(|e| Failure::Usage(format!("--sigma: {e}")))?;
    }
    if let Some(i) = &a.input {
        cfg.input = Some(i.clone());
    }
    if let Some(o) = &a.out {
        cfg.out = Some(o.clone());
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn segment_name(path: &Option<PathBuf>) -> String {
    path.as_ref()
        .and_then(|p| p.file_stem())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "synthetic".into())
}

fn summary(rows: &[ResultRow<f64>]) -> String {
    let mut s = format!(
        "{:<10} {:<6} {:<7} {:>7} {:<10} {:>6} {:>8} {:>6} {:>12} {:>9} {:>7}\n",
        "method", "axis", "family", "sigma", "segment", "alpha", "theta", "kappa", "mse", "psnr", "ssim"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<10} {:<6} {:<7} {:>7} {:<10} {:>6} {:>8} {:>6} {:>12} {:>9} {:>7}",
            r.method,
            r.axis,
            r.family,
            format_g(r.sigma),
            r.segment,
            format!("{:.2}", r.alpha),
            format!("{:.3}", r.theta),
            format!("{:.2}", r.kappa),
            format!("{:.4e}", r.mse),
            format!("{:.3}", r.psnr),
            r.ssim.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into())
        );
    }
    s
}

fn cmd_experiment(p: Pipeline, a: &ExperimentArgs, m: Option<&ArgMatches>) -> Outcome {
    let cfg = build_config(p, a, m)?;
    let segment = segment_name(&cfg.input);
    let rows = match p {
        Pipeline::Timeseries => {
            let series = match &cfg.input {
                Some(path) => load_signal_csv(path)?,
                None => synthetic_series(cfg.checkpoints.iter().copied().max().unwrap_or(0)),
            };
            run_timeseries(&cfg, &series)?
        }
        Pipeline::Image => {
            let image = match &cfg.input {
                Some(path) => load_pgm(path)?,
                None => synthetic_image(32, 32),
            };
            run_image(&cfg, &image, &segment)?
        }
        Pipeline::Pointcloud => {
            let points = match &cfg.input {
                Some(path) => load_ply_ascii(path)?,
                None => synthetic_pointcloud(400),
            };
            run_pointcloud(&cfg, &points, &segment)?
        }
    };
    match &cfg.out {
        Some(path) => {
            emit(Some(path), &results_csv(&rows))?;
            print!("{}", summary(&rows));
        }
        None => emit(None, &results_csv(&rows))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(a: &CheckArgs) -> Outcome {
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let tol = match a.tol {
        Some(t) if !(t > 0.0) => return Err(Failure::Usage("--tol must be positive".into())),
        Some(t) => SuiteTolerances::uniform(t),
        None => SuiteTolerances::default(),
    };
    let report = check_properties(a.n, a.seed, &tol)?;
    println!("property suite: n = {}, seed = {}", report.n, report.seed);
    for c in &report.checks {
        println!("{c}");
    }
    if report.all_pass() {
        println!("all properties hold");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("property failures detected");
        Ok(ExitCode::from(1))
    }
}
