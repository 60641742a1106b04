//! The `enttemp` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or numerical failure, 2 invalid input,
//! 3 a ground search or minimization that did not converge.

mod checks;
mod config;
mod output;
mod svg;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use checks::{run_suite, CheckResult, Comparison, SUITES};
pub use config::{ConfigFile, Format, Overrides, RunConfig};

use crate::error::Error;
use crate::models::ModelSpec;
use crate::oneshot::{rank_sweep, RankSearch};
use crate::oracles::{qft_scaling_curve, QftScalingParams};
use crate::tradeoff::{
    ent_temperature, find_ground, pareto_front, power_law_fit_in, sample_tradeoff, TradeoffPoint, NEAR_GROUND_WINDOW,
};
use output::{ensure_dir, float, opt_float, write_csv, write_json, write_text};
use svg::{plot, Series};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{stage} did not converge: {detail}")]
    Convergence { stage: &'static str, detail: String },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Other(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Invalid(_) => 2,
            Self::Convergence { .. } => 3,
            Self::Io(_) | Self::Other(_) => 1,
        }
    }

    fn from_core(stage: &'static str, e: Error) -> Self {
        match e {
            Error::InvalidInput(msg) => Self::Invalid(msg),
            Error::Infeasible(msg) => Self::Invalid(msg),
            Error::NotConverged { steps, best_energy, .. } => {
                Self::Convergence { stage, detail: format!("{steps} steps, best energy {best_energy}") }
            }
            other => Self::Other(other),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "enttemp", version, about = "Energy cost of entanglement extraction from lattice ground states")]
pub struct Cli {
    /// TOML configuration file; command-line flags take precedence.
    #[arg(long, global = true, env = "ENTTEMP_CONFIG")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample energy/entropy trade-offs and extract the Pareto front.
    Pareto(ParetoArgs),
    /// Rank-constrained energy minima for the toy Bell-pair model.
    Toy(ToyArgs),
    /// Run reference checks and print a JSON report.
    Check(CheckArgs),
    /// Tabulate the field-theory scaling curve.
    Scaling(ScalingArgs),
}

#[derive(Debug, Args)]
pub struct ParetoArgs {
    /// haf:<N>, tfi:<N> or fermion:<N>:<a>.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Moves per sample.
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub chi_max: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub format: Option<Vec<Format>>,
}

#[derive(Debug, Args)]
pub struct ToyArgs {
    /// Number of Bell pairs.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "csv,svg")]
    pub format: Vec<Format>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Suite name, or `all`.
    #[arg(default_value = "all")]
    pub suite: String,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    /// Spatial dimension.
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Central charge, used when d = 1.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 1.0)]
    pub prefactor: f64,
    /// Largest entropy change in bits.
    #[arg(long, default_value_t = 2.0)]
    pub max_delta_s: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "csv,svg")]
    pub format: Vec<Format>,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(text) = std::env::var("ENTTEMP_THREADS") else { return Ok(()) };
    let threads: usize = text
        .trim()
        .parse()
        .map_err(|_| CliError::Invalid(format!("ENTTEMP_THREADS must be a positive integer, got {text:?}")))?;
    if threads == 0 {
        return Err(CliError::Invalid("ENTTEMP_THREADS must be positive".into()));
    }
    // A pool installed earlier in the same process is kept.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Pareto(args) => cmd_pareto(file, args),
        Command::Toy(args) => cmd_toy(args),
        Command::Check(args) => cmd_check(args),
        Command::Scaling(args) => cmd_scaling(args),
    }
}

const POINT_HEADER: [&str; 5] = ["sample", "move_seq_digest", "delta_s_bits", "delta_e", "t_ent"];

fn point_row(p: &TradeoffPoint) -> Vec<String> {
    vec![p.sample.to_string(), p.digest.clone(), float(p.delta_s), float(p.delta_e), opt_float(p.temperature())]
}

#[derive(Serialize)]
struct ParetoReport<'a> {
    model: String,
    seed: u64,
    ground_energy: f64,
    n_points: usize,
    front: &'a [TradeoffPoint],
    temperature: Vec<(f64, f64)>,
    /// `(A, γ)` of `T = A·ΔS^γ` over the near-ground window.
    power_law: Option<(f64, f64)>,
}

fn cmd_pareto(file: ConfigFile, args: ParetoArgs) -> Result<(), CliError> {
    let flags = Overrides {
        model: args.model,
        seed: args.seed,
        samples: args.samples,
        rounds: args.rounds,
        chi_max: args.chi_max,
        out: args.out,
        formats: args.format,
    };
    let cfg = RunConfig::resolve(file, flags)?;
    if let ModelSpec::Toy(_) = cfg.model {
        return Err(CliError::Invalid("pareto needs a chain model; use `enttemp toy` for the toy model".into()));
    }
    let h = cfg.model.build().map_err(|e| CliError::from_core("model", e))?;
    log::info!("ground search for {}", cfg.model);
    let (ground, e0) = find_ground(&h, &cfg.ground).map_err(|e| CliError::from_core("ground search", e))?;
    log::info!("ground energy {e0:.12}, sampling {} trajectories", cfg.sampler.n_samples);
    let points = sample_tradeoff(&h, &ground, e0, &cfg.sampler).map_err(|e| CliError::from_core("sampler", e))?;
    let front = pareto_front(&points);
    let temperature = ent_temperature(&front);
    let fit = power_law_fit_in(&temperature, NEAR_GROUND_WINDOW);
    log::info!("{} points, {} on the front", points.len(), front.len());

    ensure_dir(&cfg.out)?;
    let out = cfg.out.as_path();
    for format in &cfg.formats {
        match format {
            Format::Csv => {
                write_csv(&out.join("points.csv"), &POINT_HEADER, points.iter().map(point_row))?;
                write_csv(&out.join("front.csv"), &POINT_HEADER, front.points().iter().map(point_row))?;
                write_csv(
                    &out.join("temperature.csv"),
                    &["delta_s_bits", "delta_e", "t_ent"],
                    temperature.iter().map(|&(s, t)| vec![float(s), float(s * t), float(t)]),
                )?;
            }
            Format::Json => {
                let report = ParetoReport {
                    model: cfg.model.to_string(),
                    seed: cfg.seed,
                    ground_energy: e0,
                    n_points: points.len(),
                    front: front.points(),
                    temperature: temperature.clone(),
                    power_law: fit,
                };
                write_json(&out.join("pareto.json"), &report)?;
            }
            Format::Svg => {
                let front_xy: Vec<(f64, f64)> = front.points().iter().map(|p| (p.delta_s, p.delta_e)).collect();
                let cloud: Vec<(f64, f64)> = points.iter().map(|p| (p.delta_s, p.delta_e)).collect();
                write_text(
                    &out.join("pareto.svg"),
                    &plot(
                        &format!("Energy cost of entropy extraction, {}", cfg.model),
                        "ΔS (bits)",
                        "ΔE",
                        &[
                            Series { label: "samples", points: &cloud, color: "#9ab", line: false },
                            Series { label: "front", points: &front_xy, color: "#c33", line: true },
                        ],
                    ),
                )?;
                write_text(
                    &out.join("temperature.svg"),
                    &plot(
                        &format!("Entanglement temperature, {}", cfg.model),
                        "ΔS (bits)",
                        "T = ΔE/ΔS",
                        &[Series { label: "front", points: &temperature, color: "#36c", line: true }],
                    ),
                )?;
            }
        }
    }
    println!("model {}  ground energy {:.12}", cfg.model, e0);
    println!("{} points, {} on the Pareto front", points.len(), front.len());
    if let Some((a, gamma)) = fit {
        let (lo, hi) = NEAR_GROUND_WINDOW;
        println!("T ≈ {a:.6} · ΔS^{gamma:.4} for ΔS in [{lo}, {hi}] bits");
    }
    Ok(())
}

#[derive(Serialize)]
struct ToyRow {
    chi: usize,
    delta_s0_bits: f64,
    delta_e: f64,
    converged: bool,
}

fn cmd_toy(args: ToyArgs) -> Result<(), CliError> {
    let h = crate::models::toy_model(args.n).map_err(|e| CliError::from_core("model", e))?;
    let cfg = RankSearch { restarts: args.restarts, seed: args.seed, ..RankSearch::default() };
    let sweep = rank_sweep(&h, &cfg).map_err(|e| CliError::from_core("rank minimization", e))?;
    let rows: Vec<ToyRow> = sweep
        .iter()
        .map(|r| ToyRow { chi: r.chi, delta_s0_bits: r.delta_s0, delta_e: r.delta_e, converged: r.converged })
        .collect();
    if let Some(bad) = rows.iter().find(|r| !r.converged) {
        log::warn!("rank {} did not reach the alternation tolerance", bad.chi);
    }
    ensure_dir(&args.out)?;
    write_outputs(
        &args.out,
        "toy",
        &args.format,
        &rows,
        |r| vec![r.chi.to_string(), float(r.delta_s0_bits), float(r.delta_e)],
        &["chi", "delta_s0_bits", "delta_e"],
        |rows| {
            let xy: Vec<(f64, f64)> = rows.iter().map(|r| (r.delta_s0_bits, r.delta_e)).collect();
            plot(
                &format!("Minimum energy at reduced Schmidt rank, {} pairs", args.n),
                "ΔS₀ (bits)",
                "ΔE",
                &[Series { label: "rank-constrained minimum", points: &xy, color: "#c33", line: true }],
            )
        },
    )?;
    for r in &rows {
        println!("chi {:>4}  ΔS0 {:>8.4} bits  ΔE {:.10}", r.chi, r.delta_s0_bits, r.delta_e);
    }
    Ok(())
}

fn write_outputs<R: Serialize>(
    out: &Path,
    stem: &str,
    formats: &[Format],
    rows: &[R],
    row: impl Fn(&R) -> Vec<String>,
    header: &[&str],
    chart: impl Fn(&[R]) -> String,
) -> Result<(), CliError> {
    for format in formats {
        match format {
            Format::Csv => write_csv(&out.join(format!("{stem}.csv")), header, rows.iter().map(&row))?,
            Format::Json => write_json(&out.join(format!("{stem}.json")), &rows)?,
            Format::Svg => write_text(&out.join(format!("{stem}.svg")), &chart(rows))?,
        }
    }
    Ok(())
}

fn cmd_check(args: CheckArgs) -> Result<(), CliError> {
    let names: Vec<&str> = if args.suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&args.suite.as_str()) {
        vec![args.suite.as_str()]
    } else {
        return Err(CliError::Invalid(format!("unknown suite {:?}; known: all, {}", args.suite, SUITES.join(", "))));
    };
    let mut results = Vec::new();
    for name in names {
        log::info!("running suite {name}");
        let suite = run_suite(name).expect("suite name was checked");
        results.extend(suite.map_err(|e| CliError::from_core("check", e))?);
    }
    let text = serde_json::to_string_pretty(&results).map_err(|e| CliError::Io(e.to_string()))?;
    if let Some(path) = &args.out {
        write_text(path, &text)?;
    }
    println!("{text}");
    let failed = results.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(CliError::Other(Error::InvalidInput(format!("{failed} of {} checks failed", results.len()))));
    }
    Ok(())
}

#[derive(Serialize)]
struct ScalingRow {
    delta_s_bits: f64,
    delta_e: f64,
    t_ent: Option<f64>,
}

fn cmd_scaling(args: ScalingArgs) -> Result<(), CliError> {
    let params =
        QftScalingParams::new(args.d, args.c, args.prefactor).map_err(|e| CliError::from_core("scaling", e))?;
    if args.points < 2 || !(args.max_delta_s > 0.0 && args.max_delta_s.is_finite()) {
        return Err(CliError::Invalid("need at least 2 points and a positive --max-delta-s".into()));
    }
    let grid: Vec<f64> = (0..args.points).map(|k| args.max_delta_s * k as f64 / (args.points - 1) as f64).collect();
    let curve = qft_scaling_curve(&params, &grid).map_err(|e| CliError::from_core("scaling", e))?;
    let rows: Vec<ScalingRow> =
        curve.iter().map(|p| ScalingRow { delta_s_bits: p.delta_s, delta_e: p.delta_e, t_ent: p.t_ent }).collect();
    ensure_dir(&args.out)?;
    write_outputs(
        &args.out,
        "scaling",
        &args.format,
        &rows,
        |r| vec![float(r.delta_s_bits), float(r.delta_e), opt_float(r.t_ent)],
        &["delta_s_bits", "delta_e", "t_ent"],
        |rows| {
            let xy: Vec<(f64, f64)> = rows.iter().map(|r| (r.delta_s_bits, r.delta_e)).collect();
            plot(
                &format!("Field-theory scaling, d = {}", args.d),
                "ΔS (bits)",
                "ΔE",
                &[Series { label: "ΔE(ΔS)", points: &xy, color: "#36c", line: true }],
            )
        },
    )?;
    println!("wrote {} points to {}", rows.len(), args.out.display());
    Ok(())
}
