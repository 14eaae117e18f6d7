//! Command-line front end: derivation, simulation, forecasting, Monte Carlo
//! verification, and relative-performance sweeps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 validation error,
//! 3 insufficient sample.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use jumpcast::analysis::{FigureFormat, SWEEP_GRID_LOW, emit_figure, gamma_sweep};
use jumpcast::config::RunConfig;
use jumpcast::error::{Error, Result};
use jumpcast::forecasts::{ForecastKind, MseBreakdown, forecast_value, mse_table};
use jumpcast::model::{CriticalVerdict, DerivedParams, classify_critical, derive};
use jumpcast::montecarlo::{VerificationReport, verify_all_scaled};
use jumpcast::simulation::{batch_pairs, simulate_path};

#[derive(Parser)]
#[command(
    name = "jumpcast",
    version,
    about = "Jump-diffusion return model: forecasts, closed-form errors, Monte Carlo verification",
    after_help = "Times are dimensionless; pick any unit and use it consistently. The default \
                  horizon (T=6, S=9) reads naturally as months: observe two quarters, predict \
                  one quarter ahead."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand. Command-line values override the
/// config file, which overrides built-in defaults.
#[derive(Args, Debug)]
struct CommonOpts {
    /// Config file: flat key=value lines with dotted keys (model.alpha=0.05).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Master seed for all randomness.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,

    /// Monte Carlo sample count.
    #[arg(long, value_name = "COUNT")]
    n: Option<u64>,

    /// Output directory for generated files.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads for Monte Carlo runs (default: machine parallelism).
    /// Results are independent of this value.
    #[arg(long, value_name = "N")]
    workers: Option<usize>,

    /// |z| acceptance threshold for verification runs.
    #[arg(long = "z-threshold", value_name = "X")]
    z_threshold: Option<f64>,

    #[arg(long = "model.alpha", value_name = "X", allow_hyphen_values = true)]
    model_alpha: Option<f64>,
    #[arg(long = "model.sigma", value_name = "X", allow_hyphen_values = true)]
    model_sigma: Option<f64>,
    #[arg(long = "model.lambda", value_name = "X", allow_hyphen_values = true)]
    model_lambda: Option<f64>,
    #[arg(long = "model.nu", value_name = "X", allow_hyphen_values = true)]
    model_nu: Option<f64>,
    #[arg(long = "model.tau2", value_name = "X", allow_hyphen_values = true)]
    model_tau2: Option<f64>,
    #[arg(long = "model.p0", value_name = "X", allow_hyphen_values = true)]
    model_p0: Option<f64>,
    /// Jump-size law: gaussian, constant, or two_point.
    #[arg(long = "jumps.kind", value_name = "KIND")]
    jumps_kind: Option<String>,
    #[arg(long = "horizon.t_obs", value_name = "T", allow_hyphen_values = true)]
    horizon_t_obs: Option<f64>,
    #[arg(long = "horizon.s_target", value_name = "S", allow_hyphen_values = true)]
    horizon_s_target: Option<f64>,
}

impl CommonOpts {
    fn build_config(&self) -> Result<RunConfig> {
        let mut config = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.model_alpha {
            config.model.alpha = v;
        }
        if let Some(v) = self.model_sigma {
            config.model.sigma = v;
        }
        if let Some(v) = self.model_lambda {
            config.model.lambda = v;
        }
        if let Some(v) = self.model_nu {
            config.model.nu = v;
        }
        if let Some(v) = self.model_tau2 {
            config.model.tau2 = v;
        }
        if let Some(v) = self.model_p0 {
            config.model.p0 = v;
        }
        if let Some(kind) = &self.jumps_kind {
            config.jumps = kind.parse()?;
        }
        if let Some(v) = self.horizon_t_obs {
            config.horizon.t_obs = v;
        }
        if let Some(v) = self.horizon_s_target {
            config.horizon.s_target = v;
        }
        if let Some(v) = self.n {
            config.n = v;
        }
        if let Some(v) = self.seed {
            config.master_seed = v;
        }
        if let Some(dir) = &self.out {
            config.output_dir = dir.clone();
        }
        if let Some(v) = self.z_threshold {
            config.z_threshold = v;
        }
        config.validate()?;
        Ok(config)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Print derived parameters and the critical-relation verdict as JSON.
    Derive {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Verify the closed-form mean-square errors by Monte Carlo.
    Verify {
        #[command(flatten)]
        opts: CommonOpts,
        /// Harness self-test: corrupt the theoretical values by +10% and
        /// expect the verification to fail.
        #[arg(long)]
        corrupt_theory: bool,
    },
    /// Tabulate relative performance against relative volatility.
    Sweep {
        #[command(flatten)]
        opts: CommonOpts,
        #[arg(long, default_value_t = SWEEP_GRID_LOW.0, allow_hyphen_values = true)]
        gamma_min: f64,
        #[arg(long, default_value_t = SWEEP_GRID_LOW.1, allow_hyphen_values = true)]
        gamma_max: f64,
        #[arg(long, default_value_t = SWEEP_GRID_LOW.2, allow_hyphen_values = true)]
        step: f64,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
    },
    /// Simulate a sample path (and optionally a batch of terminal pairs) to CSV.
    Simulate {
        #[command(flatten)]
        opts: CommonOpts,
        /// Number of grid points on [0, S] for the path.
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Also write a batch of this many (p_T, p_S) pairs.
        #[arg(long, value_name = "COUNT")]
        pairs: Option<u64>,
    },
    /// Evaluate all four forecasts and the error table for an observed return.
    Forecast {
        #[command(flatten)]
        opts: CommonOpts,
        /// Observed return p_T at the end of the observation window.
        #[arg(long = "p-t", value_name = "X", allow_hyphen_values = true)]
        p_t: f64,
    },
    /// Print the theoretical mean-square-error table for a config.
    Mse {
        #[command(flatten)]
        opts: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::InsufficientSample { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Derive { opts } => cmd_derive(&opts.build_config()?),
        Command::Verify { opts, corrupt_theory } => {
            let config = opts.build_config()?;
            with_workers(opts.workers, || cmd_verify(&config, corrupt_theory))
        }
        Command::Sweep { opts, gamma_min, gamma_max, step, format } => {
            cmd_sweep(&opts.build_config()?, gamma_min, gamma_max, step, format)
        }
        Command::Simulate { opts, points, pairs } => {
            cmd_simulate(&opts.build_config()?, points, pairs)
        }
        Command::Forecast { opts, p_t } => cmd_forecast(&opts.build_config()?, p_t),
        Command::Mse { opts } => cmd_mse(&opts.build_config()?),
    }
}

/// Run `f` on a dedicated pool of `workers` threads, or on the default
/// global pool when no count was requested.
fn with_workers<F>(workers: Option<usize>, f: F) -> Result<ExitCode>
where
    F: FnOnce() -> Result<ExitCode> + Send,
{
    match workers {
        Some(count) => rayon::ThreadPoolBuilder::new()
            .num_threads(count)
            .build()
            .map_err(|e| Error::InvalidParameter {
                field: "workers",
                reason: e.to_string(),
            })?
            .install(f),
        None => f(),
    }
}

fn ensure_out_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Io(format!("cannot create {}: {e}", dir.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes)
        .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

const COINCIDENCE_MESSAGE: &str =
    "beta = 0: relative volatility undefined; all forecasts coincide at the last observed return p_T";

#[derive(Serialize)]
struct DerivedView {
    beta: f64,
    mu: f64,
    gamma: Option<f64>,
    near_zero_beta: bool,
}

impl DerivedView {
    fn new(d: &DerivedParams, t_obs: f64) -> Self {
        Self { beta: d.beta, mu: d.mu, gamma: d.gamma, near_zero_beta: d.near_zero_beta(t_obs) }
    }
}

#[derive(Serialize)]
struct DeriveOutput {
    derived: DerivedView,
    #[serde(skip_serializing_if = "Option::is_none")]
    critical: Option<CriticalVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<&'static str>,
}

fn cmd_derive(config: &RunConfig) -> Result<ExitCode> {
    let d = derive(&config.model)?;
    let output = if d.gamma.is_some() {
        DeriveOutput {
            derived: DerivedView::new(&d, config.horizon.t_obs),
            critical: Some(classify_critical(&config.horizon, &d)?),
            message: None,
        }
    } else {
        DeriveOutput {
            derived: DerivedView::new(&d, config.horizon.t_obs),
            critical: None,
            message: Some(COINCIDENCE_MESSAGE),
        }
    };
    println!("{}", to_json(&output));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(config: &RunConfig, corrupt_theory: bool) -> Result<ExitCode> {
    let scale = if corrupt_theory { 1.1 } else { 1.0 };
    let reports = verify_all_scaled(
        &config.model,
        config.jumps,
        &config.horizon,
        config.n,
        config.master_seed,
        config.z_threshold,
        scale,
    )?;
    ensure_out_dir(&config.output_dir)?;
    write_file(&config.output_dir.join("verification.json"), to_json(&reports).as_bytes())?;
    let mut csv = String::from(VerificationReport::CSV_HEADER);
    csv.push('\n');
    for report in &reports {
        csv.push_str(&report.csv_row());
        csv.push('\n');
    }
    write_file(&config.output_dir.join("verification.csv"), csv.as_bytes())?;

    for report in &reports {
        println!(
            "{}: theory={} empirical={} stderr={} z={} pass={}",
            report.kind,
            report.theoretical,
            report.empirical.mean_sq_err,
            report.empirical.std_error,
            report.z_score,
            report.pass
        );
    }
    let all_pass = reports.iter().all(|r| r.pass);
    println!("verification: {} (n={}, seed={})", if all_pass { "PASS" } else { "FAIL" }, config.n, config.master_seed);
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_sweep(
    config: &RunConfig,
    gamma_min: f64,
    gamma_max: f64,
    step: f64,
    format: SweepFormat,
) -> Result<ExitCode> {
    let table = gamma_sweep(&config.horizon, gamma_min, gamma_max, step)?;
    let (figure_format, ext) = match format {
        SweepFormat::Csv => (FigureFormat::Csv, "csv"),
        SweepFormat::Svg => (FigureFormat::Svg, "svg"),
    };
    let bytes = emit_figure(&table, figure_format)?;
    ensure_out_dir(&config.output_dir)?;
    let path = config.output_dir.join(format!("{}.{ext}", table.file_stem()));
    write_file(&path, &bytes)?;
    println!("wrote {} ({} rows)", path.display(), table.rows.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(config: &RunConfig, points: usize, pairs: Option<u64>) -> Result<ExitCode> {
    if points < 2 {
        return Err(Error::Domain(format!("points = {points} must be at least 2")));
    }
    let s = config.horizon.s_target;
    let grid: Vec<f64> =
        (0..points).map(|i| i as f64 / (points - 1) as f64 * s).collect();
    let path = simulate_path(&config.model, config.jumps, &grid, config.master_seed)?;
    ensure_out_dir(&config.output_dir)?;
    let path_file = config.output_dir.join("path.csv");
    write_file(&path_file, path.to_csv().as_bytes())?;
    println!("wrote {} ({} points, {} jumps)", path_file.display(), points, path.jump_times.len());

    if let Some(count) = pairs {
        let generator =
            batch_pairs(config.model, config.jumps, config.horizon, count, config.master_seed)?;
        let pairs_file = config.output_dir.join("pairs.csv");
        write_file(&pairs_file, generator.to_csv().as_bytes())?;
        println!("wrote {} ({} pairs)", pairs_file.display(), count);
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ForecastRow {
    kind: ForecastKind,
    forecast: f64,
    mse: f64,
    delta: f64,
}

#[derive(Serialize)]
struct CoincidentForecast {
    forecast: f64,
    mse: f64,
    message: &'static str,
}

fn write_breakdown_csv(config: &RunConfig, rows: &[MseBreakdown]) -> Result<()> {
    ensure_out_dir(&config.output_dir)?;
    let mut csv = String::from(MseBreakdown::CSV_HEADER);
    csv.push('\n');
    for row in rows {
        csv.push_str(&row.csv_row());
        csv.push('\n');
    }
    write_file(&config.output_dir.join("mse_breakdown.csv"), csv.as_bytes())
}

fn cmd_forecast(config: &RunConfig, p_t: f64) -> Result<ExitCode> {
    let d = derive(&config.model)?;
    let h = &config.horizon;
    let breakdown = mse_table(h, &d)?;
    if d.gamma.is_none() {
        let output = CoincidentForecast {
            forecast: jumpcast::coincident_forecast_beta_zero(p_t),
            mse: breakdown[0].mse,
            message: COINCIDENCE_MESSAGE,
        };
        println!("{}", to_json(&output));
        return Ok(ExitCode::SUCCESS);
    }
    let rows = breakdown
        .iter()
        .map(|b| {
            Ok(ForecastRow {
                kind: b.kind,
                forecast: forecast_value(b.kind, p_t, h, &d)?,
                mse: b.mse,
                delta: b.relative_performance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    println!("{}", to_json(&rows));
    write_breakdown_csv(config, &breakdown)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_mse(config: &RunConfig) -> Result<ExitCode> {
    let d = derive(&config.model)?;
    let breakdown = mse_table(&config.horizon, &d)?;
    println!("{}", to_json(&breakdown));
    write_breakdown_csv(config, &breakdown)?;
    Ok(ExitCode::SUCCESS)
}
