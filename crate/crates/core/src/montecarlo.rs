//! Monte Carlo estimation of forecast errors and moments, verified against
//! the closed forms.
//!
//! Work is split into fixed-size index chunks; each chunk is reduced with
//! Welford updates and the chunk partials are merged in index order. The
//! chunking is independent of the worker count, so estimates are
//! bit-identical whether they run on one thread or sixteen.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forecasts::{self, ForecastKind};
use crate::model::{Horizon, ModelParams, derive};
use crate::simulation::{JumpSpec, PairGenerator, child_seed, simulate_path};
use crate::stats::RunningStats;

/// Smallest batch the estimators accept.
pub const MIN_SAMPLES: u64 = 1000;

/// Default |z| acceptance threshold (two-sided false-alarm rate about 6e-5
/// per cell, which keeps multi-cell suites flake-free).
pub const DEFAULT_Z_THRESHOLD: f64 = 4.0;

/// Fixed reduction granularity; deliberately unrelated to thread count.
const CHUNK: u64 = 8192;

/// Empirical mean-square error of one forecast kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MseEstimate {
    pub kind: ForecastKind,
    pub mean_sq_err: f64,
    /// Sample standard deviation of the squared errors divided by sqrt(n).
    pub std_error: f64,
    pub n: u64,
    pub master_seed: u64,
}

/// Closed form vs. Monte Carlo for one forecast kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: ForecastKind,
    pub theoretical: f64,
    pub empirical: MseEstimate,
    pub z_score: f64,
    pub pass: bool,
}

impl VerificationReport {
    pub const CSV_HEADER: &'static str = "kind,theory,empirical,stderr,z,pass";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.kind,
            self.theoretical,
            self.empirical.mean_sq_err,
            self.empirical.std_error,
            self.z_score,
            self.pass
        )
    }
}

/// Chunked, order-independent parallel reduction of `f(0..n)`.
fn parallel_stats<F>(n: u64, f: F) -> RunningStats
where
    F: Fn(u64) -> f64 + Sync,
{
    let ranges: Vec<(u64, u64)> =
        (0..n.div_ceil(CHUNK)).map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(n))).collect();
    let partials: Vec<RunningStats> = ranges
        .par_iter()
        .map(|&(start, end)| {
            let mut acc = RunningStats::new();
            for i in start..end {
                acc.push(f(i));
            }
            acc
        })
        .collect();
    let mut total = RunningStats::new();
    for part in &partials {
        total.merge(part);
    }
    total
}

/// Estimate the mean-square error of a forecast by simulation.
///
/// The forecast uses the true derived parameters, matching the assumption
/// under which the closed forms hold. Requires `beta != 0` unless the kind
/// is `Trivial` (with `beta = 0` the others are only defined through the
/// coincidence rule).
pub fn empirical_mse(
    kind: ForecastKind,
    params: &ModelParams,
    jumps: JumpSpec,
    h: &Horizon,
    n: u64,
    master_seed: u64,
) -> Result<MseEstimate> {
    if n < MIN_SAMPLES {
        return Err(Error::InsufficientSample { n, min: MIN_SAMPLES });
    }
    let d = derive(params)?;
    if d.gamma.is_none() && kind != ForecastKind::Trivial {
        return Err(Error::UndefinedGamma);
    }
    let generator = PairGenerator::new(*params, jumps, *h, n, master_seed)?;
    let (a, b) = forecasts::affine_coefficients(kind, h, &d)?;
    let stats = parallel_stats(n, |i| {
        let pair = generator.pair(i);
        let err = pair.p_s_target - (a * pair.p_t_obs + b);
        err * err
    });
    Ok(MseEstimate {
        kind,
        mean_sq_err: stats.mean(),
        std_error: stats.std_error_of_mean(),
        n,
        master_seed,
    })
}

/// Verify every forecast kind against its closed form at the given
/// z-threshold. All kinds reuse the same master seed, so reports are
/// deterministic for fixed inputs.
pub fn verify_all(
    params: &ModelParams,
    jumps: JumpSpec,
    h: &Horizon,
    n: u64,
    master_seed: u64,
    z_threshold: f64,
) -> Result<Vec<VerificationReport>> {
    verify_all_scaled(params, jumps, h, n, master_seed, z_threshold, 1.0)
}

/// [`verify_all`] with the theoretical values multiplied by `theory_scale`.
/// A scale other than 1 is a harness self-test: it must make reports fail.
pub fn verify_all_scaled(
    params: &ModelParams,
    jumps: JumpSpec,
    h: &Horizon,
    n: u64,
    master_seed: u64,
    z_threshold: f64,
    theory_scale: f64,
) -> Result<Vec<VerificationReport>> {
    let d = derive(params)?;
    ForecastKind::ALL
        .iter()
        .map(|&kind| {
            let theoretical = forecasts::theoretical_mse(kind, h, &d)? * theory_scale;
            let empirical = empirical_mse(kind, params, jumps, h, n, master_seed)?;
            let z_score = (empirical.mean_sq_err - theoretical) / empirical.std_error;
            Ok(VerificationReport { kind, theoretical, empirical, z_score, pass: z_score.abs() <= z_threshold })
        })
        .collect()
}

/// Identifies which moment a verification cell checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "moment", rename_all = "snake_case")]
pub enum MomentTarget {
    /// First moment `E(p_t) = beta*t`.
    Mean { t: f64 },
    /// Second moment `E(p_s p_t) = beta^2*s*t + mu^2*min(s,t)`.
    Product { s: f64, t: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentCell {
    pub target: MomentTarget,
    pub theoretical: f64,
    pub empirical: f64,
    pub std_error: f64,
    pub z_score: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub n: u64,
    pub master_seed: u64,
    pub z_threshold: f64,
    pub cells: Vec<MomentCell>,
    pub pass: bool,
}

#[derive(Clone)]
struct MomentAccumulator {
    firsts: Vec<RunningStats>,
    products: Vec<RunningStats>,
}

impl MomentAccumulator {
    fn new(k: usize) -> Self {
        Self {
            firsts: vec![RunningStats::new(); k],
            products: vec![RunningStats::new(); k * (k + 1) / 2],
        }
    }

    fn merge(&mut self, other: &MomentAccumulator) {
        for (a, b) in self.firsts.iter_mut().zip(&other.firsts) {
            a.merge(b);
        }
        for (a, b) in self.products.iter_mut().zip(&other.products) {
            a.merge(b);
        }
    }
}

/// Compare sample first and second moments on a time grid against the
/// closed forms, one cell per grid time and per ordered pair `s <= t`.
///
/// The grid must be strictly increasing and positive; a single time is the
/// smallest useful grid (one mean cell, one diagonal product cell).
pub fn moment_check(
    params: &ModelParams,
    jumps: JumpSpec,
    time_grid: &[f64],
    n: u64,
    master_seed: u64,
) -> Result<MomentReport> {
    if n < MIN_SAMPLES {
        return Err(Error::InsufficientSample { n, min: MIN_SAMPLES });
    }
    if time_grid.is_empty() {
        return Err(Error::Domain("time grid must contain at least one positive time".into()));
    }
    if !time_grid[0].is_finite() || time_grid[0] <= 0.0 {
        return Err(Error::Domain(format!("grid times must be positive, got {}", time_grid[0])));
    }
    for w in time_grid.windows(2) {
        if !w[1].is_finite() || w[1] <= w[0] {
            return Err(Error::Domain(format!(
                "grid times must be strictly increasing, got {} after {}",
                w[1], w[0]
            )));
        }
    }
    let d = derive(params)?;
    let mut sim_grid = Vec::with_capacity(time_grid.len() + 1);
    sim_grid.push(0.0);
    sim_grid.extend_from_slice(time_grid);

    let k = time_grid.len();
    let ranges: Vec<(u64, u64)> =
        (0..n.div_ceil(CHUNK)).map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(n))).collect();
    let partials: Vec<MomentAccumulator> = ranges
        .par_iter()
        .map(|&(start, end)| {
            let mut acc = MomentAccumulator::new(k);
            for i in start..end {
                let path = simulate_path(params, jumps, &sim_grid, child_seed(master_seed, i))
                    .expect("inputs validated before the batch");
                let values = &path.returns[1..];
                let mut pair_idx = 0;
                for (a, &pa) in values.iter().enumerate() {
                    acc.firsts[a].push(pa);
                    for &pb in &values[a..] {
                        acc.products[pair_idx].push(pa * pb);
                        pair_idx += 1;
                    }
                }
            }
            acc
        })
        .collect();
    let mut total = MomentAccumulator::new(k);
    for part in &partials {
        total.merge(part);
    }

    let mut cells = Vec::with_capacity(k + k * (k + 1) / 2);
    let cell = |target, theoretical: f64, stats: &RunningStats| {
        let empirical = stats.mean();
        let std_error = stats.std_error_of_mean();
        let z_score = (empirical - theoretical) / std_error;
        MomentCell {
            target,
            theoretical,
            empirical,
            std_error,
            z_score,
            pass: z_score.abs() <= DEFAULT_Z_THRESHOLD,
        }
    };
    for (a, &t) in time_grid.iter().enumerate() {
        cells.push(cell(MomentTarget::Mean { t }, d.mean_return(t)?, &total.firsts[a]));
    }
    let mut pair_idx = 0;
    for (a, &s) in time_grid.iter().enumerate() {
        for &t in &time_grid[a..] {
            cells.push(cell(
                MomentTarget::Product { s, t },
                d.second_moment(s, t)?,
                &total.products[pair_idx],
            ));
            pair_idx += 1;
        }
    }
    let pass = cells.iter().all(|c| c.pass);
    Ok(MomentReport { n, master_seed, z_threshold: DEFAULT_Z_THRESHOLD, cells, pass })
}
