//! Forecasting stock returns under a jump-augmented Black–Scholes model.
//!
//! Returns follow `p_t = alpha*t + sigma*W_t + J_t` with a compound-Poisson
//! jump component. The crate provides:
//!
//! - derived quantities (adjusted trend `beta`, total volatility `mu`,
//!   relative volatility `gamma`) and the moment functions of the process
//!   ([`model`]);
//! - exact, reproducible simulation of paths and terminal pairs
//!   ([`simulation`]);
//! - the four forecasts of `p_S` — best measurable, best linear, best
//!   linear unbiased, trivial — with closed-form mean-square errors and
//!   relative performances ([`forecasts`]);
//! - Monte Carlo verification of every closed form ([`montecarlo`]);
//! - relative-performance sweeps over the relative volatility with CSV and
//!   SVG output ([`analysis`]);
//! - the critical-relation check `T < gamma^2` that decides whether the
//!   linear-unbiased forecast beats simply carrying the last observation
//!   forward ([`model::classify_critical`]).
//!
//! The `jumpcast` binary wraps all of it behind a config-file driven CLI.

pub mod analysis;
pub mod config;
pub mod error;
pub mod forecasts;
pub mod model;
pub mod montecarlo;
pub mod simulation;
pub mod stats;

pub use analysis::{FigureFormat, SweepRow, SweepTable, crossing_point, emit_figure, gamma_sweep};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use forecasts::{
    ForecastKind, MseBreakdown, coincident_forecast_beta_zero, forecast_value, mse_table,
    relative_performance, theoretical_mse,
};
pub use model::{
    CriticalRelation, CriticalVerdict, DerivedParams, Horizon, ModelParams, classify_critical,
    derive,
};
pub use montecarlo::{
    MomentReport, MseEstimate, VerificationReport, empirical_mse, moment_check, verify_all,
};
pub use simulation::{
    JumpSpec, PairGenerator, PathGrid, TerminalPair, batch_pairs, child_seed, simulate_path,
    simulate_terminal_pair,
};
