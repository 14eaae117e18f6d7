//! The four forecasts of the future return `p_S` given observation of the
//! path over `[0, T]`, their closed-form mean-square errors, and their
//! relative performances.
//!
//! With `w = S - T` and `g2 = gamma^2`:
//!
//! | forecast          | value                    | mean-square error        | relative performance |
//! |-------------------|--------------------------|--------------------------|----------------------|
//! | best measurable   | `p_T + beta*w`           | `mu^2*w`                 | `1`                  |
//! | best linear       | `p_T*(S+g2)/(T+g2)`      | `mu^2*w*(S+g2)/(T+g2)`   | `(T+g2)/(S+g2)`      |
//! | blue (lin. unb.)  | `p_T*S/T`                | `mu^2*w*S/T`             | `T/S`                |
//! | trivial           | `p_T`                    | `mu^2*w*(1 + w/g2)`      | `g2/(g2+w)`          |
//!
//! All formulas consume `gamma^2` only, so they are even in `gamma`. When
//! `beta = 0` the optimal forecasts all coincide with `p_T` and the common
//! mean-square error is `mu^2*w`.
//!
//! At `T = gamma^2` the blue and trivial errors agree algebraically; in
//! floating point the two routes may differ by a few ulps (comparisons at
//! the crossover allow 8).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DerivedParams, Horizon};

/// The four predictors under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForecastKind {
    /// Conditional expectation given the observed path.
    BestMeasurable,
    /// Minimum-MSE element of the closed linear span of observed returns.
    BestLinear,
    /// Minimum-MSE linear forecast with the correct mean (best linear unbiased).
    Blue,
    /// The last observed return, used unchanged.
    Trivial,
}

impl ForecastKind {
    pub const ALL: [ForecastKind; 4] = [
        ForecastKind::BestMeasurable,
        ForecastKind::BestLinear,
        ForecastKind::Blue,
        ForecastKind::Trivial,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ForecastKind::BestMeasurable => "best_measurable",
            ForecastKind::BestLinear => "best_linear",
            ForecastKind::Blue => "blue",
            ForecastKind::Trivial => "trivial",
        }
    }
}

impl std::fmt::Display for ForecastKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Horizon check shared by the forecast-value path. `S = T` is tolerated
/// here (every formula collapses to `p_T` there); the MSE formulas insist
/// on a strictly positive window.
fn validate_forecast_horizon(h: &Horizon) -> Result<()> {
    if !h.t_obs.is_finite() || h.t_obs <= 0.0 {
        return Err(Error::Domain(format!("t_obs = {} must be > 0 and finite", h.t_obs)));
    }
    if !h.s_target.is_finite() || h.s_target < h.t_obs {
        return Err(Error::Domain(format!(
            "s_target = {} must be >= t_obs = {} and finite",
            h.s_target, h.t_obs
        )));
    }
    Ok(())
}

fn validate_mse_horizon(h: &Horizon) -> Result<()> {
    validate_forecast_horizon(h)?;
    if h.s_target <= h.t_obs {
        return Err(Error::Domain(format!(
            "s_target = {} must be > t_obs = {} for a mean-square error",
            h.s_target, h.t_obs
        )));
    }
    Ok(())
}

/// Every forecast is affine in the observed return: `a * p_T + b`.
/// Shared by [`forecast_value`] and the Monte Carlo error loop so both
/// evaluate the identical floating-point expression.
pub(crate) fn affine_coefficients(
    kind: ForecastKind,
    h: &Horizon,
    d: &DerivedParams,
) -> Result<(f64, f64)> {
    validate_forecast_horizon(h)?;
    match kind {
        ForecastKind::BestMeasurable => {
            if d.gamma.is_none() {
                return Err(Error::UndefinedGamma);
            }
            Ok((1.0, d.beta * h.window()))
        }
        ForecastKind::BestLinear => {
            let g2 = d.gamma2().ok_or(Error::UndefinedGamma)?;
            Ok(((h.s_target + g2) / (h.t_obs + g2), 0.0))
        }
        ForecastKind::Blue => Ok((h.s_target / h.t_obs, 0.0)),
        ForecastKind::Trivial => Ok((1.0, 0.0)),
    }
}

/// Value of a forecast given the observed return `p_T`.
///
/// `BestMeasurable` and `BestLinear` consume `beta` resp. `gamma` and
/// therefore reject `beta = 0`; callers should fall back to
/// [`coincident_forecast_beta_zero`] in that case.
pub fn forecast_value(
    kind: ForecastKind,
    p_t_obs: f64,
    h: &Horizon,
    d: &DerivedParams,
) -> Result<f64> {
    let (a, b) = affine_coefficients(kind, h, d)?;
    Ok(a * p_t_obs + b)
}

/// The common forecast when `beta = 0`: all four predictors equal `p_T`.
pub fn coincident_forecast_beta_zero(p_t_obs: f64) -> f64 {
    p_t_obs
}

/// Closed-form mean-square error of a forecast.
///
/// With `beta = 0` every kind returns the error of the common coincident
/// forecast, `mu^2 * (S - T)`, computed without touching `gamma`.
pub fn theoretical_mse(kind: ForecastKind, h: &Horizon, d: &DerivedParams) -> Result<f64> {
    validate_mse_horizon(h)?;
    let w = h.window();
    let base = d.mu * d.mu * w;
    let Some(g2) = d.gamma2() else {
        return Ok(base);
    };
    Ok(match kind {
        ForecastKind::BestMeasurable => base,
        ForecastKind::BestLinear => base * (h.s_target + g2) / (h.t_obs + g2),
        ForecastKind::Blue => base * h.s_target / h.t_obs,
        ForecastKind::Trivial => base * (1.0 + w / g2),
    })
}

/// Relative performance `delta = mse(best measurable) / mse(kind)`, in [0, 1].
///
/// Consumes `gamma^2` directly so that evenness in `gamma` is structural.
/// At `gamma2 = 0` the trivial forecast returns its limit 0.
pub fn relative_performance(kind: ForecastKind, h: &Horizon, gamma2: f64) -> Result<f64> {
    validate_mse_horizon(h)?;
    if !gamma2.is_finite() || gamma2 < 0.0 {
        return Err(Error::Domain(format!("gamma2 = {gamma2} must be >= 0 and finite")));
    }
    Ok(match kind {
        ForecastKind::BestMeasurable => 1.0,
        ForecastKind::BestLinear => (h.t_obs + gamma2) / (h.s_target + gamma2),
        ForecastKind::Blue => h.t_obs / h.s_target,
        ForecastKind::Trivial => gamma2 / (gamma2 + h.window()),
    })
}

/// One row of the error-comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MseBreakdown {
    pub kind: ForecastKind,
    /// Mean-square error, in squared-return units.
    pub mse: f64,
    /// `mse(best measurable) / mse(kind)`; 1 for the best measurable kind,
    /// and 1 for every kind when `beta = 0` (all forecasts coincide).
    pub relative_performance: f64,
}

impl MseBreakdown {
    pub fn compute(kind: ForecastKind, h: &Horizon, d: &DerivedParams) -> Result<Self> {
        let mse = theoretical_mse(kind, h, d)?;
        let relative_performance = match d.gamma2() {
            Some(g2) => relative_performance(kind, h, g2)?,
            None => 1.0,
        };
        Ok(Self { kind, mse, relative_performance })
    }

    pub const CSV_HEADER: &'static str = "kind,mse,delta";

    pub fn csv_row(&self) -> String {
        format!("{},{},{}", self.kind, self.mse, self.relative_performance)
    }
}

/// The full table, one row per forecast kind.
pub fn mse_table(h: &Horizon, d: &DerivedParams) -> Result<Vec<MseBreakdown>> {
    ForecastKind::ALL.iter().map(|&kind| MseBreakdown::compute(kind, h, d)).collect()
}
