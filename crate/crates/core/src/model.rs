//! Model parameters, derived quantities, moment functions, and the
//! critical-relation classifier.
//!
//! Returns follow `p_t = alpha*t + sigma*W_t + J_t`, where `W` is a standard
//! Wiener process and `J` a compound Poisson process with intensity `lambda`
//! and jump sizes of mean `nu` and variance `tau2`. Everything downstream
//! consumes only the adjusted trend `beta = alpha + lambda*nu` and the total
//! volatility `mu = sqrt(sigma^2 + lambda*(nu^2 + tau2))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Raw inputs of the jump-augmented return model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Trend coefficient, per unit time.
    pub alpha: f64,
    /// Diffusive volatility, per sqrt(time). Must be positive.
    pub sigma: f64,
    /// Jump intensity, per unit time. Must be non-negative.
    pub lambda: f64,
    /// Mean jump size, in log-return units.
    pub nu: f64,
    /// Jump-size variance. Must be non-negative.
    pub tau2: f64,
    /// Initial price. Must be positive.
    pub p0: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, sigma: f64, lambda: f64, nu: f64, tau2: f64, p0: f64) -> Result<Self> {
        let params = Self { alpha, sigma, lambda, nu, tau2, p0 };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |field, value: f64| {
            if value.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter { field, reason: format!("must be finite, got {value}") })
            }
        };
        finite("alpha", self.alpha)?;
        finite("sigma", self.sigma)?;
        finite("lambda", self.lambda)?;
        finite("nu", self.nu)?;
        finite("tau2", self.tau2)?;
        finite("p0", self.p0)?;
        if self.sigma <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "sigma",
                reason: format!("must be > 0, got {}", self.sigma),
            });
        }
        if self.lambda < 0.0 {
            return Err(Error::InvalidParameter {
                field: "lambda",
                reason: format!("must be >= 0, got {}", self.lambda),
            });
        }
        if self.tau2 < 0.0 {
            return Err(Error::InvalidParameter {
                field: "tau2",
                reason: format!("must be >= 0, got {}", self.tau2),
            });
        }
        if self.p0 <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "p0",
                reason: format!("must be > 0, got {}", self.p0),
            });
        }
        Ok(())
    }

    /// Price corresponding to a return value: `P_t = p0 * exp(p_t)`.
    /// Everything else in the crate works in return space.
    pub fn price_of_return(&self, p: f64) -> f64 {
        self.p0 * p.exp()
    }
}

/// Adjusted trend, total volatility, and relative volatility.
///
/// The closed-form forecasts and their mean-square errors depend on the
/// model only through these quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// Adjusted trend `beta = alpha + lambda*nu`, per unit time.
    pub beta: f64,
    /// Total volatility `mu = sqrt(sigma^2 + lambda*(nu^2 + tau2))`, always > 0.
    pub mu: f64,
    /// Relative volatility `gamma = mu / beta`, defined only when beta != 0.
    /// Stored signed; all consumers use `gamma^2`.
    pub gamma: Option<f64>,
}

impl DerivedParams {
    /// Build directly from an adjusted trend and a total volatility.
    pub fn new(beta: f64, mu: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::InvalidParameter {
                field: "beta",
                reason: format!("must be finite, got {beta}"),
            });
        }
        if !mu.is_finite() || mu <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "mu",
                reason: format!("must be > 0 and finite, got {mu}"),
            });
        }
        // beta = 0 is decided by exact comparison, not tolerance; the
        // near-zero guard band is a separate advisory (`near_zero_beta`).
        let gamma = (beta != 0.0).then(|| mu / beta);
        Ok(Self { beta, mu, gamma })
    }

    /// Squared relative volatility, if defined.
    pub fn gamma2(&self) -> Option<f64> {
        self.gamma.map(|g| g * g)
    }

    /// Advisory flag: |beta| is so small relative to mu that gamma^2 exceeds
    /// any practical observation window and formulas amplify rounding.
    pub fn near_zero_beta(&self, t_obs: f64) -> bool {
        self.beta.abs() * t_obs.sqrt() < 1e-12 * self.mu
    }

    /// Expected return at time `t`: `E(p_t) = beta * t`.
    pub fn mean_return(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::Domain(format!("time t = {t} must be non-negative and finite")));
        }
        Ok(self.beta * t)
    }

    /// Second moment `E(p_s p_t) = beta^2*s*t + mu^2*min(s,t)`. Symmetric in (s, t).
    pub fn second_moment(&self, s: f64, t: f64) -> Result<f64> {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::Domain(format!("time s = {s} must be non-negative and finite")));
        }
        if !t.is_finite() || t < 0.0 {
            return Err(Error::Domain(format!("time t = {t} must be non-negative and finite")));
        }
        Ok(self.beta * self.beta * s * t + self.mu * self.mu * s.min(t))
    }
}

/// Compute the derived parameters from raw model inputs.
///
/// With `lambda = 0` the jump component is absent and `beta = alpha`,
/// `mu = sigma` hold exactly (the zero jump variance never goes through
/// a square root).
pub fn derive(params: &ModelParams) -> Result<DerivedParams> {
    params.validate()?;
    let beta = params.alpha + params.lambda * params.nu;
    let jump_var = params.lambda * (params.nu * params.nu + params.tau2);
    let mu = if jump_var == 0.0 {
        params.sigma
    } else {
        (params.sigma * params.sigma + jump_var).sqrt()
    };
    DerivedParams::new(beta, mu)
}

/// Observation endpoint `T` and planning endpoint `S` of a forecast problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Horizon {
    /// Observation endpoint T (the path is observed over [0, T]).
    pub t_obs: f64,
    /// Planning endpoint S > T (the return to be forecast is p_S).
    pub s_target: f64,
}

impl Horizon {
    pub fn new(t_obs: f64, s_target: f64) -> Result<Self> {
        let h = Self { t_obs, s_target };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.t_obs.is_finite() || self.t_obs <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "t_obs",
                reason: format!("must be > 0 and finite, got {}", self.t_obs),
            });
        }
        if !self.s_target.is_finite() || self.s_target <= self.t_obs {
            return Err(Error::InvalidParameter {
                field: "s_target",
                reason: format!("must be > t_obs = {} and finite, got {}", self.t_obs, self.s_target),
            });
        }
        Ok(())
    }

    /// Length of the prediction window, `S - T`.
    pub fn window(&self) -> f64 {
        self.s_target - self.t_obs
    }
}

/// Which of the linear-unbiased and trivial forecasts has the smaller
/// mean-square error over the given horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalRelation {
    /// T > gamma^2: the linear-unbiased forecast is better.
    BlueBetter,
    /// T = gamma^2: both have the same mean-square error.
    Tie,
    /// T < gamma^2: the trivial forecast is better.
    TrivialBetter,
}

/// Verdict of the critical-relation check `T < gamma^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalVerdict {
    pub relation: CriticalRelation,
    /// Critical time `gamma^2`: the minimum safe observation length.
    pub critical_time: f64,
    /// Critical relative volatility `sqrt(T)`: the maximum safe |gamma|.
    pub critical_volatility: f64,
}

/// Classify the horizon against the critical relation `T < gamma^2`.
///
/// Comparison is exact on computed values; the verdict flips at `T = gamma^2`.
/// Errors with [`Error::UndefinedGamma`] when beta = 0, in which case all
/// forecasts coincide and the question is moot.
pub fn classify_critical(h: &Horizon, d: &DerivedParams) -> Result<CriticalVerdict> {
    h.validate()?;
    let gamma = d.gamma.ok_or(Error::UndefinedGamma)?;
    let critical_time = gamma * gamma;
    let relation = if h.t_obs < critical_time {
        CriticalRelation::TrivialBetter
    } else if h.t_obs == critical_time {
        CriticalRelation::Tie
    } else {
        CriticalRelation::BlueBetter
    };
    Ok(CriticalVerdict { relation, critical_time, critical_volatility: h.t_obs.sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(alpha: f64, sigma: f64, lambda: f64, nu: f64, tau2: f64) -> ModelParams {
        ModelParams { alpha, sigma, lambda, nu, tau2, p0: 100.0 }
    }

    #[test]
    fn derive_without_jumps_recovers_plain_model() {
        let d = derive(&params(0.05, 0.2, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(d.beta, 0.05);
        assert_eq!(d.mu, 0.2);
        assert_eq!(d.gamma, Some(4.0));
    }

    #[test]
    fn derive_zero_intensity_ignores_jump_moments() {
        // lambda = 0 must kill the jump component no matter what nu, tau2 say.
        let d = derive(&params(0.05, 0.2, 0.0, 7.0, 3.0)).unwrap();
        assert_eq!(d.beta, 0.05);
        assert_eq!(d.mu, 0.2);
    }

    #[test]
    fn derive_cancelling_trend_yields_no_gamma() {
        let d = derive(&params(0.1, 0.2, 2.0, -0.05, 0.01)).unwrap();
        assert_eq!(d.beta, 0.0);
        assert_eq!(d.gamma, None);
    }

    #[test]
    fn derive_hand_checked_arithmetic() {
        // beta = 0.05 + 1*0.01 = 0.06, mu = sqrt(0.04 + 1*(0.0001 + 0.04))
        let d = derive(&params(0.05, 0.2, 1.0, 0.01, 0.04)).unwrap();
        assert_relative_eq!(d.beta, 0.06, max_relative = 1e-15);
        assert_relative_eq!(d.mu, 0.0801f64.sqrt(), max_relative = 1e-15);
        assert!((d.mu - 0.28302).abs() < 5e-6);
        let gamma = d.gamma.unwrap();
        assert_relative_eq!(gamma, d.mu / d.beta, max_relative = 1e-15);
    }

    #[test]
    fn derive_rejects_bad_params() {
        let err = derive(&params(0.05, 0.0, 0.0, 0.0, 0.0)).unwrap_err();
        assert!(err.to_string().contains("sigma"), "{err}");
        let err = derive(&params(0.05, 0.2, -1.0, 0.0, 0.0)).unwrap_err();
        assert!(err.to_string().contains("lambda"), "{err}");
        let err = derive(&params(0.05, 0.2, 1.0, 0.0, -0.5)).unwrap_err();
        assert!(err.to_string().contains("tau2"), "{err}");
        let err = ModelParams::new(0.05, 0.2, 1.0, 0.0, 0.5, 0.0).unwrap_err();
        assert!(err.to_string().contains("p0"), "{err}");
        let err = derive(&params(f64::NAN, 0.2, 1.0, 0.0, 0.5)).unwrap_err();
        assert!(err.to_string().contains("alpha"), "{err}");
    }

    #[test]
    fn mu_never_below_sigma() {
        let d = derive(&params(0.05, 0.2, 2.0, 0.01, 0.04)).unwrap();
        assert!(d.mu > 0.2);
        // equality iff lambda*(nu^2 + tau2) = 0
        let d = derive(&params(0.05, 0.2, 2.0, 0.0, 0.0)).unwrap();
        assert_eq!(d.mu, 0.2);
    }

    #[test]
    fn mean_return_examples() {
        let d = DerivedParams::new(0.06, 0.3).unwrap();
        assert_eq!(d.mean_return(0.0).unwrap(), 0.0);
        assert_relative_eq!(d.mean_return(10.0).unwrap(), 0.6, max_relative = 1e-15);
        let flat = DerivedParams::new(0.0, 0.3).unwrap();
        assert_eq!(flat.mean_return(123.0).unwrap(), 0.0);
        assert!(d.mean_return(-1.0).is_err());
    }

    #[test]
    fn second_moment_examples() {
        let d = DerivedParams::new(0.06, 0.3).unwrap();
        assert_eq!(d.second_moment(0.0, 5.0).unwrap(), 0.0);
        // beta^2*16 + mu^2*4 = 0.0576 + 0.36
        assert_relative_eq!(d.second_moment(4.0, 4.0).unwrap(), 0.4176, max_relative = 1e-12);
        assert_eq!(
            d.second_moment(2.0, 5.0).unwrap(),
            d.second_moment(5.0, 2.0).unwrap()
        );
        assert!(d.second_moment(-0.1, 2.0).is_err());
    }

    #[test]
    fn covariance_kernel_is_nonnegative() {
        let d = DerivedParams::new(0.06, 0.3).unwrap();
        for (s, t) in [(1.0, 2.0), (3.5, 0.25), (10.0, 10.0)] {
            let cov = d.second_moment(s, t).unwrap()
                - d.mean_return(s).unwrap() * d.mean_return(t).unwrap();
            assert_relative_eq!(cov, d.mu * d.mu * s.min(t), max_relative = 1e-12);
            assert!(cov >= 0.0);
        }
    }

    #[test]
    fn classify_tie_at_critical_volatility() {
        let gamma = 6.0f64.sqrt();
        let d = DerivedParams::new(1.0, gamma).unwrap();
        let t_obs = gamma * gamma;
        let h = Horizon { t_obs, s_target: t_obs + 3.0 };
        let v = classify_critical(&h, &d).unwrap();
        assert_eq!(v.relation, CriticalRelation::Tie);
        assert!((v.critical_volatility - 6.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn classify_inequalities() {
        let h = Horizon::new(6.0, 9.0).unwrap();
        let high = DerivedParams::new(1.0, 4.0).unwrap(); // gamma = 4, T < 16
        assert_eq!(classify_critical(&h, &high).unwrap().relation, CriticalRelation::TrivialBetter);
        let low = DerivedParams::new(1.0, 1.0).unwrap(); // gamma = 1, T > 1
        assert_eq!(classify_critical(&h, &low).unwrap().relation, CriticalRelation::BlueBetter);
    }

    #[test]
    fn classify_flips_at_machine_adjacent_points() {
        let gamma = 2.5f64;
        let d = DerivedParams::new(1.0, gamma).unwrap();
        let critical = gamma * gamma;
        let just_above = f64::from_bits(critical.to_bits() + 1);
        let just_below = f64::from_bits(critical.to_bits() - 1);
        let at = |t: f64| {
            classify_critical(&Horizon { t_obs: t, s_target: t + 1.0 }, &d).unwrap().relation
        };
        assert_eq!(at(critical), CriticalRelation::Tie);
        assert_eq!(at(just_above), CriticalRelation::BlueBetter);
        assert_eq!(at(just_below), CriticalRelation::TrivialBetter);
    }

    #[test]
    fn classify_requires_gamma() {
        let d = DerivedParams::new(0.0, 0.3).unwrap();
        let h = Horizon::new(6.0, 9.0).unwrap();
        let err = classify_critical(&h, &d).unwrap_err();
        assert!(err.to_string().contains("coincide"), "{err}");
    }

    #[test]
    fn near_zero_beta_guard_band() {
        let d = DerivedParams::new(1e-16, 0.3).unwrap();
        assert!(d.gamma.is_some());
        assert!(d.near_zero_beta(6.0));
        let d = DerivedParams::new(0.06, 0.3).unwrap();
        assert!(!d.near_zero_beta(6.0));
    }

    #[test]
    fn derive_scales_linearly_in_alpha_and_lambda() {
        let base = params(0.03, 0.2, 1.5, 0.02, 0.01);
        let c = 3.0;
        let scaled = params(c * 0.03, 0.2, c * 1.5, 0.02, 0.01);
        let d = derive(&scaled).unwrap();
        assert_relative_eq!(d.beta, c * 0.03 + c * 1.5 * 0.02, max_relative = 1e-15);
        assert_relative_eq!(d.beta, c * derive(&base).unwrap().beta, max_relative = 1e-12);
    }

    #[test]
    fn horizon_validation() {
        assert!(Horizon::new(6.0, 9.0).is_ok());
        assert!(Horizon::new(0.0, 9.0).is_err());
        assert!(Horizon::new(-1.0, 9.0).is_err());
        assert!(Horizon::new(9.0, 9.0).is_err());
        assert!(Horizon::new(9.0, 6.0).is_err());
        assert!(Horizon::new(6.0, f64::INFINITY).is_err());
    }

    #[test]
    fn price_transform() {
        let p = params(0.05, 0.2, 0.0, 0.0, 0.0);
        assert_eq!(p.price_of_return(0.0), 100.0);
        assert_relative_eq!(p.price_of_return(0.1), 100.0 * 0.1f64.exp(), max_relative = 1e-15);
    }
}
