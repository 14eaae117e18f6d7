//! C ABI for the jumpcast library.
//!
//! Plain-old-data structs cross the boundary by value or through caller
//! provided out-pointers; the pair-batch simulator is an opaque handle with
//! explicit new/free. Every fallible call returns a [`JcStatus`] code and
//! writes results only on `JC_STATUS_OK`. The header `include/jumpcast.h`
//! is generated by cbindgen at build time.

use std::ffi::{CStr, c_char};

use jumpcast::error::Error;
use jumpcast::forecasts::ForecastKind;
use jumpcast::model::{CriticalRelation, DerivedParams, Horizon, ModelParams};
use jumpcast::simulation::{JumpSpec, PairGenerator};

/// Result code of a jumpcast call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    DomainError = 3,
    /// beta = 0: the relative volatility is undefined and all forecasts
    /// coincide at the last observed return.
    UndefinedGamma = 4,
    EmptyBatch = 5,
    InsufficientSample = 6,
    EmptyTable = 7,
    ParseError = 8,
    IoError = 9,
}

impl From<&Error> for JcStatus {
    fn from(err: &Error) -> Self {
        match err {
            Error::InvalidParameter { .. } => JcStatus::InvalidParameter,
            Error::Domain(_) => JcStatus::DomainError,
            Error::UndefinedGamma => JcStatus::UndefinedGamma,
            Error::EmptyBatch => JcStatus::EmptyBatch,
            Error::InsufficientSample { .. } => JcStatus::InsufficientSample,
            Error::EmptyTable => JcStatus::EmptyTable,
            Error::Parse(_) => JcStatus::ParseError,
            Error::Io(_) => JcStatus::IoError,
        }
    }
}

/// Raw model inputs of the jump-diffusion return process.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct JcModelParams {
    pub alpha: f64,
    pub sigma: f64,
    pub lambda: f64,
    pub nu: f64,
    pub tau2: f64,
    pub p0: f64,
}

/// Adjusted trend, total volatility, and (optional) relative volatility.
/// `gamma` is meaningful only when `has_gamma` is true.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct JcDerivedParams {
    pub beta: f64,
    pub mu: f64,
    pub gamma: f64,
    pub has_gamma: bool,
}

/// Jump-size law selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JcJumpKind {
    Gaussian = 0,
    Constant = 1,
    TwoPoint = 2,
}

/// Forecast selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JcForecastKind {
    BestMeasurable = 0,
    BestLinear = 1,
    Blue = 2,
    Trivial = 3,
}

/// Outcome of the critical-relation check `T < gamma^2`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JcCriticalRelation {
    BlueBetter = 0,
    Tie = 1,
    TrivialBetter = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct JcCriticalVerdict {
    pub relation: JcCriticalRelation,
    /// Critical time gamma^2.
    pub critical_time: f64,
    /// Critical relative volatility sqrt(T).
    pub critical_volatility: f64,
}

/// One closed-form-vs-Monte-Carlo comparison row.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct JcVerificationReport {
    pub kind: JcForecastKind,
    pub theoretical: f64,
    pub empirical_mse: f64,
    pub std_error: f64,
    pub z_score: f64,
    pub n: u64,
    pub pass: bool,
}

/// Opaque deterministic batch of (p_T, p_S) pairs.
pub struct JcSimulator {
    inner: PairGenerator,
}

fn model_from(c: &JcModelParams) -> ModelParams {
    ModelParams { alpha: c.alpha, sigma: c.sigma, lambda: c.lambda, nu: c.nu, tau2: c.tau2, p0: c.p0 }
}

/// Rebuild validated derived parameters from the C struct. `gamma` is
/// recomputed from (beta, mu), which keeps the presence flag consistent.
fn derived_from(c: &JcDerivedParams) -> Result<DerivedParams, Error> {
    DerivedParams::new(c.beta, c.mu)
}

fn derived_to(d: &DerivedParams) -> JcDerivedParams {
    JcDerivedParams {
        beta: d.beta,
        mu: d.mu,
        gamma: d.gamma.unwrap_or(0.0),
        has_gamma: d.gamma.is_some(),
    }
}

fn jump_spec_from(kind: JcJumpKind) -> JumpSpec {
    match kind {
        JcJumpKind::Gaussian => JumpSpec::Gaussian,
        JcJumpKind::Constant => JumpSpec::Constant,
        JcJumpKind::TwoPoint => JumpSpec::TwoPoint,
    }
}

fn forecast_kind_from(kind: JcForecastKind) -> ForecastKind {
    match kind {
        JcForecastKind::BestMeasurable => ForecastKind::BestMeasurable,
        JcForecastKind::BestLinear => ForecastKind::BestLinear,
        JcForecastKind::Blue => ForecastKind::Blue,
        JcForecastKind::Trivial => ForecastKind::Trivial,
    }
}

fn forecast_kind_to(kind: ForecastKind) -> JcForecastKind {
    match kind {
        ForecastKind::BestMeasurable => JcForecastKind::BestMeasurable,
        ForecastKind::BestLinear => JcForecastKind::BestLinear,
        ForecastKind::Blue => JcForecastKind::Blue,
        ForecastKind::Trivial => JcForecastKind::Trivial,
    }
}

/// Static description of a status code. Never null; do not free.
#[unsafe(no_mangle)]
pub extern "C" fn jc_status_message(status: JcStatus) -> *const c_char {
    let message: &CStr = match status {
        JcStatus::Ok => c"ok",
        JcStatus::NullPointer => c"null pointer argument",
        JcStatus::InvalidParameter => c"invalid parameter",
        JcStatus::DomainError => c"argument outside operation domain",
        JcStatus::UndefinedGamma => {
            c"relative volatility undefined (beta = 0): all forecasts coincide at p_T"
        }
        JcStatus::EmptyBatch => c"empty batch: n must be at least 1",
        JcStatus::InsufficientSample => c"insufficient sample size",
        JcStatus::EmptyTable => c"empty sweep table",
        JcStatus::ParseError => c"parse error",
        JcStatus::IoError => c"i/o error",
    };
    message.as_ptr()
}

/// Compute derived parameters (beta, mu, gamma) from raw model inputs.
///
/// # Safety
/// `params` and `out` must be valid, properly aligned pointers.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_derive(
    params: *const JcModelParams,
    out: *mut JcDerivedParams,
) -> JcStatus {
    let (Some(params), Some(out)) = (unsafe { params.as_ref() }, unsafe { out.as_mut() }) else {
        return JcStatus::NullPointer;
    };
    match jumpcast::derive(&model_from(params)) {
        Ok(d) => {
            *out = derived_to(&d);
            JcStatus::Ok
        }
        Err(err) => (&err).into(),
    }
}

/// Expected return at time `t`: beta * t.
///
/// # Safety
/// `derived` and `out` must be valid pointers.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_mean_return(
    derived: *const JcDerivedParams,
    t: f64,
    out: *mut f64,
) -> JcStatus {
    let (Some(derived), Some(out)) = (unsafe { derived.as_ref() }, unsafe { out.as_mut() }) else {
        return JcStatus::NullPointer;
    };
    match derived_from(derived).and_then(|d| d.mean_return(t)) {
        Ok(v) => {
            *out = v;
            JcStatus::Ok
        }
        Err(err) => (&err).into(),
    }
}

/// Second moment E(p_s p_t) = beta^2 s t + mu^2 min(s, t).
///
/// # Safety
/// `derived` and `out` must be valid pointers.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_second_moment(
    derived: *const JcDerivedParams,
    s: f64,
    t: f64,
    out: *mut f64,
) -> JcStatus {
    let (Some(derived), Some(out)) = (unsafe { derived.as_ref() }, unsafe { out.as_mut() }) else {
        return JcStatus::NullPointer;
    };
    match derived_from(derived).and_then(|d| d.second_moment(s, t)) {
        Ok(v) => {
            *out = v;
            JcStatus::Ok
        }
        Err(err) => (&err).into(),
    }
}

/// Classify the horizon against the critical relation `T < gamma^2`.
///
/// # Safety
/// `derived` and `out` must be valid pointers.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_classify_critical(
    derived: *const JcDerivedParams,
    t_obs: f64,
    s_target: f64,
    out: *mut JcCriticalVerdict,
) -> JcStatus {
    let (Some(derived), Some(out)) = (unsafe { derived.as_ref() }, unsafe { out.as_mut() }) else {
        return JcStatus::NullPointer;
    };
    let h = Horizon { t_obs, s_target };
    let result = derived_from(derived).and_then(|d| jumpcast::classify_critical(&h, &d));
    match result {
        Ok(v) => {
            *out = JcCriticalVerdict {
                relation: match v.relation {
                    CriticalRelation::BlueBetter => JcCriticalRelation::BlueBetter,
                    CriticalRelation::Tie => JcCriticalRelation::Tie,
                    CriticalRelation::TrivialBetter => JcCriticalRelation::TrivialBetter,
                },
                critical_time: v.critical_time,
                critical_volatility: v.critical_volatility,
            };
            JcStatus::Ok
        }
        Err(err) => (&err).into(),
    }
}

/// Value of a forecast given the observed return p_T.
///
/// # Safety
/// `derived` and `out` must be valid pointers.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_forecast_value(
    kind: JcForecastKind,
    p_t_obs: f64,
    t_obs: f64,
    s_target: f64,
    derived: *const JcDerivedParams,
    out: *mut f64,
) -> JcStatus {
    let (Some(derived), Some(out)) = (unsafe { derived.as_ref() }, unsafe { out.as_mut() }) else {
        return JcStatus::NullPointer;
    };
    let h = Horizon { t_obs, s_target };
    let result = derived_from(derived)
        .and_then(|d| jumpcast::forecast_value(forecast_kind_from(kind), p_t_obs, &h, &d));
    match result {
        Ok(v) => {
            *out = v;
            JcStatus::Ok
        }
        Err(err) => (&err).into(),
    }
}

/// The common forecast when beta = 0: every predictor returns p_T.
#[unsafe(no_mangle)]
pub extern "C" fn jc_coincident_forecast_beta_zero(p_t_obs: f64) -> f64 {
    jumpcast::coincident_forecast_beta_zero(p_t_obs)
}

/// Closed-form mean-square error of a forecast.
///
/// # Safety
/// `derived` and `out` must be valid pointers.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_theoretical_mse(
    kind: JcForecastKind,
    t_obs: f64,
    s_target: f64,
    derived: *const JcDerivedParams,
    out: *mut f64,
) -> JcStatus {
    let (Some(derived), Some(out)) = (unsafe { derived.as_ref() }, unsafe { out.as_mut() }) else {
        return JcStatus::NullPointer;
    };
    let h = Horizon { t_obs, s_target };
    let result =
        derived_from(derived).and_then(|d| jumpcast::theoretical_mse(forecast_kind_from(kind), &h, &d));
    match result {
        Ok(v) => {
            *out = v;
            JcStatus::Ok
        }
        Err(err) => (&err).into(),
    }
}

/// Relative performance delta in [0, 1]; consumes gamma^2 directly.
///
/// # Safety
/// `out` must be a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_relative_performance(
    kind: JcForecastKind,
    t_obs: f64,
    s_target: f64,
    gamma2: f64,
    out: *mut f64,
) -> JcStatus {
    let Some(out) = (unsafe { out.as_mut() }) else {
        return JcStatus::NullPointer;
    };
    let h = Horizon { t_obs, s_target };
    match jumpcast::relative_performance(forecast_kind_from(kind), &h, gamma2) {
        Ok(v) => {
            *out = v;
            JcStatus::Ok
        }
        Err(err) => (&err).into(),
    }
}

/// Create a deterministic batch simulator for `n` terminal pairs. On
/// success the handle must be released with [`jc_simulator_free`].
///
/// # Safety
/// `params` and `out` must be valid pointers.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_simulator_new(
    params: *const JcModelParams,
    jumps: JcJumpKind,
    t_obs: f64,
    s_target: f64,
    n: u64,
    master_seed: u64,
    out: *mut *mut JcSimulator,
) -> JcStatus {
    let (Some(params), Some(out)) = (unsafe { params.as_ref() }, unsafe { out.as_mut() }) else {
        return JcStatus::NullPointer;
    };
    let horizon = Horizon { t_obs, s_target };
    match PairGenerator::new(model_from(params), jump_spec_from(jumps), horizon, n, master_seed) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(JcSimulator { inner }));
            JcStatus::Ok
        }
        Err(err) => (&err).into(),
    }
}

/// Number of pairs in the batch.
///
/// # Safety
/// `simulator` must be a live handle from [`jc_simulator_new`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_simulator_len(simulator: *const JcSimulator) -> u64 {
    match unsafe { simulator.as_ref() } {
        Some(s) => s.inner.len(),
        None => 0,
    }
}

/// The pair at batch index `index` (reproducible random access).
///
/// # Safety
/// `simulator` must be a live handle; `p_t_out` and `p_s_out` must be
/// valid pointers.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_simulator_pair(
    simulator: *const JcSimulator,
    index: u64,
    p_t_out: *mut f64,
    p_s_out: *mut f64,
) -> JcStatus {
    let (Some(simulator), Some(p_t_out), Some(p_s_out)) =
        (unsafe { simulator.as_ref() }, unsafe { p_t_out.as_mut() }, unsafe { p_s_out.as_mut() })
    else {
        return JcStatus::NullPointer;
    };
    if index >= simulator.inner.len() {
        return JcStatus::DomainError;
    }
    let pair = simulator.inner.pair(index);
    *p_t_out = pair.p_t_obs;
    *p_s_out = pair.p_s_target;
    JcStatus::Ok
}

/// Release a simulator handle. Passing null is a no-op.
///
/// # Safety
/// `simulator` must be null or a pointer returned by [`jc_simulator_new`]
/// that has not been freed yet.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_simulator_free(simulator: *mut JcSimulator) {
    if !simulator.is_null() {
        drop(unsafe { Box::from_raw(simulator) });
    }
}

/// Monte Carlo verification of all four closed-form mean-square errors.
/// `reports_out` must point to an array of at least four elements; it is
/// filled in the order best measurable, best linear, blue, trivial.
///
/// # Safety
/// `params` must be valid; `reports_out` must point to writable memory for
/// four `JcVerificationReport` values.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_verify_all(
    params: *const JcModelParams,
    jumps: JcJumpKind,
    t_obs: f64,
    s_target: f64,
    n: u64,
    master_seed: u64,
    z_threshold: f64,
    reports_out: *mut JcVerificationReport,
) -> JcStatus {
    let Some(params) = (unsafe { params.as_ref() }) else {
        return JcStatus::NullPointer;
    };
    if reports_out.is_null() {
        return JcStatus::NullPointer;
    }
    let horizon = Horizon { t_obs, s_target };
    let reports = match jumpcast::verify_all(
        &model_from(params),
        jump_spec_from(jumps),
        &horizon,
        n,
        master_seed,
        z_threshold,
    ) {
        Ok(reports) => reports,
        Err(err) => return (&err).into(),
    };
    for (i, report) in reports.iter().enumerate() {
        unsafe {
            *reports_out.add(i) = JcVerificationReport {
                kind: forecast_kind_to(report.kind),
                theoretical: report.theoretical,
                empirical_mse: report.empirical.mean_sq_err,
                std_error: report.empirical.std_error,
                z_score: report.z_score,
                n: report.empirical.n,
                pass: report.pass,
            };
        }
    }
    JcStatus::Ok
}

fn sweep_bytes(
    t_obs: f64,
    s_target: f64,
    gamma_min: f64,
    gamma_max: f64,
    step: f64,
    format: jumpcast::FigureFormat,
) -> Result<*mut c_char, Error> {
    let h = Horizon { t_obs, s_target };
    let table = jumpcast::gamma_sweep(&h, gamma_min, gamma_max, step)?;
    let bytes = jumpcast::emit_figure(&table, format)?;
    let c_string = std::ffi::CString::new(bytes)
        .map_err(|e| Error::Parse(format!("interior NUL in output: {e}")))?;
    Ok(c_string.into_raw())
}

/// Relative-performance sweep encoded as CSV. The returned string must be
/// released with [`jc_string_free`].
///
/// # Safety
/// `out` must be a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_gamma_sweep_csv(
    t_obs: f64,
    s_target: f64,
    gamma_min: f64,
    gamma_max: f64,
    step: f64,
    out: *mut *mut c_char,
) -> JcStatus {
    let Some(out) = (unsafe { out.as_mut() }) else {
        return JcStatus::NullPointer;
    };
    match sweep_bytes(t_obs, s_target, gamma_min, gamma_max, step, jumpcast::FigureFormat::Csv) {
        Ok(ptr) => {
            *out = ptr;
            JcStatus::Ok
        }
        Err(err) => (&err).into(),
    }
}

/// Relative-performance sweep rendered as a self-contained SVG chart. The
/// returned string must be released with [`jc_string_free`].
///
/// # Safety
/// `out` must be a valid pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_gamma_sweep_svg(
    t_obs: f64,
    s_target: f64,
    gamma_min: f64,
    gamma_max: f64,
    step: f64,
    out: *mut *mut c_char,
) -> JcStatus {
    let Some(out) = (unsafe { out.as_mut() }) else {
        return JcStatus::NullPointer;
    };
    match sweep_bytes(t_obs, s_target, gamma_min, gamma_max, step, jumpcast::FigureFormat::Svg) {
        Ok(ptr) => {
            *out = ptr;
            JcStatus::Ok
        }
        Err(err) => (&err).into(),
    }
}

/// Release a string returned by a `jc_gamma_sweep_*` call. Null is a no-op.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library that has not
/// been freed yet.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn jc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { std::ffi::CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_params() -> JcModelParams {
        JcModelParams { alpha: 0.05, sigma: 0.2, lambda: 1.0, nu: 0.01, tau2: 0.04, p0: 100.0 }
    }

    #[test]
    fn derive_round_trip() {
        let params = reference_params();
        let mut derived = JcDerivedParams { beta: 0.0, mu: 0.0, gamma: 0.0, has_gamma: false };
        let status = unsafe { jc_derive(&params, &mut derived) };
        assert_eq!(status, JcStatus::Ok);
        assert!((derived.beta - 0.06).abs() < 1e-15);
        assert!((derived.mu - 0.0801f64.sqrt()).abs() < 1e-15);
        assert!(derived.has_gamma);
    }

    #[test]
    fn null_pointers_are_reported() {
        let params = reference_params();
        let mut derived = JcDerivedParams { beta: 0.0, mu: 0.0, gamma: 0.0, has_gamma: false };
        assert_eq!(unsafe { jc_derive(std::ptr::null(), &mut derived) }, JcStatus::NullPointer);
        assert_eq!(unsafe { jc_derive(&params, std::ptr::null_mut()) }, JcStatus::NullPointer);
    }

    #[test]
    fn invalid_parameters_are_reported() {
        let params = JcModelParams { sigma: -1.0, ..reference_params() };
        let mut derived = JcDerivedParams { beta: 0.0, mu: 0.0, gamma: 0.0, has_gamma: false };
        assert_eq!(unsafe { jc_derive(&params, &mut derived) }, JcStatus::InvalidParameter);
    }

    #[test]
    fn forecast_and_mse_values() {
        let params = reference_params();
        let mut derived = JcDerivedParams { beta: 0.0, mu: 0.0, gamma: 0.0, has_gamma: false };
        unsafe { jc_derive(&params, &mut derived) };

        let mut value = 0.0;
        let status =
            unsafe { jc_forecast_value(JcForecastKind::Blue, 0.12, 6.0, 9.0, &derived, &mut value) };
        assert_eq!(status, JcStatus::Ok);
        assert!((value - 0.18).abs() < 1e-15);

        let mut mse = 0.0;
        let status =
            unsafe { jc_theoretical_mse(JcForecastKind::BestMeasurable, 6.0, 9.0, &derived, &mut mse) };
        assert_eq!(status, JcStatus::Ok);
        assert!((mse - 0.2403).abs() < 1e-15);

        let mut delta = 0.0;
        let status = unsafe {
            jc_relative_performance(
                JcForecastKind::Blue,
                6.0,
                9.0,
                derived.gamma * derived.gamma,
                &mut delta,
            )
        };
        assert_eq!(status, JcStatus::Ok);
        assert_eq!(delta, 2.0 / 3.0);
    }

    #[test]
    fn beta_zero_propagates_undefined_gamma() {
        let params =
            JcModelParams { alpha: 0.1, lambda: 2.0, nu: -0.05, tau2: 0.0, ..reference_params() };
        let mut derived = JcDerivedParams { beta: 0.0, mu: 0.0, gamma: 0.0, has_gamma: false };
        assert_eq!(unsafe { jc_derive(&params, &mut derived) }, JcStatus::Ok);
        assert!(!derived.has_gamma);
        let mut value = 0.0;
        let status = unsafe {
            jc_forecast_value(JcForecastKind::BestLinear, 0.1, 6.0, 9.0, &derived, &mut value)
        };
        assert_eq!(status, JcStatus::UndefinedGamma);
        assert_eq!(jc_coincident_forecast_beta_zero(0.37), 0.37);
    }

    #[test]
    fn classify_critical_verdict() {
        let params = JcModelParams { lambda: 0.0, ..reference_params() }; // gamma = 4
        let mut derived = JcDerivedParams { beta: 0.0, mu: 0.0, gamma: 0.0, has_gamma: false };
        unsafe { jc_derive(&params, &mut derived) };
        let mut verdict = JcCriticalVerdict {
            relation: JcCriticalRelation::Tie,
            critical_time: 0.0,
            critical_volatility: 0.0,
        };
        let status = unsafe { jc_classify_critical(&derived, 6.0, 9.0, &mut verdict) };
        assert_eq!(status, JcStatus::Ok);
        assert_eq!(verdict.relation, JcCriticalRelation::TrivialBetter);
        assert_eq!(verdict.critical_time, 16.0);
    }

    #[test]
    fn simulator_handle_life_cycle() {
        let params = reference_params();
        let mut handle: *mut JcSimulator = std::ptr::null_mut();
        let status = unsafe {
            jc_simulator_new(&params, JcJumpKind::Gaussian, 6.0, 9.0, 100, 42, &mut handle)
        };
        assert_eq!(status, JcStatus::Ok);
        assert!(!handle.is_null());
        assert_eq!(unsafe { jc_simulator_len(handle) }, 100);

        let (mut p_t, mut p_s) = (0.0, 0.0);
        assert_eq!(unsafe { jc_simulator_pair(handle, 7, &mut p_t, &mut p_s) }, JcStatus::Ok);
        let (mut p_t2, mut p_s2) = (0.0, 0.0);
        assert_eq!(unsafe { jc_simulator_pair(handle, 7, &mut p_t2, &mut p_s2) }, JcStatus::Ok);
        assert_eq!((p_t, p_s), (p_t2, p_s2));
        assert_eq!(
            unsafe { jc_simulator_pair(handle, 100, &mut p_t, &mut p_s) },
            JcStatus::DomainError
        );
        unsafe { jc_simulator_free(handle) };
        unsafe { jc_simulator_free(std::ptr::null_mut()) };
    }

    #[test]
    fn simulator_rejects_empty_batch() {
        let params = reference_params();
        let mut handle: *mut JcSimulator = std::ptr::null_mut();
        let status =
            unsafe { jc_simulator_new(&params, JcJumpKind::Gaussian, 6.0, 9.0, 0, 42, &mut handle) };
        assert_eq!(status, JcStatus::EmptyBatch);
    }

    #[test]
    fn verify_all_fills_four_reports() {
        let params = reference_params();
        let mut reports = [JcVerificationReport {
            kind: JcForecastKind::Trivial,
            theoretical: 0.0,
            empirical_mse: 0.0,
            std_error: 0.0,
            z_score: 0.0,
            n: 0,
            pass: false,
        }; 4];
        let status = unsafe {
            jc_verify_all(&params, JcJumpKind::Gaussian, 6.0, 9.0, 20_000, 7, 4.0, reports.as_mut_ptr())
        };
        assert_eq!(status, JcStatus::Ok);
        assert_eq!(reports[0].kind, JcForecastKind::BestMeasurable);
        assert!(reports.iter().all(|r| r.pass));
        assert!(reports.iter().all(|r| r.n == 20_000));

        let status = unsafe {
            jc_verify_all(&params, JcJumpKind::Gaussian, 6.0, 9.0, 10, 7, 4.0, reports.as_mut_ptr())
        };
        assert_eq!(status, JcStatus::InsufficientSample);
    }

    #[test]
    fn sweep_strings_round_trip() {
        let mut csv: *mut c_char = std::ptr::null_mut();
        let status = unsafe { jc_gamma_sweep_csv(6.0, 9.0, 0.1, 5.0, 0.1, &mut csv) };
        assert_eq!(status, JcStatus::Ok);
        let text = unsafe { CStr::from_ptr(csv) }.to_str().unwrap();
        assert!(text.starts_with("gamma,best_measurable,best_linear,blue,trivial\n"));
        assert_eq!(text.lines().count(), 51);
        unsafe { jc_string_free(csv) };

        let mut svg: *mut c_char = std::ptr::null_mut();
        let status = unsafe { jc_gamma_sweep_svg(6.0, 9.0, 0.1, 5.0, 0.1, &mut svg) };
        assert_eq!(status, JcStatus::Ok);
        let text = unsafe { CStr::from_ptr(svg) }.to_str().unwrap();
        assert!(text.starts_with("<svg"));
        unsafe { jc_string_free(svg) };

        let status = unsafe { jc_gamma_sweep_csv(6.0, 9.0, 5.0, 1.0, 0.1, &mut csv) };
        assert_eq!(status, JcStatus::DomainError);
    }

    #[test]
    fn status_messages_are_static() {
        for status in [JcStatus::Ok, JcStatus::UndefinedGamma, JcStatus::EmptyBatch] {
            let message = unsafe { CStr::from_ptr(jc_status_message(status)) };
            assert!(!message.to_str().unwrap().is_empty());
        }
    }

    #[test]
    fn generated_header_covers_the_surface() {
        let header = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/include/jumpcast.h"));
        for symbol in [
            "jc_derive",
            "jc_forecast_value",
            "jc_theoretical_mse",
            "jc_relative_performance",
            "jc_classify_critical",
            "jc_simulator_new",
            "jc_simulator_pair",
            "jc_simulator_free",
            "jc_verify_all",
            "jc_gamma_sweep_csv",
            "jc_string_free",
            "JcSimulator",
            "JcStatus",
        ] {
            assert!(header.contains(symbol), "header is missing {symbol}");
        }
    }
}
