#ifndef JUMPCAST_H
#define JUMPCAST_H

/* Generated by cbindgen from the jumpcast-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of a jumpcast call.
 */
typedef enum JcStatus {
  JC_STATUS_OK = 0,
  JC_STATUS_NULL_POINTER = 1,
  JC_STATUS_INVALID_PARAMETER = 2,
  JC_STATUS_DOMAIN_ERROR = 3,
  /**
   * beta = 0: the relative volatility is undefined and all forecasts
   * coincide at the last observed return.
   */
  JC_STATUS_UNDEFINED_GAMMA = 4,
  JC_STATUS_EMPTY_BATCH = 5,
  JC_STATUS_INSUFFICIENT_SAMPLE = 6,
  JC_STATUS_EMPTY_TABLE = 7,
  JC_STATUS_PARSE_ERROR = 8,
  JC_STATUS_IO_ERROR = 9,
} JcStatus;

/**
 * Outcome of the critical-relation check `T < gamma^2`.
 */
typedef enum JcCriticalRelation {
  JC_CRITICAL_RELATION_BLUE_BETTER = 0,
  JC_CRITICAL_RELATION_TIE = 1,
  JC_CRITICAL_RELATION_TRIVIAL_BETTER = 2,
} JcCriticalRelation;

/**
 * Forecast selector.
 */
typedef enum JcForecastKind {
  JC_FORECAST_KIND_BEST_MEASURABLE = 0,
  JC_FORECAST_KIND_BEST_LINEAR = 1,
  JC_FORECAST_KIND_BLUE = 2,
  JC_FORECAST_KIND_TRIVIAL = 3,
} JcForecastKind;

/**
 * Jump-size law selector.
 */
typedef enum JcJumpKind {
  JC_JUMP_KIND_GAUSSIAN = 0,
  JC_JUMP_KIND_CONSTANT = 1,
  JC_JUMP_KIND_TWO_POINT = 2,
} JcJumpKind;

/**
 * Opaque deterministic batch of (p_T, p_S) pairs.
 */
typedef struct JcSimulator JcSimulator;

/**
 * Raw model inputs of the jump-diffusion return process.
 */
typedef struct JcModelParams {
  double alpha;
  double sigma;
  double lambda;
  double nu;
  double tau2;
  double p0;
} JcModelParams;

/**
 * Adjusted trend, total volatility, and (optional) relative volatility.
 * `gamma` is meaningful only when `has_gamma` is true.
 */
typedef struct JcDerivedParams {
  double beta;
  double mu;
  double gamma;
  bool has_gamma;
} JcDerivedParams;

typedef struct JcCriticalVerdict {
  enum JcCriticalRelation relation;
  /**
   * Critical time gamma^2.
   */
  double critical_time;
  /**
   * Critical relative volatility sqrt(T).
   */
  double critical_volatility;
} JcCriticalVerdict;

/**
 * One closed-form-vs-Monte-Carlo comparison row.
 */
typedef struct JcVerificationReport {
  enum JcForecastKind kind;
  double theoretical;
  double empirical_mse;
  double std_error;
  double z_score;
  uint64_t n;
  bool pass;
} JcVerificationReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null; do not free.
 */
const char *jc_status_message(enum JcStatus status);

/**
 * Compute derived parameters (beta, mu, gamma) from raw model inputs.
 *
 * # Safety
 * `params` and `out` must be valid, properly aligned pointers.
 */
enum JcStatus jc_derive(const struct JcModelParams *params, struct JcDerivedParams *out);

/**
 * Expected return at time `t`: beta * t.
 *
 * # Safety
 * `derived` and `out` must be valid pointers.
 */
enum JcStatus jc_mean_return(const struct JcDerivedParams *derived, double t, double *out);

/**
 * Second moment E(p_s p_t) = beta^2 s t + mu^2 min(s, t).
 *
 * # Safety
 * `derived` and `out` must be valid pointers.
 */
enum JcStatus jc_second_moment(const struct JcDerivedParams *derived,
                               double s,
                               double t,
                               double *out);

/**
 * Classify the horizon against the critical relation `T < gamma^2`.
 *
 * # Safety
 * `derived` and `out` must be valid pointers.
 */
enum JcStatus jc_classify_critical(const struct JcDerivedParams *derived,
                                   double t_obs,
                                   double s_target,
                                   struct JcCriticalVerdict *out);

/**
 * Value of a forecast given the observed return p_T.
 *
 * # Safety
 * `derived` and `out` must be valid pointers.
 */
enum JcStatus jc_forecast_value(enum JcForecastKind kind,
                                double p_t_obs,
                                double t_obs,
                                double s_target,
                                const struct JcDerivedParams *derived,
                                double *out);

/**
 * The common forecast when beta = 0: every predictor returns p_T.
 */
double jc_coincident_forecast_beta_zero(double p_t_obs);

/**
 * Closed-form mean-square error of a forecast.
 *
 * # Safety
 * `derived` and `out` must be valid pointers.
 */
enum JcStatus jc_theoretical_mse(enum JcForecastKind kind,
                                 double t_obs,
                                 double s_target,
                                 const struct JcDerivedParams *derived,
                                 double *out);

/**
 * Relative performance delta in [0, 1]; consumes gamma^2 directly.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum JcStatus jc_relative_performance(enum JcForecastKind kind,
                                      double t_obs,
                                      double s_target,
                                      double gamma2,
                                      double *out);

/**
 * Create a deterministic batch simulator for `n` terminal pairs. On
 * success the handle must be released with [`jc_simulator_free`].
 *
 * # Safety
 * `params` and `out` must be valid pointers.
 */
enum JcStatus jc_simulator_new(const struct JcModelParams *params,
                               enum JcJumpKind jumps,
                               double t_obs,
                               double s_target,
                               uint64_t n,
                               uint64_t master_seed,
                               struct JcSimulator **out);

/**
 * Number of pairs in the batch.
 *
 * # Safety
 * `simulator` must be a live handle from [`jc_simulator_new`].
 */
uint64_t jc_simulator_len(const struct JcSimulator *simulator);

/**
 * The pair at batch index `index` (reproducible random access).
 *
 * # Safety
 * `simulator` must be a live handle; `p_t_out` and `p_s_out` must be
 * valid pointers.
 */
enum JcStatus jc_simulator_pair(const struct JcSimulator *simulator,
                                uint64_t index,
                                double *p_t_out,
                                double *p_s_out);

/**
 * Release a simulator handle. Passing null is a no-op.
 *
 * # Safety
 * `simulator` must be null or a pointer returned by [`jc_simulator_new`]
 * that has not been freed yet.
 */
void jc_simulator_free(struct JcSimulator *simulator);

/**
 * Monte Carlo verification of all four closed-form mean-square errors.
 * `reports_out` must point to an array of at least four elements; it is
 * filled in the order best measurable, best linear, blue, trivial.
 *
 * # Safety
 * `params` must be valid; `reports_out` must point to writable memory for
 * four `JcVerificationReport` values.
 */
enum JcStatus jc_verify_all(const struct JcModelParams *params,
                            enum JcJumpKind jumps,
                            double t_obs,
                            double s_target,
                            uint64_t n,
                            uint64_t master_seed,
                            double z_threshold,
                            struct JcVerificationReport *reports_out);

/**
 * Relative-performance sweep encoded as CSV. The returned string must be
 * released with [`jc_string_free`].
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum JcStatus jc_gamma_sweep_csv(double t_obs,
                                 double s_target,
                                 double gamma_min,
                                 double gamma_max,
                                 double step,
                                 char **out);

/**
 * Relative-performance sweep rendered as a self-contained SVG chart. The
 * returned string must be released with [`jc_string_free`].
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum JcStatus jc_gamma_sweep_svg(double t_obs,
                                 double s_target,
                                 double gamma_min,
                                 double gamma_max,
                                 double step,
                                 char **out);

/**
 * Release a string returned by a `jc_gamma_sweep_*` call. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library that has not
 * been freed yet.
 */
void jc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JUMPCAST_H */
