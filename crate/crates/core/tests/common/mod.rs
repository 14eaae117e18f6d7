//! Test-local statistics helpers, deliberately independent of the crate's
//! own accumulators: plain two-pass formulas over materialized samples.
#![allow(dead_code)] // each test binary uses a different subset

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Standard error of the sample mean.
pub fn std_error(xs: &[f64]) -> f64 {
    (sample_variance(xs) / xs.len() as f64).sqrt()
}

/// z-score of the sample mean against a theoretical value.
pub fn z_score(xs: &[f64], theory: f64) -> f64 {
    (mean(xs) - theory) / std_error(xs)
}

/// |difference of two sample means| measured in joint standard errors.
pub fn joint_z(a: &[f64], b: &[f64]) -> f64 {
    let se = (std_error(a).powi(2) + std_error(b).powi(2)).sqrt();
    (mean(a) - mean(b)).abs() / se
}

pub fn pearson_correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let (mx, my) = (mean(xs), mean(ys));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}
