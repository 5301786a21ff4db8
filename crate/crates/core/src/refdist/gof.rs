use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::cdf::ReferenceCdf;
use super::pdf::ReferencePdf;
use crate::error::{QcaError, Result};

/// Smallest sample accepted by the KS tests.
pub const MIN_SAMPLES: usize = 50;

/// Outcome of a Kolmogorov-Smirnov test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofResult {
    /// What the sample was compared against.
    pub reference: String,
    pub statistic: f64,
    pub sample_size: usize,
    pub alpha: f64,
    pub critical_value: f64,
    /// Asymptotic p-value of the statistic.
    pub p_value: f64,
    /// `statistic > critical_value`.
    pub reject: bool,
}

/// `P(K > λ)` for the Kolmogorov distribution.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.0 {
        // Theta-function form, rapidly convergent for small λ.
        let mut sum = 0.0;
        for k in 1..=20 {
            let j = (2 * k - 1) as f64;
            sum += (-(j * j) * PI * PI / (8.0 * lambda * lambda)).exp();
        }
        1.0 - (2.0 * PI).sqrt() / lambda * sum
    } else {
        let mut sum = 0.0;
        for k in 1..=100 {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            sum += if k % 2 == 1 { term } else { -term };
            if term < 1e-18 {
                break;
            }
        }
        (2.0 * sum).clamp(0.0, 1.0)
    }
}

/// `λ_α` with `P(K > λ_α) = α` (1.6276 for α = 0.01, 1.3581 for α = 0.05).
pub fn kolmogorov_critical_value(alpha: f64) -> f64 {
    let (mut lo, mut hi) = (0.2f64, 5.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if kolmogorov_survival(mid) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha == 0.01 || alpha == 0.05 {
        Ok(())
    } else {
        Err(QcaError::invalid(format!(
            "significance level must be 0.01 or 0.05, got {alpha}"
        )))
    }
}

fn sorted_finite(samples: &[f64]) -> Result<Vec<f64>> {
    if samples.iter().any(|x| x.is_nan()) {
        return Err(QcaError::invalid("sample contains NaN"));
    }
    let mut v = samples.to_vec();
    v.sort_unstable_by(|a, b| a.total_cmp(b));
    Ok(v)
}

/// `sup_x |F_n(x) − F(x)|` of an already sorted sample.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d
}

/// One-sample KS test of `samples` against `reference`.
pub fn ks_test(samples: &[f64], reference: &ReferencePdf, alpha: f64) -> Result<GofResult> {
    ks_test_table(samples, &ReferenceCdf::new(*reference)?, alpha)
}

/// [`ks_test`] against a prebuilt CDF table.
pub fn ks_test_table(samples: &[f64], table: &ReferenceCdf, alpha: f64) -> Result<GofResult> {
    check_alpha(alpha)?;
    if samples.len() < MIN_SAMPLES {
        return Err(QcaError::invalid(format!(
            "KS test needs at least {MIN_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    let sorted = sorted_finite(samples)?;
    let d = ks_statistic(&sorted, |x| table.cdf(x));
    let root_n = (sorted.len() as f64).sqrt();
    let critical = kolmogorov_critical_value(alpha) / root_n;
    Ok(GofResult {
        reference: table.pdf().to_string(),
        statistic: d,
        sample_size: sorted.len(),
        alpha,
        critical_value: critical,
        p_value: kolmogorov_survival(root_n * d),
        reject: d > critical,
    })
}

/// Two-sample KS test; `reference` labels the second sample in the result.
pub fn two_sample_ks(a: &[f64], b: &[f64], alpha: f64, reference: &str) -> Result<GofResult> {
    check_alpha(alpha)?;
    if a.len() < MIN_SAMPLES || b.len() < MIN_SAMPLES {
        return Err(QcaError::invalid(format!(
            "two-sample KS test needs at least {MIN_SAMPLES} samples per side, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let (a, b) = (sorted_finite(a)?, sorted_finite(b)?);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let scale = ((na + nb) / (na * nb)).sqrt();
    let critical = kolmogorov_critical_value(alpha) * scale;
    Ok(GofResult {
        reference: reference.to_string(),
        statistic: d,
        sample_size: a.len(),
        alpha,
        critical_value: critical,
        p_value: kolmogorov_survival(d / scale),
        reject: d > critical,
    })
}
