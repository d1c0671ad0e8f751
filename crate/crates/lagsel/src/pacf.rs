//! Autocorrelation and partial autocorrelation baselines.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::series::{rank_vector, TiePolicy, TimeSeries};

/// Correlation flavor for the autocorrelation step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Pearson,
    /// Pearson applied to the average-tie rank transform of the series.
    Spearman,
}

impl Method {
    pub fn token(&self) -> &'static str {
        match self {
            Method::Pearson => "pearson",
            Method::Spearman => "spearman",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pearson" => Ok(Method::Pearson),
            "spearman" => Ok(Method::Spearman),
            other => Err(Error::InvalidInput(format!(
                "unknown method {other:?}, expected pearson or spearman"
            ))),
        }
    }
}

/// Partial autocorrelations for lags 1..=h with the significance band used
/// to flag them.
#[derive(Debug, Clone)]
pub struct PacfResult {
    /// `pacf[k-1]` is the partial autocorrelation at lag k.
    pub pacf: Vec<f64>,
    pub method: Method,
    /// Series length backing the significance band.
    pub n_effective: usize,
    /// `z_{1-alpha/2} / sqrt(n_effective)` for the configured alpha.
    pub threshold: f64,
    pub alpha: f64,
}

/// Sample autocorrelation r(0..=max_lag) with overall-mean centering and
/// the lag-0 variance denominator; r(0) = 1 by convention.
pub fn autocorrelation(series: &TimeSeries, max_lag: usize, method: Method) -> Result<Vec<f64>> {
    let n = series.len();
    if max_lag >= n - 1 {
        return Err(Error::InsufficientData(format!(
            "max_lag {max_lag} must be below length - 1 = {}",
            n - 1
        )));
    }
    let data: Vec<f64> = match method {
        Method::Pearson => series.values().to_vec(),
        Method::Spearman => rank_vector(series.values(), TiePolicy::Average, 0)?.ranks,
    };
    let mean = data.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = data.iter().map(|v| v - mean).collect();
    let denom: f64 = centered.iter().map(|v| v * v).sum();
    if denom == 0.0 {
        return Err(Error::DegenerateSeries);
    }
    let mut acf = Vec::with_capacity(max_lag + 1);
    acf.push(1.0);
    for k in 1..=max_lag {
        let cov: f64 = (0..n - k).map(|t| centered[t] * centered[t + k]).sum();
        acf.push(cov / denom);
    }
    Ok(acf)
}

/// Durbin-Levinson recursion: maps autocorrelations rho(1..=h) to the
/// partial autocorrelations phi_kk, k = 1..=h. rho(0) = 1 is implicit.
pub fn pacf_durbin_levinson(acf: &[f64]) -> Result<Vec<f64>> {
    let h = acf.len();
    if h == 0 {
        return Err(Error::InsufficientData(
            "need at least one autocorrelation".into(),
        ));
    }
    let mut phi_prev = vec![0.0; h + 1];
    let mut phi_cur = vec![0.0; h + 1];
    let mut out = Vec::with_capacity(h);
    let mut var: f64 = 1.0;
    for k in 1..=h {
        if var.abs() < 1e-12 {
            return Err(Error::NumericallySingular { order: k });
        }
        let mut acc = acf[k - 1];
        for j in 1..k {
            acc -= phi_prev[j] * acf[k - j - 1];
        }
        let phi_kk = acc / var;
        phi_cur[k] = phi_kk;
        for j in 1..k {
            phi_cur[j] = phi_prev[j] - phi_kk * phi_prev[k - j];
        }
        var *= 1.0 - phi_kk * phi_kk;
        out.push(phi_kk);
        std::mem::swap(&mut phi_prev, &mut phi_cur);
    }
    Ok(out)
}

/// Two-sided normal quantile for the PACF band at level alpha.
fn band_threshold(n_effective: usize, alpha: f64) -> f64 {
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    normal.inverse_cdf(1.0 - alpha / 2.0) / (n_effective as f64).sqrt()
}

/// Full partial-autocorrelation computation for lags 1..=max_lag.
pub fn pacf(series: &TimeSeries, max_lag: usize, method: Method, alpha: f64) -> Result<PacfResult> {
    if !(0.0..1.0).contains(&alpha) || alpha <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "alpha {alpha} must lie strictly between 0 and 1"
        )));
    }
    let acf = autocorrelation(series, max_lag, method)?;
    let pacf = pacf_durbin_levinson(&acf[1..])?;
    Ok(PacfResult {
        pacf,
        method,
        n_effective: series.len(),
        threshold: band_threshold(series.len(), alpha),
        alpha,
    })
}

/// Lags whose |pacf| exceeds the alpha-level band, ascending.
pub fn significant_lags(result: &PacfResult, alpha: f64) -> Vec<usize> {
    let threshold = band_threshold(result.n_effective, alpha);
    result
        .pacf
        .iter()
        .enumerate()
        .filter(|(_, v)| v.abs() > threshold)
        .map(|(i, _)| i + 1)
        .collect()
}
