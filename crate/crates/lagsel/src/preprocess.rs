//! Differencing and classical additive decomposition.

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Applies (1 - B) `d` times; the output is `d` observations shorter.
pub fn difference(series: &TimeSeries, d: usize) -> Result<TimeSeries> {
    if d == 0 {
        return Err(Error::InvalidInput("difference order d must be positive".into()));
    }
    if d >= series.len() {
        return Err(Error::InsufficientData(format!(
            "cannot difference {} times a series of length {}",
            d,
            series.len()
        )));
    }
    let mut values = series.values().to_vec();
    for _ in 0..d {
        values = values.windows(2).map(|w| w[1] - w[0]).collect();
    }
    series.derive(values)
}

/// Additive decomposition into trend, seasonal, and remainder.
#[derive(Debug, Clone)]
pub struct DecompositionResult {
    /// Centered moving-average trend; `None` at the undefined edges.
    pub trend: Vec<Option<f64>>,
    /// Periodic seasonal component, full length.
    pub seasonal: Vec<f64>,
    /// series - trend - seasonal where the trend is defined.
    pub remainder: Vec<Option<f64>>,
    pub period: usize,
    /// One period of centered seasonal indices (sum zero).
    pub seasonal_indices: Vec<f64>,
}

/// Classical decomposition: centered moving average of window `period`
/// (the 2 x m convention with half-weights at the ends for even periods),
/// phase means of the detrended values as seasonal indices, centered so
/// they sum to zero over one period.
pub fn classical_decompose(series: &TimeSeries, period: usize) -> Result<DecompositionResult> {
    let n = series.len();
    if period < 2 {
        return Err(Error::InvalidInput(format!(
            "period {period} must be at least 2"
        )));
    }
    if n < 2 * period {
        return Err(Error::InsufficientData(format!(
            "decomposition needs at least 2 * period = {} observations, got {n}",
            2 * period
        )));
    }
    let x = series.values();
    let half = period / 2;
    let mut trend: Vec<Option<f64>> = vec![None; n];
    if period % 2 == 0 {
        for t in half..n - half {
            let mut acc = 0.5 * x[t - half] + 0.5 * x[t + half];
            for k in t - half + 1..t + half {
                acc += x[k];
            }
            trend[t] = Some(acc / period as f64);
        }
    } else {
        for t in half..n - half {
            let acc: f64 = x[t - half..=t + half].iter().sum();
            trend[t] = Some(acc / period as f64);
        }
    }

    let mut sums = vec![0.0; period];
    let mut counts = vec![0usize; period];
    for t in 0..n {
        if let Some(tr) = trend[t] {
            sums[t % period] += x[t] - tr;
            counts[t % period] += 1;
        }
    }
    let mut indices: Vec<f64> = sums
        .iter()
        .zip(counts.iter())
        .map(|(s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
        .collect();
    let mean = indices.iter().sum::<f64>() / period as f64;
    for idx in indices.iter_mut() {
        *idx -= mean;
    }

    let seasonal: Vec<f64> = (0..n).map(|t| indices[t % period]).collect();
    let remainder: Vec<Option<f64>> = (0..n)
        .map(|t| trend[t].map(|tr| x[t] - tr - seasonal[t]))
        .collect();
    Ok(DecompositionResult {
        trend,
        seasonal,
        remainder,
        period,
        seasonal_indices: indices,
    })
}

/// Removes the seasonal component only; trend and length are preserved.
pub fn deseasonalize(series: &TimeSeries, period: usize) -> Result<TimeSeries> {
    let decomposition = classical_decompose(series, period)?;
    let values = series
        .values()
        .iter()
        .zip(decomposition.seasonal.iter())
        .map(|(x, s)| x - s)
        .collect();
    series.derive(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(vals: Vec<f64>) -> TimeSeries {
        TimeSeries::new(vals, None, "test").unwrap()
    }

    #[test]
    fn difference_examples() {
        let d1 = difference(&ts(vec![1.0, 3.0, 6.0, 10.0]), 1).unwrap();
        assert_eq!(d1.values(), &[2.0, 3.0, 4.0]);
        let d2 = difference(&ts(vec![1.0, 3.0, 6.0, 10.0]), 2).unwrap();
        assert_eq!(d2.values(), &[1.0, 1.0]);
        let dc = difference(&ts(vec![5.0; 6]), 1).unwrap();
        assert!(dc.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn difference_rejects_overlong_order() {
        assert!(matches!(
            difference(&ts(vec![1.0, 2.0]), 2),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn difference_is_linear() {
        let x = vec![1.0, 4.0, 2.0, 8.0, 5.0];
        let y = vec![0.5, 1.5, -2.0, 3.0, 1.0];
        let (a, b) = (2.0, -3.0);
        let combined: Vec<f64> = x.iter().zip(y.iter()).map(|(u, v)| a * u + b * v).collect();
        let dc = difference(&ts(combined), 1).unwrap();
        let dx = difference(&ts(x), 1).unwrap();
        let dy = difference(&ts(y), 1).unwrap();
        for i in 0..dc.len() {
            let expect = a * dx.values()[i] + b * dy.values()[i];
            assert!((dc.values()[i] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn decompose_pure_alternation() {
        let vals: Vec<f64> = (0..20).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let d = classical_decompose(&ts(vals), 2).unwrap();
        for t in 1..19 {
            assert!(d.trend[t].unwrap().abs() < 1e-12);
        }
        assert!((d.seasonal_indices[0] - 1.0).abs() < 1e-12);
        assert!((d.seasonal_indices[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn decompose_linear_ramp_has_no_seasonality() {
        let vals: Vec<f64> = (0..36).map(|i| i as f64).collect();
        for period in [3, 4, 12] {
            let d = classical_decompose(&ts(vals.clone()), period).unwrap();
            for idx in &d.seasonal_indices {
                assert!(idx.abs() < 1e-9, "period {period}: index {idx}");
            }
            for r in d.remainder.iter().flatten() {
                assert!(r.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn decompose_reconstruction_identity() {
        let vals: Vec<f64> = (0..60)
            .map(|i| 0.3 * i as f64 + (i % 6) as f64 + (i as f64 * 0.91).sin())
            .collect();
        let series = ts(vals);
        let d = classical_decompose(&series, 6).unwrap();
        for t in 0..series.len() {
            if let (Some(tr), Some(r)) = (d.trend[t], d.remainder[t]) {
                let rebuilt = tr + d.seasonal[t] + r;
                assert!((rebuilt - series.values()[t]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn seasonal_indices_sum_to_zero_and_repeat() {
        let vals: Vec<f64> = (0..48)
            .map(|i| (i % 4) as f64 * 2.0 + 0.1 * i as f64)
            .collect();
        let d = classical_decompose(&ts(vals), 4).unwrap();
        let total: f64 = d.seasonal_indices.iter().sum();
        assert!(total.abs() < 1e-9);
        for t in 0..48 {
            assert_eq!(d.seasonal[t], d.seasonal_indices[t % 4]);
        }
    }

    #[test]
    fn deseasonalize_zeroes_pure_pattern() {
        let vals: Vec<f64> = (0..24).map(|i| [1.0, -1.0][i % 2]).collect();
        let out = deseasonalize(&ts(vals), 2).unwrap();
        assert_eq!(out.len(), 24);
        for v in out.values() {
            assert!(v.abs() < 1e-9);
        }
    }

    #[test]
    fn deseasonalize_idempotent() {
        let vals: Vec<f64> = (0..72)
            .map(|i| 10.0 + 0.2 * i as f64 + [3.0, -1.0, -2.0, 0.0, 1.5, -1.5][i % 6])
            .collect();
        let once = deseasonalize(&ts(vals), 6).unwrap();
        let again = classical_decompose(&once, 6).unwrap();
        for idx in &again.seasonal_indices {
            assert!(idx.abs() < 1e-9, "index {idx}");
        }
    }

    #[test]
    fn deseasonalize_preserves_length() {
        let vals: Vec<f64> = (0..30).map(|i| (i % 5) as f64 + i as f64).collect();
        let out = deseasonalize(&ts(vals), 5).unwrap();
        assert_eq!(out.len(), 30);
    }

    #[test]
    fn decompose_needs_two_periods() {
        let vals: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert!(matches!(
            classical_decompose(&ts(vals), 6),
            Err(Error::InsufficientData(_))
        ));
    }
}
