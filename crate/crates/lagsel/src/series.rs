//! Time-series container, rank transforms, and lag-matrix construction.
//!
//! Series indices are 1-based in documentation and error messages; storage
//! is 0-based.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// An ordered sequence of real observations with optional seasonal period.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    period: Option<usize>,
    label: String,
}

impl TimeSeries {
    /// Builds a series, validating length >= 2, finiteness, and
    /// `2 <= period < length` when a period is given.
    pub fn new(values: Vec<f64>, period: Option<usize>, label: impl Into<String>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "a series needs at least 2 observations, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite value at position {} (1-based)",
                i + 1
            )));
        }
        if let Some(p) = period {
            if p < 2 || p >= values.len() {
                return Err(Error::InvalidInput(format!(
                    "period {} must satisfy 2 <= period < length ({})",
                    p,
                    values.len()
                )));
            }
        }
        Ok(Self {
            values,
            period,
            label: label.into(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees length >= 2
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Same label, new values; the period is kept only if still valid.
    pub fn derive(&self, values: Vec<f64>) -> Result<Self> {
        let period = self.period.filter(|&p| p < values.len());
        Self::new(values, period, self.label.clone())
    }
}

/// How equal values are ranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TiePolicy {
    /// Ties are permuted by a seeded shuffle so ranks form a permutation of 1..=n.
    RandomBreak,
    /// Ties all receive the mean of the ranks they span (midranks).
    Average,
}

/// Ranks of a value sequence, 1-based.
#[derive(Debug, Clone)]
pub struct RankVector {
    pub ranks: Vec<f64>,
    pub tie_policy: TiePolicy,
    pub seed: u64,
}

impl RankVector {
    /// Integer ranks; only meaningful under `RandomBreak` where the ranks
    /// are a permutation of 1..=n.
    pub fn as_permutation(&self) -> Vec<usize> {
        self.ranks.iter().map(|&r| r as usize).collect()
    }
}

/// Ranks `values` ascending, resolving ties per `tie_policy`.
///
/// The rank of a value is the number of entries less than or equal to it;
/// tied blocks are either shuffled (seeded) into distinct consecutive ranks
/// or assigned their midrank.
pub fn rank_vector(values: &[f64], tie_policy: TiePolicy, seed: u64) -> Result<RankVector> {
    if values.is_empty() {
        return Err(Error::InsufficientData("cannot rank an empty sequence".into()));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "non-finite value at position {} (1-based)",
            i + 1
        )));
    }
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut ranks = vec![0.0; n];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        match tie_policy {
            TiePolicy::RandomBreak => {
                if end - start > 1 {
                    order[start..end].shuffle(&mut rng);
                }
                for (offset, &idx) in order[start..end].iter().enumerate() {
                    ranks[idx] = (start + offset + 1) as f64;
                }
            }
            TiePolicy::Average => {
                let mid = (start + 1 + end) as f64 / 2.0;
                for &idx in &order[start..end] {
                    ranks[idx] = mid;
                }
            }
        }
        start = end;
    }
    Ok(RankVector {
        ranks,
        tie_policy,
        seed,
    })
}

/// Target column plus `h` lag columns built from a series.
///
/// Row `i` of lag column `j` holds the series value at 1-based index
/// `h + i - j`; the target row `i` holds the value at `h + i`.
#[derive(Debug, Clone)]
pub struct LagEmbedding {
    target: Vec<f64>,
    lags: Vec<Vec<f64>>,
    h: usize,
    n_rows: usize,
}

impl LagEmbedding {
    pub fn target(&self) -> &[f64] {
        &self.target
    }

    /// Lag column for 1-based lag `j`.
    pub fn lag(&self, j: usize) -> &[f64] {
        &self.lags[j - 1]
    }

    pub fn lag_columns(&self) -> &[Vec<f64>] {
        &self.lags
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }
}

/// Builds the regression design of a series against its first `h` lags.
pub fn build_lag_matrix(series: &TimeSeries, h: usize) -> Result<LagEmbedding> {
    let n = series.len();
    if h == 0 {
        return Err(Error::InvalidInput("lag count h must be positive".into()));
    }
    if h >= n - 1 {
        return Err(Error::InsufficientData(format!(
            "h = {h} leaves fewer than 2 embedding rows for a series of length {n}"
        )));
    }
    let x = series.values();
    let n_rows = n - h;
    let target = x[h..].to_vec();
    let lags: Vec<Vec<f64>> = (1..=h).map(|j| x[h - j..n - j].to_vec()).collect();
    Ok(LagEmbedding {
        target,
        lags,
        h,
        n_rows,
    })
}
