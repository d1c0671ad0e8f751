//! Greedy forward lag selection and autoregressive order estimators.

use rayon::prelude::*;

use crate::dependence::{
    codec_conditional_prepared, codec_unconditional_ranked, concat_points, nearest_neighbors,
    response_ranks, Points,
};
use crate::error::{Error, Result};
use crate::mix_seed;
use crate::pacf::{self, Method};
use crate::series::{build_lag_matrix, LagEmbedding, TimeSeries};

/// Rule-of-thumb maximum lag: `floor(12 * (n / 100)^(1/4))`, clamped to n - 2.
pub fn schwert_max_lag(n: usize) -> Result<usize> {
    if n < 4 {
        return Err(Error::InsufficientData(format!(
            "Schwert's rule needs n >= 4, got {n}"
        )));
    }
    let h = (12.0 * (n as f64 / 100.0).powf(0.25)).floor() as usize;
    Ok(h.min(n - 2))
}

/// One entry of a full greedy ranking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedLag {
    pub lag: usize,
    pub estimate: f64,
}

/// Outcome of greedy forward selection over a lag embedding.
#[derive(Debug, Clone)]
pub struct FociResult {
    /// Lags selected before the stopping rule fired, in selection order.
    pub ordered_lags: Vec<usize>,
    /// The dependence estimate that selected each lag; positive by construction.
    pub step_estimates: Vec<f64>,
    /// Number of lags selected before the stop.
    pub stop_index: usize,
    /// Number of candidate lags considered.
    pub h_max: usize,
    /// Greedy ordering of all candidates, continued past the stop without
    /// re-checking sign; `None` unless requested.
    pub full_ranking: Option<Vec<RankedLag>>,
}

/// Greedy selection: step 1 picks the lag with the highest unconditional
/// codec estimate against the target; later steps pick the highest estimate
/// conditional on everything already selected. Selection stops at the first
/// step whose best estimate is <= 0 (or when the response becomes fully
/// determined by the selected lags).
pub fn foci_select(embedding: &LagEmbedding, seed: u64) -> Result<FociResult> {
    foci_select_with(embedding, seed, false)
}

/// Like [`foci_select`] but also records the complete greedy ordering.
pub fn foci_select_full(embedding: &LagEmbedding, seed: u64) -> Result<FociResult> {
    foci_select_with(embedding, seed, true)
}

/// Near-equal estimates (within 1e-12) resolve toward the smaller lag.
const ARGMAX_TIE_EPS: f64 = 1e-12;

fn foci_select_with(embedding: &LagEmbedding, seed: u64, full: bool) -> Result<FociResult> {
    if embedding.n_rows() < 3 {
        return Err(Error::InsufficientData(format!(
            "greedy selection needs at least 3 embedding rows, got {}",
            embedding.n_rows()
        )));
    }
    let h = embedding.h();
    let ranks = response_ranks(embedding.target());
    let mut remaining: Vec<usize> = (1..=h).collect();
    let mut selected: Vec<usize> = Vec::new();
    let mut estimates: Vec<f64> = Vec::new();
    let mut stop_index: Option<usize> = None;

    while !remaining.is_empty() {
        let step = selected.len() + 1;
        let scored: Vec<(usize, Result<f64>)> = if selected.is_empty() {
            remaining
                .par_iter()
                .map(|&lag| {
                    let score = Points::from_columns(&[embedding.lag(lag)]).and_then(|z| {
                        codec_unconditional_ranked(&ranks, &z, step_seed(seed, step, lag))
                    });
                    (lag, score.map(|est| est.value))
                })
                .collect()
        } else {
            let cols: Vec<&[f64]> = selected.iter().map(|&lag| embedding.lag(lag)).collect();
            let x_cond = Points::from_columns(&cols)?;
            let n_map = nearest_neighbors(&x_cond, step_seed(seed, step, 0))?;
            remaining
                .par_iter()
                .map(|&lag| {
                    let score = Points::from_columns(&[embedding.lag(lag)]).and_then(|z| {
                        let xz = concat_points(&x_cond, &z);
                        codec_conditional_prepared(&ranks, &n_map, &xz, step_seed(seed, step, lag))
                    });
                    (lag, score.map(|est| est.value))
                })
                .collect()
        };

        // a fully determined response ends the selection cleanly
        let mut best: Option<(usize, f64)> = None;
        let mut degenerate = false;
        for (lag, res) in scored {
            match res {
                Ok(value) => {
                    let replace = match best {
                        None => true,
                        Some((_, best_val)) => value > best_val + ARGMAX_TIE_EPS,
                    };
                    if replace {
                        best = Some((lag, value));
                    }
                }
                Err(Error::DegenerateConditioning) => degenerate = true,
                Err(other) => return Err(other),
            }
        }
        if degenerate && best.is_none() {
            stop_index.get_or_insert(selected.len());
            break;
        }
        let (lag, value) = best.expect("non-empty candidate set");
        if value <= 0.0 {
            stop_index.get_or_insert(selected.len());
            if !full {
                break;
            }
        }
        selected.push(lag);
        estimates.push(value);
        remaining.retain(|&l| l != lag);
    }
    let stop_index = stop_index.unwrap_or(selected.len());

    let full_ranking = full.then(|| {
        selected
            .iter()
            .zip(estimates.iter())
            .map(|(&lag, &estimate)| RankedLag { lag, estimate })
            .collect()
    });
    selected.truncate(stop_index);
    estimates.truncate(stop_index);
    Ok(FociResult {
        ordered_lags: selected,
        step_estimates: estimates,
        stop_index,
        h_max: h,
        full_ranking,
    })
}

fn step_seed(seed: u64, step: usize, lag: usize) -> u64 {
    mix_seed(seed, ((step as u64) << 32) | lag as u64)
}

/// The three largest selected lags, used as estimators of the
/// autoregressive order p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OrderEstimates {
    pub p1: Option<usize>,
    pub p2: Option<usize>,
    pub p3: Option<usize>,
}

impl OrderEstimates {
    fn from_lags(lags: &[usize]) -> Self {
        let mut sorted = lags.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            p1: sorted.first().copied(),
            p2: sorted.get(1).copied(),
            p3: sorted.get(2).copied(),
        }
    }

    pub fn get(&self, which: Estimator) -> Option<usize> {
        match which {
            Estimator::P1 => self.p1,
            Estimator::P2 => self.p2,
            Estimator::P3 => self.p3,
        }
    }
}

/// Which of the three order estimators to read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Estimator {
    P1,
    P2,
    P3,
}

impl Estimator {
    pub const ALL: [Estimator; 3] = [Estimator::P1, Estimator::P2, Estimator::P3];

    pub fn token(&self) -> &'static str {
        match self {
            Estimator::P1 => "p1",
            Estimator::P2 => "p2",
            Estimator::P3 => "p3",
        }
    }
}

/// Largest, second-largest, and third-largest selected lags.
pub fn estimate_order(result: &FociResult) -> OrderEstimates {
    OrderEstimates::from_lags(&result.ordered_lags[..result.stop_index])
}

/// A codec-driven selection run: the greedy trace plus its order estimates.
#[derive(Debug, Clone)]
pub struct CodecSelection {
    pub result: FociResult,
    pub orders: OrderEstimates,
}

/// End-to-end codec selector: Schwert's rule fixes the candidate count,
/// the lag matrix is built, and greedy selection runs on it.
pub fn select_lags_codec(series: &TimeSeries, seed: u64, full_ranking: bool) -> Result<CodecSelection> {
    let h = schwert_max_lag(series.len())?;
    let embedding = build_lag_matrix(series, h)?;
    let result = foci_select_with(&embedding, seed, full_ranking)?;
    let orders = estimate_order(&result);
    Ok(CodecSelection { result, orders })
}

/// Baseline selector: three largest significant partial autocorrelations
/// up to the Schwert maximum lag.
pub fn select_lags_pacf(series: &TimeSeries, method: Method, alpha: f64) -> Result<OrderEstimates> {
    if series.len() < 10 {
        return Err(Error::InsufficientData(format!(
            "baseline selection needs at least 10 observations, got {}",
            series.len()
        )));
    }
    let h = schwert_max_lag(series.len())?;
    let result = pacf::pacf(series, h, method, alpha)?;
    let significant = pacf::significant_lags(&result, alpha);
    Ok(OrderEstimates::from_lags(&significant))
}
