//! Seeded generators for the benchmark model suite.
//!
//! Each generator iterates its recurrence from zero initial state with
//! standard-normal innovations, discards `burn_in` values, and (for the
//! integrated kinds) cumulatively sums the retained core to undo the unit
//! difference. Seasonal operators are expanded into full sparse
//! polynomials before simulation so every coefficient is auditable.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Values beyond this magnitude are treated as divergence.
pub const OVERFLOW_GUARD: f64 = 1e12;

/// Default number of warm-up values discarded before the retained sample.
pub const DEFAULT_BURN_IN: usize = 500;

/// The closed set of benchmark processes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Weekly seasonal ARIMA: (1 - 0.3B - 0.1B^2)(1 - 0.47B^52 - 0.16B^104)(1-B) X
    ///   = (1 + 0.68B)(1 + 0.59B^52 + 0.62B^104) e
    Sarima52,
    /// Integrated core w = 0.7w1 - 0.5w2 + 0.3w3 + e + 0.4 e1
    Arima311,
    /// x = 0.7x1 - 0.5x2 + 0.3x3 + e - 0.4 e1
    Arma31,
    /// x = 2cos(x1) + 0.5sin(x2) + 0.4 e1 + 0.8/(1+exp(e2)) + e
    Nlarma22,
    /// Two regimes switched by x2 <= 2
    Setar,
    /// Integrated ARMA(1,1) core with GARCH(1,1) innovations
    ArimaGarch,
    /// x = 3sin(x1) + 2sin(x2/3) + 0.5sin(x3/2) - 3/(1+exp(x4)) + e
    Nlar4,
    /// Linear AR with eight lags
    Ar8,
    /// Integrated seasonal AR: (1 + 0.47B^12 + 0.16B^24 - 0.74B^36)
    ///   (1 + 0.3B + 0.1B^2 + 0.6B^3 - 0.2B^4 - 0.4B^5) applied to the core
    Sari12,
    /// Integrated core w = 0.7w1 - 0.5w2 + 0.3w3 - 0.6w4 - 0.25w5 - 0.4w6 + e
    /// (explosive as written; diverges beyond ~300 steps)
    Ari610,
}

impl ModelKind {
    pub const ALL: [ModelKind; 10] = [
        ModelKind::Sarima52,
        ModelKind::Arima311,
        ModelKind::Arma31,
        ModelKind::Nlarma22,
        ModelKind::Setar,
        ModelKind::ArimaGarch,
        ModelKind::Nlar4,
        ModelKind::Ar8,
        ModelKind::Sari12,
        ModelKind::Ari610,
    ];

    pub fn token(&self) -> &'static str {
        match self {
            ModelKind::Sarima52 => "sarima52",
            ModelKind::Arima311 => "arima311",
            ModelKind::Arma31 => "arma31",
            ModelKind::Nlarma22 => "nlarma22",
            ModelKind::Setar => "setar",
            ModelKind::ArimaGarch => "arima-garch",
            ModelKind::Nlar4 => "nlar4",
            ModelKind::Ar8 => "ar8",
            ModelKind::Sari12 => "sari12",
            ModelKind::Ari610 => "ari610",
        }
    }

    /// Nonseasonal autoregressive order the harness scores against.
    pub fn true_p(&self) -> usize {
        match self {
            ModelKind::Sarima52 => 2,
            ModelKind::Arima311 => 3,
            ModelKind::Arma31 => 3,
            ModelKind::Nlarma22 => 2,
            ModelKind::Setar => 2,
            ModelKind::ArimaGarch => 1,
            ModelKind::Nlar4 => 4,
            ModelKind::Ar8 => 8,
            ModelKind::Sari12 => 5,
            ModelKind::Ari610 => 6,
        }
    }

    pub fn period(&self) -> Option<usize> {
        match self {
            ModelKind::Sarima52 => Some(52),
            ModelKind::Sari12 => Some(12),
            _ => None,
        }
    }

    fn integrated(&self) -> bool {
        matches!(
            self,
            ModelKind::Sarima52
                | ModelKind::Arima311
                | ModelKind::ArimaGarch
                | ModelKind::Sari12
                | ModelKind::Ari610
        )
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .iter()
            .find(|k| k.token() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<&str> = ModelKind::ALL.iter().map(|k| k.token()).collect();
                Error::InvalidInput(format!(
                    "unknown model {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// A model kind plus the only tunable coefficient (the optional GARCH
/// variance intercept, zero by default as the recurrence is written).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub garch_omega: f64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        Self {
            kind,
            garch_omega: 0.0,
        }
    }

    pub fn with_garch_omega(mut self, omega: f64) -> Self {
        self.garch_omega = omega;
        self
    }

    pub fn true_p(&self) -> usize {
        self.kind.true_p()
    }

    pub fn period(&self) -> Option<usize> {
        self.kind.period()
    }
}

/// Nonseasonal AR order scored by the harness.
pub fn true_order(spec: &ModelSpec) -> usize {
    spec.true_p()
}

/// One simulated realization.
#[derive(Debug, Clone)]
pub struct SimulationRun {
    pub series: TimeSeries,
    pub seed: u64,
    pub burn_in: usize,
}

/// Simulates `n` retained observations of the given process.
pub fn simulate(spec: &ModelSpec, n: usize, seed: u64, burn_in: usize) -> Result<SimulationRun> {
    if n < 20 {
        return Err(Error::InsufficientData(format!(
            "simulation needs n >= 20, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut innovations = move || StandardNormal.sample(&mut rng);
    let values = generate(spec, n, burn_in, &mut innovations)?;
    let period = spec.period().filter(|&p| p < n);
    let series = TimeSeries::new(values, period, spec.kind.token())?;
    Ok(SimulationRun {
        series,
        seed,
        burn_in,
    })
}

/// Core generator with an injectable innovation source (used by tests to
/// force deterministic innovations).
pub(crate) fn generate(
    spec: &ModelSpec,
    n: usize,
    burn_in: usize,
    innov: &mut dyn FnMut() -> f64,
) -> Result<Vec<f64>> {
    let total = burn_in + n;
    let core = match spec.kind {
        ModelKind::Sarima52 => {
            let ar = expand_ar(&poly_mul(
                &[(0, 1.0), (1, -0.3), (2, -0.1)],
                &[(0, 1.0), (52, -0.47), (104, -0.16)],
            ));
            let ma = expand_ma(&poly_mul(
                &[(0, 1.0), (1, 0.68)],
                &[(0, 1.0), (52, 0.59), (104, 0.62)],
            ));
            arma_core(&ar, &ma, total, innov)?
        }
        ModelKind::Arima311 => arma_core(
            &[(1, 0.7), (2, -0.5), (3, 0.3)],
            &[(1, 0.4)],
            total,
            innov,
        )?,
        ModelKind::Arma31 => arma_core(
            &[(1, 0.7), (2, -0.5), (3, 0.3)],
            &[(1, -0.4)],
            total,
            innov,
        )?,
        ModelKind::Nlarma22 => nlarma_core(total, innov)?,
        ModelKind::Setar => setar_core(total, innov)?,
        ModelKind::ArimaGarch => garch_core(spec.garch_omega, total, innov)?.0,
        ModelKind::Nlar4 => nlar_core(total, innov)?,
        ModelKind::Ar8 => arma_core(
            &[
                (1, 0.5),
                (2, -0.2),
                (3, 0.1),
                (4, 0.2),
                (5, 0.1),
                (6, -0.75),
                (7, 0.28),
                (8, -0.25),
            ],
            &[],
            total,
            innov,
        )?,
        ModelKind::Sari12 => {
            let ar = expand_ar(&poly_mul(
                &[(0, 1.0), (12, 0.47), (24, 0.16), (36, -0.74)],
                &[(0, 1.0), (1, 0.3), (2, 0.1), (3, 0.6), (4, -0.2), (5, -0.4)],
            ));
            arma_core(&ar, &[], total, innov)?
        }
        ModelKind::Ari610 => arma_core(
            &[
                (1, 0.7),
                (2, -0.5),
                (3, 0.3),
                (4, -0.6),
                (5, -0.25),
                (6, -0.4),
            ],
            &[],
            total,
            innov,
        )?,
    };

    let retained = &core[burn_in..];
    if spec.kind.integrated() {
        let mut level = 0.0;
        let mut out = Vec::with_capacity(n);
        for (i, w) in retained.iter().enumerate() {
            level += w;
            if level.abs() > OVERFLOW_GUARD {
                return Err(Error::Diverged { step: burn_in + i + 1 });
            }
            out.push(level);
        }
        Ok(out)
    } else {
        Ok(retained.to_vec())
    }
}

/// Multiplies sparse backshift polynomials given as (lag, coefficient) terms.
fn poly_mul(a: &[(usize, f64)], b: &[(usize, f64)]) -> Vec<(usize, f64)> {
    let mut terms: Vec<(usize, f64)> = Vec::with_capacity(a.len() * b.len());
    for &(la, ca) in a {
        for &(lb, cb) in b {
            terms.push((la + lb, ca * cb));
        }
    }
    terms.sort_by_key(|t| t.0);
    let mut merged: Vec<(usize, f64)> = Vec::with_capacity(terms.len());
    for (lag, coeff) in terms {
        match merged.last_mut() {
            Some((l, c)) if *l == lag => *c += coeff,
            _ => merged.push((lag, coeff)),
        }
    }
    merged
}

/// AR polynomial 1 - sum phi_j B^j => recurrence coefficients phi_j.
fn expand_ar(poly: &[(usize, f64)]) -> Vec<(usize, f64)> {
    poly.iter()
        .filter(|(lag, _)| *lag > 0)
        .map(|&(lag, c)| (lag, -c))
        .collect()
}

/// MA polynomial 1 + sum theta_k B^k => recurrence coefficients theta_k.
fn expand_ma(poly: &[(usize, f64)]) -> Vec<(usize, f64)> {
    poly.iter()
        .filter(|(lag, _)| *lag > 0)
        .map(|&(lag, c)| (lag, c))
        .collect()
}

/// w_t = sum ar_j w_{t-j} + e_t + sum ma_k e_{t-k}, zero initial state.
fn arma_core(
    ar: &[(usize, f64)],
    ma: &[(usize, f64)],
    total: usize,
    innov: &mut dyn FnMut() -> f64,
) -> Result<Vec<f64>> {
    let mut w = Vec::with_capacity(total);
    let mut eps = Vec::with_capacity(total);
    for t in 0..total {
        let e = innov();
        let mut value = e;
        for &(lag, coeff) in ar {
            if t >= lag {
                value += coeff * w[t - lag];
            }
        }
        for &(lag, coeff) in ma {
            if t >= lag {
                value += coeff * eps[t - lag];
            }
        }
        if value.abs() > OVERFLOW_GUARD {
            return Err(Error::Diverged { step: t + 1 });
        }
        w.push(value);
        eps.push(e);
    }
    Ok(w)
}

fn nlarma_core(total: usize, innov: &mut dyn FnMut() -> f64) -> Result<Vec<f64>> {
    let mut x: Vec<f64> = Vec::with_capacity(total);
    let mut eps: Vec<f64> = Vec::with_capacity(total);
    for t in 0..total {
        let e = innov();
        let x1 = if t >= 1 { x[t - 1] } else { 0.0 };
        let x2 = if t >= 2 { x[t - 2] } else { 0.0 };
        let e1 = if t >= 1 { eps[t - 1] } else { 0.0 };
        let e2 = if t >= 2 { eps[t - 2] } else { 0.0 };
        let value =
            2.0 * x1.cos() + 0.5 * x2.sin() + 0.4 * e1 + 0.8 / (1.0 + e2.exp()) + e;
        if value.abs() > OVERFLOW_GUARD {
            return Err(Error::Diverged { step: t + 1 });
        }
        x.push(value);
        eps.push(e);
    }
    Ok(x)
}

/// Threshold at 2 on the second lag selects the regime.
fn setar_core(total: usize, innov: &mut dyn FnMut() -> f64) -> Result<Vec<f64>> {
    let mut x: Vec<f64> = Vec::with_capacity(total);
    for t in 0..total {
        let e = innov();
        let x1 = if t >= 1 { x[t - 1] } else { 0.0 };
        let x2 = if t >= 2 { x[t - 2] } else { 0.0 };
        let value = if x2 <= 2.0 {
            2.9 - 0.4 * x1 - 0.1 * x2 + e
        } else {
            -1.5 + 0.2 * x1 + 0.3 * x2 + e
        };
        if value.abs() > OVERFLOW_GUARD {
            return Err(Error::Diverged { step: t + 1 });
        }
        x.push(value);
    }
    Ok(x)
}

fn nlar_core(total: usize, innov: &mut dyn FnMut() -> f64) -> Result<Vec<f64>> {
    let mut x: Vec<f64> = Vec::with_capacity(total);
    for t in 0..total {
        let at = |lag: usize| if t >= lag { x[t - lag] } else { 0.0 };
        let value = 3.0 * at(1).sin() + 2.0 * (at(2) / 3.0).sin() + 0.5 * (at(3) / 2.0).sin()
            - 3.0 / (1.0 + at(4).exp())
            + innov();
        if value.abs() > OVERFLOW_GUARD {
            return Err(Error::Diverged { step: t + 1 });
        }
        x.push(value);
    }
    Ok(x)
}

/// ARMA(1,1) core over GARCH(1,1) innovations:
/// sigma2_t = omega + 0.05 e_{t-1}^2 + 0.9 sigma2_{t-1}, sigma2_0 = 1.
/// Returns the core and the variance path.
pub(crate) fn garch_core(
    omega: f64,
    total: usize,
    innov: &mut dyn FnMut() -> f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut w: Vec<f64> = Vec::with_capacity(total);
    let mut eps: Vec<f64> = Vec::with_capacity(total);
    let mut sigma2_path = Vec::with_capacity(total);
    let mut sigma2: f64 = 1.0;
    for t in 0..total {
        if t > 0 {
            sigma2 = omega + 0.05 * eps[t - 1] * eps[t - 1] + 0.9 * sigma2;
        }
        sigma2_path.push(sigma2);
        let e = sigma2.sqrt() * innov();
        let w1 = if t >= 1 { w[t - 1] } else { 0.0 };
        let e1 = if t >= 1 { eps[t - 1] } else { 0.0 };
        let value = 0.75 * w1 + e + 0.5 * e1;
        if value.abs() > OVERFLOW_GUARD {
            return Err(Error::Diverged { step: t + 1 });
        }
        w.push(value);
        eps.push(e);
    }
    Ok((w, sigma2_path))
}

/// Writes a simulated series as CSV: header `value`, one value per line.
pub fn series_to_csv(series: &TimeSeries) -> String {
    let mut out = String::from("value\n");
    for v in series.values() {
        out.push_str(&format!("{v}\n"));
    }
    out
}
