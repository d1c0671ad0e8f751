//! Model-free autoregressive lag selection.
//!
//! The library estimates the autoregressive order p of a univariate series
//! by greedy forward selection over lag columns, scored with a rank-based
//! conditional dependence coefficient, and benchmarks that selector against
//! Pearson and Spearman partial-autocorrelation baselines through a seeded
//! Monte Carlo harness.
//!
//! Modules:
//! - [`series`]: time-series container, ranks, lag embeddings
//! - [`dependence`]: xi coefficient and codec estimates with nearest neighbors
//! - [`pacf`]: autocorrelation and Durbin-Levinson partial autocorrelation
//! - [`selection`]: greedy forward lag selection and order estimators
//! - [`simulate`]: seeded generators for the benchmark model suite
//! - [`preprocess`]: differencing and classical additive decomposition
//! - [`experiment`]: replication harness producing RMSE report grids
//! - [`ingest`]: CSV loading and bundled benchmark datasets
//! - [`bench`]: runtime measurement helpers
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod bench;
pub mod dependence;
pub mod error;
pub mod experiment;
pub mod ingest;
pub mod pacf;
pub mod preprocess;
pub mod selection;
pub mod series;
pub mod simulate;

pub use error::{Error, Result};

/// Derives an independent stream seed from a base seed and a salt
/// (splitmix64 over the xor).
pub(crate) fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
