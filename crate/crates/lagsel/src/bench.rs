//! Runtime measurement helpers for the scaling checks.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dependence::{codec_unconditional, xi_coefficient, Points};
use crate::mix_seed;

/// Median runtime of one operation at one input size.
#[derive(Debug, Clone, Copy)]
pub struct BenchPoint {
    pub n: usize,
    pub median: Duration,
    pub trials: usize,
}

fn uniform(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen()).collect()
}

fn median_of(mut times: Vec<Duration>) -> Duration {
    times.sort();
    times[times.len() / 2]
}

/// Times `xi_coefficient` on i.i.d. uniform pairs at each size.
pub fn bench_xi(sizes: &[usize], trials: usize, seed: u64) -> Vec<BenchPoint> {
    sizes
        .iter()
        .map(|&n| {
            let x = uniform(n, mix_seed(seed, n as u64));
            let y = uniform(n, mix_seed(seed, n as u64 + 1));
            let times: Vec<Duration> = (0..trials)
                .map(|t| {
                    let start = Instant::now();
                    let est = xi_coefficient(&x, &y, mix_seed(seed, t as u64)).unwrap();
                    std::hint::black_box(est.value);
                    start.elapsed()
                })
                .collect();
            BenchPoint {
                n,
                median: median_of(times),
                trials,
            }
        })
        .collect()
}

/// Times `codec_unconditional` on i.i.d. uniform one-dimensional data.
pub fn bench_codec(sizes: &[usize], trials: usize, seed: u64) -> Vec<BenchPoint> {
    sizes
        .iter()
        .map(|&n| {
            let y = uniform(n, mix_seed(seed, n as u64));
            let z_vals = uniform(n, mix_seed(seed, n as u64 + 1));
            let z = Points::from_columns(&[&z_vals]).unwrap();
            let times: Vec<Duration> = (0..trials)
                .map(|t| {
                    let start = Instant::now();
                    let est = codec_unconditional(&y, &z, mix_seed(seed, t as u64)).unwrap();
                    std::hint::black_box(est.value);
                    start.elapsed()
                })
                .collect();
            BenchPoint {
                n,
                median: median_of(times),
                trials,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bench_points_cover_requested_sizes() {
        let points = bench_xi(&[500, 1000], 3, 1);
        assert_eq!(points.len(), 2);
        assert_eq!(points[0].n, 500);
        assert!(points[1].median > Duration::ZERO);
    }
}
