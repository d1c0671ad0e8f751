//! Independent brute-force reference implementations used to gate the fast
//! estimators. Everything here is O(n^2) double loops on purpose and shares
//! no code with the library paths it checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Naive rank counts: r[i] = #{j : y_j <= y_i}, l[i] = #{j : y_j >= y_i}.
pub fn naive_ranks(y: &[f64]) -> (Vec<i64>, Vec<i64>) {
    let n = y.len();
    let mut r = vec![0i64; n];
    let mut l = vec![0i64; n];
    for i in 0..n {
        for j in 0..n {
            if y[j] <= y[i] {
                r[i] += 1;
            }
            if y[j] >= y[i] {
                l[i] += 1;
            }
        }
    }
    (r, l)
}

/// Naive nearest neighbor by full scan; nonzero-distance ties resolve to
/// the smallest index (the instances fed through here are continuous, so
/// ties never actually occur).
pub fn naive_nn(rows: &[Vec<f64>]) -> Vec<usize> {
    let n = rows.len();
    (0..n)
        .map(|i| {
            let mut best = usize::MAX;
            let mut best_dist = f64::INFINITY;
            for j in 0..n {
                if j == i {
                    continue;
                }
                let mut dist = 0.0;
                for k in 0..rows[i].len() {
                    let diff = rows[i][k] - rows[j][k];
                    dist += diff * diff;
                }
                if dist < best_dist {
                    best_dist = dist;
                    best = j;
                }
            }
            best
        })
        .collect()
}

/// Brute-force unconditional codec; returns (numerator, denominator) as
/// exact integers, or None when the denominator vanishes.
pub fn naive_codec_unconditional(y: &[f64], z_rows: &[Vec<f64>]) -> Option<(i64, i64)> {
    let n = y.len() as i64;
    let (r, l) = naive_ranks(y);
    let den: i64 = l.iter().map(|&li| li * (n - li)).sum();
    if den == 0 {
        return None;
    }
    let m = naive_nn(z_rows);
    let num: i64 = (0..y.len())
        .map(|i| n * r[i].min(r[m[i]]) - l[i] * l[i])
        .sum();
    Some((num, den))
}

/// Brute-force conditional codec; returns (numerator, denominator) as
/// exact integers, or None when the denominator vanishes.
pub fn naive_codec_conditional(
    y: &[f64],
    z_rows: &[Vec<f64>],
    x_rows: &[Vec<f64>],
) -> Option<(i64, i64)> {
    let (r, _) = naive_ranks(y);
    let n_map = naive_nn(x_rows);
    let den: i64 = (0..y.len())
        .map(|i| r[i] - r[i].min(r[n_map[i]]))
        .sum();
    if den == 0 {
        return None;
    }
    let xz: Vec<Vec<f64>> = x_rows
        .iter()
        .zip(z_rows.iter())
        .map(|(x, z)| {
            let mut row = x.clone();
            row.extend_from_slice(z);
            row
        })
        .collect();
    let m = naive_nn(&xz);
    let num: i64 = (0..y.len())
        .map(|i| r[i].min(r[m[i]]) - r[i].min(r[n_map[i]]))
        .sum();
    Some((num, den))
}

/// One random continuous instance: y, z (n x d_z), x (n x d_x).
pub struct Instance {
    pub y: Vec<f64>,
    pub z_rows: Vec<Vec<f64>>,
    pub x_rows: Vec<Vec<f64>>,
}

pub fn random_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=12);
    let d_z = rng.gen_range(1..=3);
    let d_x = rng.gen_range(1..=3);
    let y: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 10.0 - 5.0).collect();
    let z_rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d_z).map(|_| rng.gen::<f64>() * 4.0 - 2.0).collect())
        .collect();
    let x_rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d_x).map(|_| rng.gen::<f64>() * 4.0 - 2.0).collect())
        .collect();
    Instance { y, z_rows, x_rows }
}
