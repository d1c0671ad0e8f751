//! Property tests for the library invariants, plus the statistical
//! convergence check on the Monte Carlo harness.

use proptest::prelude::*;

use lagsel::dependence::xi_coefficient;
use lagsel::experiment::{run_scenario, Measure, Preprocessing, Scenario};
use lagsel::preprocess::{classical_decompose, difference};
use lagsel::selection::Estimator;
use lagsel::series::{build_lag_matrix, rank_vector, TiePolicy, TimeSeries};
use lagsel::simulate::ModelKind;

fn finite_vec(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e6f64..1e6, len)
}

proptest! {
    #[test]
    fn xi_stays_inside_its_bounds(
        x in finite_vec(3..=60),
        seed in any::<u64>(),
    ) {
        let n = x.len();
        let y: Vec<f64> = (0..n).map(|i| x[(i * 7 + 3) % n]).collect();
        let e = xi_coefficient(&x, &y, seed).unwrap();
        prop_assert!(e.value <= 1.0);
        prop_assert!(e.value >= -0.5 - 3.0 / (n as f64 + 1.0));
    }

    #[test]
    fn xi_monotone_identity_on_sorted_distinct(
        mut x in prop::collection::vec(-1e3f64..1e3, 3..=40),
        seed in any::<u64>(),
    ) {
        x.sort_by(f64::total_cmp);
        x.dedup();
        prop_assume!(x.len() >= 3);
        let y: Vec<f64> = x.iter().map(|v| v * 2.0 + 1.0).collect();
        let e = xi_coefficient(&x, &y, seed).unwrap();
        let expected = 1.0 - 3.0 / (x.len() as f64 + 1.0);
        prop_assert!((e.value - expected).abs() < 1e-12);
    }

    #[test]
    fn random_break_ranks_are_permutations(
        values in prop::collection::vec(-5i32..5, 1..=50),
        seed in any::<u64>(),
    ) {
        let values: Vec<f64> = values.into_iter().map(f64::from).collect();
        let r = rank_vector(&values, TiePolicy::RandomBreak, seed).unwrap();
        let mut perm = r.as_permutation();
        perm.sort_unstable();
        let expected: Vec<usize> = (1..=values.len()).collect();
        prop_assert_eq!(perm, expected);
        for i in 0..values.len() {
            for j in 0..values.len() {
                if values[i] < values[j] {
                    prop_assert!(r.ranks[i] < r.ranks[j]);
                }
            }
        }
    }

    #[test]
    fn lag_matrix_reconstructs(
        values in finite_vec(8..=80),
        h in 1usize..=6,
    ) {
        prop_assume!(h < values.len() - 1);
        let series = TimeSeries::new(values.clone(), None, "prop").unwrap();
        let e = build_lag_matrix(&series, h).unwrap();
        prop_assert_eq!(e.n_rows(), values.len() - h);
        for i in 0..e.n_rows() {
            prop_assert_eq!(e.target()[i], values[h + i]);
            for j in 1..=h {
                prop_assert_eq!(e.lag(j)[i], values[h + i - j]);
            }
        }
    }

    #[test]
    fn difference_shortens_and_is_linear(
        x in finite_vec(4..=40),
    ) {
        let y: Vec<f64> = x.iter().rev().copied().collect();
        let sx = TimeSeries::new(x.clone(), None, "x").unwrap();
        let sy = TimeSeries::new(y.clone(), None, "y").unwrap();
        let combined: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 2.0 * a - b).collect();
        let sc = TimeSeries::new(combined, None, "c").unwrap();
        let dx = difference(&sx, 1).unwrap();
        let dy = difference(&sy, 1).unwrap();
        let dc = difference(&sc, 1).unwrap();
        prop_assert_eq!(dc.len(), x.len() - 1);
        for i in 0..dc.len() {
            let expect = 2.0 * dx.values()[i] - dy.values()[i];
            prop_assert!((dc.values()[i] - expect).abs() < 1e-6);
        }
    }

    #[test]
    fn seasonal_indices_centered_and_periodic(
        base in finite_vec(24..=24),
        period in 2usize..=6,
        reps in 3usize..=5,
    ) {
        let values: Vec<f64> = (0..period * reps)
            .map(|t| base[t % period] + 0.05 * t as f64)
            .collect();
        let series = TimeSeries::new(values, None, "prop").unwrap();
        let d = classical_decompose(&series, period).unwrap();
        let sum: f64 = d.seasonal_indices.iter().sum();
        prop_assert!(sum.abs() < 1e-6);
        for (t, s) in d.seasonal.iter().enumerate() {
            prop_assert_eq!(*s, d.seasonal_indices[t % period]);
        }
    }
}

/// The convergence claim holds for the second-largest selected lag: its
/// RMSE at the desk-scale ceiling is no worse than at the smallest size,
/// in a majority of harness repetitions.
#[test]
fn nlarma_codec_p2_rmse_improves_with_sample_size() {
    let mut wins = 0;
    for repetition in 0..3u64 {
        let mut scenario = Scenario::new(ModelKind::Nlarma22, Preprocessing::Raw, vec![100, 2000]);
        scenario.replications = 50;
        scenario.measures = vec![Measure::Codec];
        scenario.base_seed = 1 + repetition * 1000;
        let report = run_scenario(&scenario, 4).unwrap();
        let small = report
            .cell(ModelKind::Nlarma22, Preprocessing::Raw, 100, Measure::Codec, Estimator::P2)
            .unwrap()
            .rmse;
        let large = report
            .cell(ModelKind::Nlarma22, Preprocessing::Raw, 2000, Measure::Codec, Estimator::P2)
            .unwrap()
            .rmse;
        if large <= small {
            wins += 1;
        }
        println!("repetition {repetition}: p2 rmse n=100 {small:.2} vs n=2000 {large:.2}");
    }
    assert!(wins >= 2, "convergence held in only {wins}/3 repetitions");
}

/// Decomposition moves the seasonal model's codec estimates toward the
/// nonseasonal order: deseasonalized runs score better than raw ones.
#[test]
fn sari_decomposition_shifts_codec_toward_true_order() {
    let mut raw = Scenario::new(ModelKind::Sari12, Preprocessing::Raw, vec![2000]);
    raw.replications = 30;
    raw.measures = vec![Measure::Codec];
    let mut dec = Scenario::new(ModelKind::Sari12, Preprocessing::Decomposed, vec![2000]);
    dec.replications = 30;
    dec.measures = vec![Measure::Codec];
    let raw_report = run_scenario(&raw, 4).unwrap();
    let dec_report = run_scenario(&dec, 4).unwrap();
    let raw_rmse = raw_report
        .cell(ModelKind::Sari12, Preprocessing::Raw, 2000, Measure::Codec, Estimator::P1)
        .unwrap()
        .rmse;
    let dec_rmse = dec_report
        .cell(ModelKind::Sari12, Preprocessing::Decomposed, 2000, Measure::Codec, Estimator::P1)
        .unwrap()
        .rmse;
    println!("sari12 codec p1 rmse: raw {raw_rmse:.2} vs decomposed {dec_rmse:.2}");
    assert!(
        dec_rmse < raw_rmse,
        "decomposed {dec_rmse:.2} should beat raw {raw_rmse:.2}"
    );
}
