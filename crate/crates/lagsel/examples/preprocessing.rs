//! Differencing and classical additive decomposition on a seasonal
//! integrated process.
//!
//! Run with: cargo run --release --example preprocessing

use lagsel::preprocess::{classical_decompose, deseasonalize, difference};
use lagsel::selection::select_lags_codec;
use lagsel::simulate::{simulate, ModelKind, ModelSpec, DEFAULT_BURN_IN};

fn main() {
    let spec = ModelSpec::new(ModelKind::Sari12);
    let run = simulate(&spec, 2000, 5, DEFAULT_BURN_IN).unwrap();
    let series = run.series;
    let period = series.period().unwrap();
    println!(
        "simulated {} ({} observations, seasonal period {period}, true p = {})\n",
        series.label(),
        series.len(),
        spec.true_p()
    );

    let d = classical_decompose(&series, period).unwrap();
    println!("seasonal indices over one period (they sum to zero):");
    for (phase, idx) in d.seasonal_indices.iter().enumerate() {
        println!("  phase {phase:>2}: {idx:>8.3}");
    }

    let diffed = difference(&series, 1).unwrap();
    println!("\ndifferencing: length {} -> {}", series.len(), diffed.len());

    let deseasoned = deseasonalize(&series, period).unwrap();
    println!("deseasonalizing: length preserved at {}", deseasoned.len());

    for (name, s) in [("raw", &series), ("deseasonalized", &deseasoned)] {
        let selection = select_lags_codec(s, 42, false).unwrap();
        let mut lags = selection.result.ordered_lags.clone();
        lags.sort_unstable();
        println!(
            "\ncodec selection on {name} data: lags {:?}, p1 = {:?}",
            lags, selection.orders.p1
        );
    }
    println!("\nremoving the seasonal component moves the estimate toward the true order");
}
