//! Simulates every benchmark process and prints summary statistics.
//!
//! Run with: cargo run --release --example simulate_models

use lagsel::error::Error;
use lagsel::simulate::{simulate, ModelKind, ModelSpec, DEFAULT_BURN_IN};

fn main() {
    let n = 1000;
    println!(
        "{:<12} {:>7} {:>12} {:>12} {:>12} {:>12}",
        "model", "true p", "mean", "sd", "min", "max"
    );
    for kind in ModelKind::ALL {
        let spec = ModelSpec::new(kind);
        match simulate(&spec, n, 42, DEFAULT_BURN_IN) {
            Ok(run) => {
                let values = run.series.values();
                let mean = values.iter().sum::<f64>() / values.len() as f64;
                let sd = (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                    / values.len() as f64)
                    .sqrt();
                let min = values.iter().cloned().fold(f64::MAX, f64::min);
                let max = values.iter().cloned().fold(f64::MIN, f64::max);
                println!(
                    "{:<12} {:>7} {:>12.3} {:>12.3} {:>12.3} {:>12.3}",
                    kind.token(),
                    spec.true_p(),
                    mean,
                    sd,
                    min,
                    max
                );
            }
            Err(Error::Diverged { step }) => {
                println!(
                    "{:<12} {:>7}   diverged at step {step} (explosive recurrence; \
                     try --burn-in 0 with n <= 300)",
                    kind.token(),
                    spec.true_p()
                );
            }
            Err(other) => println!("{:<12} error: {other}", kind.token()),
        }
    }
}
