//! A small Monte Carlo comparison of the three measures on two processes.
//!
//! Run with: cargo run --release --example experiment_desk

use lagsel::experiment::{emit_csv, run_scenarios, Measure, Preprocessing, Scenario};
use lagsel::selection::Estimator;
use lagsel::simulate::ModelKind;

fn main() {
    let mut scenarios = Vec::new();
    for kind in [ModelKind::Nlar4, ModelKind::Ar8] {
        let mut s = Scenario::new(kind, Preprocessing::Raw, vec![500, 1000]);
        s.replications = 10;
        scenarios.push(s);
    }
    println!("running 10 replications per cell (a fuller design: lagsel experiment --table2-desk)\n");
    let report = run_scenarios(&scenarios, 4).unwrap();

    println!(
        "\n{:<8} {:>6} {:>4} {:>10} {:>10} {:>10}",
        "model", "size", "est", "pearson", "spearman", "codec"
    );
    for kind in [ModelKind::Nlar4, ModelKind::Ar8] {
        for size in [500usize, 1000] {
            for estimator in Estimator::ALL {
                let fetch = |m: Measure| {
                    report
                        .cell(kind, Preprocessing::Raw, size, m, estimator)
                        .map(|c| format!("{:.2}", c.rmse))
                        .unwrap_or_default()
                };
                println!(
                    "{:<8} {:>6} {:>4} {:>10} {:>10} {:>10}",
                    kind.token(),
                    size,
                    estimator.token(),
                    fetch(Measure::Pearson),
                    fetch(Measure::Spearman),
                    fetch(Measure::Codec)
                );
            }
        }
    }

    println!("\nRMSE against true orders (nlar4: 4, ar8: 8); lower is better.");
    println!("\nCSV emission of the same report:\n{}", emit_csv(&report));
}
