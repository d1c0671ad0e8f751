//! Pearson and Spearman partial-autocorrelation baselines on a linear AR
//! process.
//!
//! Run with: cargo run --release --example pacf_baselines

use lagsel::pacf::{pacf, significant_lags, Method};
use lagsel::selection::{schwert_max_lag, select_lags_pacf};
use lagsel::simulate::{simulate, ModelKind, ModelSpec, DEFAULT_BURN_IN};

fn main() {
    let spec = ModelSpec::new(ModelKind::Ar8);
    let n = 2000;
    let run = simulate(&spec, n, 11, DEFAULT_BURN_IN).unwrap();
    let h = schwert_max_lag(n).unwrap();

    for method in [Method::Pearson, Method::Spearman] {
        let result = pacf(&run.series, h, method, 0.05).unwrap();
        let flagged = significant_lags(&result, 0.05);
        println!(
            "{} pacf up to lag {h} (band +-{:.4}):",
            method.token(),
            result.threshold
        );
        for (i, v) in result.pacf.iter().enumerate() {
            let lag = i + 1;
            let bars = ((v.abs() / 0.6) * 30.0).min(30.0) as usize;
            let mark = if flagged.contains(&lag) { "*" } else { " " };
            println!("  lag {lag:>2} {mark} {v:>8.4} {}", "#".repeat(bars));
        }
        let orders = select_lags_pacf(&run.series, method, 0.05).unwrap();
        println!(
            "  three largest significant lags: p1 = {:?}, p2 = {:?}, p3 = {:?}\n",
            orders.p1, orders.p2, orders.p3
        );
    }
    println!("true order is 8: the linear baselines pick it up well here");
}
