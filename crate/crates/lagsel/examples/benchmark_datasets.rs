//! The three bundled reference series through the codec selector.
//!
//! Run with: cargo run --release --example benchmark_datasets

use lagsel::ingest::{descriptor, load_benchmark, BenchmarkName};
use lagsel::selection::select_lags_codec;

fn main() {
    for name in BenchmarkName::ALL {
        let desc = descriptor(name);
        let series = load_benchmark(name).unwrap();
        println!(
            "{}: {} observations{}",
            desc.name,
            series.len(),
            desc.period
                .map(|p| format!(", period {p}"))
                .unwrap_or_default()
        );

        let selection = select_lags_codec(&series, 42, false).unwrap();
        let mut sorted = selection.result.ordered_lags.clone();
        sorted.sort_unstable();
        println!(
            "  selected lags {:?} in order {:?} (h_max {})",
            sorted, selection.result.ordered_lags, selection.result.h_max
        );
        println!(
            "  order estimates: p1 = {:?}, p2 = {:?}, p3 = {:?}\n",
            selection.orders.p1, selection.orders.p2, selection.orders.p3
        );
    }
    println!("reference results: sunspots p=3, lynx p=4, passengers lags {{3,12}} (p=12)");
}
