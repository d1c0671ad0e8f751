//! Greedy forward lag selection on a simulated nonlinear process.
//!
//! Run with: cargo run --release --example foci_selection

use lagsel::selection::{estimate_order, foci_select_full, schwert_max_lag};
use lagsel::series::build_lag_matrix;
use lagsel::simulate::{simulate, ModelKind, ModelSpec, DEFAULT_BURN_IN};

fn main() {
    let spec = ModelSpec::new(ModelKind::Nlar4);
    let n = 2000;
    let run = simulate(&spec, n, 42, DEFAULT_BURN_IN).unwrap();
    println!(
        "simulated {} observations of {} (true order {})\n",
        n,
        spec.kind.token(),
        spec.true_p()
    );

    let h = schwert_max_lag(n).unwrap();
    println!("candidate lags 1..={h} per Schwert's rule");

    let embedding = build_lag_matrix(&run.series, h).unwrap();
    let result = foci_select_full(&embedding, 42).unwrap();

    println!("\nselection trace (stops at the first non-positive estimate):");
    let ranking = result.full_ranking.as_ref().unwrap();
    for (step, entry) in ranking.iter().enumerate() {
        let marker = if step < result.stop_index { "selected" } else { "past stop" };
        println!(
            "  step {:>2}: lag {:>2}  estimate {:>8.4}  [{marker}]",
            step + 1,
            entry.lag,
            entry.estimate
        );
        if step + 1 == result.stop_index {
            println!("  ---- stopping rule fires below this line ----");
        }
        if step > result.stop_index + 3 {
            println!("  ... ({} more ranked lags)", ranking.len() - step - 1);
            break;
        }
    }

    let orders = estimate_order(&result);
    println!(
        "\norder estimates: p1 = {:?}, p2 = {:?}, p3 = {:?}",
        orders.p1, orders.p2, orders.p3
    );
}
