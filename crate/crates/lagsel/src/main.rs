//! Command-line frontend. All computation lives in the library; this shell
//! parses flags, wires modules together, and freezes output documents.
//!
//! Exit codes: 0 ok, 2 input error, 3 degenerate series, 4 flagged report
//! cells, 5 simulation divergence.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lagsel::bench::{bench_codec, bench_xi, BenchPoint};
use lagsel::error::Error;
use lagsel::experiment::{
    emit_csv, emit_distributions_json, emit_json, parse_scenario_file, run_scenarios,
    table2_desk_scenarios, RmseReport,
};
use lagsel::ingest::{load_benchmark, load_series_csv, BenchmarkName};
use lagsel::pacf::{pacf, significant_lags, Method};
use lagsel::preprocess::{deseasonalize, difference};
use lagsel::selection::{
    estimate_order, foci_select, foci_select_full, schwert_max_lag, select_lags_pacf,
};
use lagsel::series::{build_lag_matrix, TimeSeries};
use lagsel::simulate::{series_to_csv, simulate, ModelKind, ModelSpec, DEFAULT_BURN_IN};

const TOOL_NAME: &str = "lagsel";
const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = TOOL_NAME, version, about = "Model-free autoregressive lag selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Select significant lags of a series and estimate the AR order
    Select(SelectArgs),
    /// Partial autocorrelations with significance flags
    Pacf(PacfArgs),
    /// Simulate one of the benchmark processes to CSV
    Simulate(SimulateArgs),
    /// Run the Monte Carlo RMSE study
    Experiment(ExperimentArgs),
    /// Time the core estimators across input sizes
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// CSV file with a named value column
    #[arg(long, conflicts_with = "benchmark")]
    input: Option<PathBuf>,
    /// Bundled dataset: sunspots, lynx, or passengers
    #[arg(long)]
    benchmark: Option<String>,
    /// Value column name for --input
    #[arg(long, default_value = "value")]
    column: String,
    /// Seasonal period metadata for --input
    #[arg(long)]
    period: Option<usize>,
}

impl InputArgs {
    fn load(&self) -> Result<(TimeSeries, String), Error> {
        match (&self.input, &self.benchmark) {
            (Some(path), None) => {
                let series = load_series_csv(path, &self.column, self.period)?;
                Ok((series, path.display().to_string()))
            }
            (None, Some(name)) => {
                let bench: BenchmarkName = name.parse()?;
                let series = load_benchmark(bench)?;
                Ok((series, format!("benchmark:{}", bench.token())))
            }
            _ => Err(Error::InvalidInput(
                "exactly one of --input or --benchmark is required".into(),
            )),
        }
    }
}

#[derive(Args)]
struct SelectArgs {
    #[command(flatten)]
    input: InputArgs,
    /// codec, pearson, or spearman
    #[arg(long, default_value = "codec")]
    measure: String,
    /// raw, diff, or decompose
    #[arg(long, default_value = "raw")]
    preprocess: String,
    /// Significance level for the baseline measures
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Continue the greedy ordering past the stop for reporting
    #[arg(long)]
    full_ranking: bool,
    /// Write the JSON document here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PacfArgs {
    #[command(flatten)]
    input: InputArgs,
    /// pearson or spearman
    #[arg(long, default_value = "pearson")]
    method: String,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Maximum lag; defaults to the Schwert bound
    #[arg(long)]
    max_lag: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Model token, e.g. ar8, setar, nlar4
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: usize,
    /// GARCH variance intercept (arima-garch only)
    #[arg(long, default_value_t = 0.0)]
    garch_omega: f64,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    /// TOML scenario file ([[scenario]] tables)
    #[arg(long, conflicts_with = "table2_desk")]
    scenario: Option<PathBuf>,
    /// Run the built-in desk-scale study design
    #[arg(long)]
    table2_desk: bool,
    /// Replications per cell (table2-desk only)
    #[arg(long, default_value_t = 50)]
    reps: usize,
    /// Comma-separated sizes (table2-desk only)
    #[arg(long, default_value = "100,500,1000,2000", value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    base_seed: u64,
    /// Worker threads; defaults to LAGSEL_PARALLELISM or the CPU count
    #[arg(long)]
    parallelism: Option<usize>,
    /// Output path prefix; writes <out>.csv and <out>.json
    #[arg(long, default_value = "rmse_report")]
    out: PathBuf,
    /// Also write <out>.distributions.json with per-cell estimate counts
    #[arg(long)]
    distributions: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// xi or codec
    #[arg(long, default_value = "xi")]
    op: String,
    #[arg(long, default_value = "100000,200000", value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 7)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Select(args) => cmd_select(args),
        Command::Pacf(args) => cmd_pacf(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::DegenerateResponse
        | Error::DegenerateConditioning
        | Error::DegenerateSeries
        | Error::NumericallySingular { .. } => 3,
        Error::Diverged { .. } => 5,
        _ => 2,
    }
}

fn tool_meta() -> serde_json::Value {
    json!({ "name": TOOL_NAME, "version": TOOL_VERSION })
}

fn write_document(out: &Option<PathBuf>, doc: &serde_json::Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(doc).expect("serializable document");
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn apply_preprocess(series: TimeSeries, which: &str) -> Result<TimeSeries, Error> {
    match which {
        "raw" => Ok(series),
        "diff" | "differenced" => difference(&series, 1),
        "decompose" | "decomposed" => {
            let period = series.period().ok_or_else(|| {
                Error::InvalidInput(
                    "decompose preprocessing needs a seasonal period (--period or dataset metadata)"
                        .into(),
                )
            })?;
            deseasonalize(&series, period)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown preprocessing {other:?}, expected raw, diff, or decompose"
        ))),
    }
}

fn cmd_select(args: SelectArgs) -> Result<ExitCode, Error> {
    let (series, source) = args.input.load()?;
    let series = apply_preprocess(series, &args.preprocess)?;
    let config = json!({
        "command": "select",
        "input": source,
        "column": args.input.column,
        "measure": args.measure,
        "preprocess": args.preprocess,
        "alpha": args.alpha,
        "seed": args.seed,
        "full_ranking": args.full_ranking,
        "n_effective": series.len(),
    });

    let document = match args.measure.as_str() {
        "codec" => {
            let h = schwert_max_lag(series.len())?;
            let embedding = build_lag_matrix(&series, h)?;
            let result = if args.full_ranking {
                foci_select_full(&embedding, args.seed)?
            } else {
                foci_select(&embedding, args.seed)?
            };
            let orders = estimate_order(&result);
            json!({
                "tool": tool_meta(),
                "config": config,
                "h_max": result.h_max,
                "ordered_lags": result.ordered_lags,
                "step_estimates": result.step_estimates,
                "stop_index": result.stop_index,
                "p1": orders.p1,
                "p2": orders.p2,
                "p3": orders.p3,
                "full_ranking": result.full_ranking.as_ref().map(|ranking| {
                    ranking.iter()
                        .map(|e| json!({ "lag": e.lag, "estimate": e.estimate }))
                        .collect::<Vec<_>>()
                }),
            })
        }
        "pearson" | "spearman" => {
            let method: Method = args.measure.parse()?;
            let h = schwert_max_lag(series.len())?;
            let result = pacf(&series, h, method, args.alpha)?;
            let significant = significant_lags(&result, args.alpha);
            let estimates: Vec<f64> = significant
                .iter()
                .map(|&lag| result.pacf[lag - 1])
                .collect();
            let orders = select_lags_pacf(&series, method, args.alpha)?;
            json!({
                "tool": tool_meta(),
                "config": config,
                "h_max": h,
                "ordered_lags": significant,
                "step_estimates": estimates,
                "stop_index": significant.len(),
                "p1": orders.p1,
                "p2": orders.p2,
                "p3": orders.p3,
                "full_ranking": serde_json::Value::Null,
            })
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown measure {other:?}, expected codec, pearson, or spearman"
            )))
        }
    };
    write_document(&args.out, &document)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_pacf(args: PacfArgs) -> Result<ExitCode, Error> {
    let (series, source) = args.input.load()?;
    let method: Method = args.method.parse()?;
    let max_lag = match args.max_lag {
        Some(h) => h,
        None => schwert_max_lag(series.len())?,
    };
    let result = pacf(&series, max_lag, method, args.alpha)?;
    let significant = significant_lags(&result, args.alpha);
    let document = json!({
        "tool": tool_meta(),
        "config": {
            "command": "pacf",
            "input": source,
            "column": args.input.column,
            "method": args.method,
            "alpha": args.alpha,
            "max_lag": max_lag,
        },
        "n_effective": result.n_effective,
        "threshold": result.threshold,
        "pacf": result.pacf,
        "significant": significant,
    });
    write_document(&args.out, &document)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode, Error> {
    let kind: ModelKind = args.model.parse()?;
    let spec = ModelSpec::new(kind).with_garch_omega(args.garch_omega);
    let run = simulate(&spec, args.n, args.seed, args.burn_in)?;
    std::fs::write(&args.out, series_to_csv(&run.series))?;
    // the CSV schema is frozen, so the run record goes to stdout
    let document = json!({
        "tool": tool_meta(),
        "config": {
            "command": "simulate",
            "model": kind.token(),
            "n": args.n,
            "seed": args.seed,
            "burn_in": args.burn_in,
            "garch_omega": args.garch_omega,
            "out": args.out.display().to_string(),
        },
        "true_p": spec.true_p(),
        "period": spec.period(),
    });
    println!("{}", serde_json::to_string_pretty(&document).expect("document"));
    Ok(ExitCode::SUCCESS)
}

fn print_summary(report: &RmseReport) {
    let mut sizes: Vec<usize> = report.cells.keys().map(|k| k.size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut groups: Vec<(String, String)> = report
        .cells
        .keys()
        .map(|k| (k.model.clone(), k.preprocessing.clone()))
        .collect();
    groups.sort();
    groups.dedup();

    println!("RMSE by model (rows: size x estimator; columns: pearson / spearman / codec)");
    for (model, prep) in groups {
        println!("\n{model} [{prep}]");
        println!("{:>6} {:>4} {:>10} {:>10} {:>10}", "size", "est", "pearson", "spearman", "codec");
        for &size in &sizes {
            for est in ["p1", "p2", "p3"] {
                let fetch = |measure: &str| {
                    report
                        .cells
                        .get(&lagsel::experiment::CellKey {
                            model: model.clone(),
                            preprocessing: prep.clone(),
                            size,
                            measure: measure.into(),
                            estimator: est.into(),
                        })
                        .map(|c| format!("{:.2}", c.rmse))
                        .unwrap_or_else(|| "-".into())
                };
                let row = (fetch("pearson"), fetch("spearman"), fetch("codec"));
                if row.0 != "-" || row.1 != "-" || row.2 != "-" {
                    println!("{size:>6} {est:>4} {:>10} {:>10} {:>10}", row.0, row.1, row.2);
                }
            }
        }
    }
}

fn cmd_experiment(args: ExperimentArgs) -> Result<ExitCode, Error> {
    let scenarios = match (&args.scenario, args.table2_desk) {
        (Some(path), false) => parse_scenario_file(&std::fs::read_to_string(path)?)?,
        (None, true) => table2_desk_scenarios(args.reps, &args.sizes, args.base_seed),
        _ => {
            return Err(Error::InvalidInput(
                "exactly one of --scenario or --table2-desk is required".into(),
            ))
        }
    };
    let parallelism = args
        .parallelism
        .or_else(|| {
            std::env::var("LAGSEL_PARALLELISM")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        });

    let report = run_scenarios(&scenarios, parallelism)?;

    let csv_path = args.out.with_extension("csv");
    let json_path = args.out.with_extension("json");
    std::fs::write(&csv_path, emit_csv(&report))?;
    let mut document = emit_json(&report);
    document["tool"] = tool_meta();
    document["config"] = json!({
        "command": "experiment",
        "scenario_file": args.scenario.as_ref().map(|p| p.display().to_string()),
        "table2_desk": args.table2_desk,
        "reps": args.reps,
        "sizes": args.sizes,
        "base_seed": args.base_seed,
        "parallelism": parallelism,
    });
    std::fs::write(&json_path, serde_json::to_string_pretty(&document).expect("document"))?;
    if args.distributions {
        let dist_path = args.out.with_extension("distributions.json");
        std::fs::write(
            &dist_path,
            serde_json::to_string_pretty(&emit_distributions_json(&report)).expect("document"),
        )?;
    }

    print_summary(&report);
    eprintln!("wrote {} and {}", csv_path.display(), json_path.display());

    let flagged = report.flagged();
    if !flagged.is_empty() {
        for group in &flagged {
            eprintln!(
                "flagged: {} {} n={} exceeded 10% failures",
                group.model, group.preprocessing, group.size
            );
        }
        return Ok(ExitCode::from(4));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, Error> {
    let points: Vec<BenchPoint> = match args.op.as_str() {
        "xi" => bench_xi(&args.sizes, args.trials, args.seed),
        "codec" => bench_codec(&args.sizes, args.trials, args.seed),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown op {other:?}, expected xi or codec"
            )))
        }
    };
    let rows: Vec<serde_json::Value> = points
        .iter()
        .map(|p| {
            json!({
                "n": p.n,
                "median_seconds": p.median.as_secs_f64(),
                "trials": p.trials,
            })
        })
        .collect();
    let document = json!({
        "tool": tool_meta(),
        "config": {
            "command": "bench",
            "op": args.op,
            "sizes": args.sizes,
            "trials": args.trials,
            "seed": args.seed,
        },
        "timings": rows,
    });
    for p in &points {
        println!("n={:<8} median {:>12.6} s over {} trials", p.n, p.median.as_secs_f64(), p.trials);
    }
    if args.out.is_some() {
        write_document(&args.out, &document)?;
    }
    Ok(ExitCode::SUCCESS)
}
