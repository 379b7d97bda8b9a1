//! Benchmark a few queries and emit the per-query CSV table.
//!
//! `cargo run --release --example gcups_bench`

use swsearch::bench::{emit_csv, run_benchmark, BenchConfig, MonotonicClock};
use swsearch::scheduler::SearchConfig;
use swsearch::scoring::{builtin_blosum62, GapModel};
use swsearch::synth::SyntheticProteins;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut synth = SyntheticProteins::new(3);
    let db = synth.database(3000, 10, 5000);
    let queries: Vec<_> = synth.benchmark_queries().into_iter().step_by(5).collect();

    let config = SearchConfig { worker_count: 2, ..SearchConfig::default() };
    let bench = BenchConfig { repetitions: 3, warmup: 1 };
    let report = run_benchmark(
        &queries,
        &db,
        &builtin_blosum62(),
        &GapModel::default(),
        &config,
        &bench,
        &MonotonicClock::new(),
    )?;
    report.environment.write_to(std::io::stderr().lock())?;
    emit_csv(&report, std::io::stdout().lock())?;
    Ok(())
}
