//! Sweep the lane width and chunk width and report the fastest setting.
//! Ranked results must be identical at every point.

use swsearch::bench::{emit_sweep_csv, sweep_parameter, BenchConfig, BenchReport, MonotonicClock, SweepParameter};
use swsearch::scheduler::SearchConfig;
use swsearch::scoring::{builtin_blosum62, GapModel};
use swsearch::synth::SyntheticProteins;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut synth = SyntheticProteins::new(11);
    let db = synth.database(1500, 10, 6000);
    let queries = vec![synth.sequence("Q1", 375), synth.sequence("Q2", 1000)];
    let (matrix, gaps) = (builtin_blosum62(), GapModel::default());
    let config = SearchConfig { worker_count: 2, length_threshold: 2000, ..SearchConfig::default() };
    let bench = BenchConfig { repetitions: 2, warmup: 1 };
    let clock = MonotonicClock::new();

    let mut report = BenchReport::default();
    for (parameter, values) in
        [(SweepParameter::LaneWidth, &[4, 8, 16, 32, 64][..]), (SweepParameter::ChunkWidth, &[16, 32, 64, 128][..])]
    {
        let table = sweep_parameter(parameter, values, &config, &queries, &db, &matrix, &gaps, &bench, &clock)?;
        let best = table.best().expect("non-empty sweep");
        eprintln!("best {parameter}={} ({:.3} GCUPS)", best.value, best.mean_gcups);
        report.sweeps.push(table);
    }
    emit_sweep_csv(&report, std::io::stdout().lock())?;
    Ok(())
}
