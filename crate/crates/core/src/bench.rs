//! Throughput measurement in GCUPS (billion DP cell updates per second).
//!
//! Each query is searched `repetitions` times after an optional discarded
//! warm-up; only the database scan is timed. Query profile construction,
//! database loading and traceback of the retained hits stay outside the
//! timed region. Every repetition must reproduce the first run's ranked
//! results exactly.

use std::cell::Cell;
use std::fmt;
use std::io::{self, Read, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::scheduler::{score_database, RankedResults, SearchConfig, SearchError};
use crate::scoring::{make_profile, GapModel, QueryProfile, ScoringMatrix};
use crate::seqio::{EncodedSequence, SequenceDatabase};

pub const DEFAULT_REPETITIONS: usize = 20;
pub const DEFAULT_WARMUP: usize = 1;

pub const QUERY_CSV_HEADER: [&str; 7] =
    ["query_id", "query_length", "repetitions", "mean_gcups", "min_gcups", "max_gcups", "stddev_gcups"];
pub const SWEEP_CSV_HEADER: [&str; 4] = ["parameter", "value", "mean_gcups", "is_best"];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid measurement: elapsed time {0} s is not positive")]
    Measurement(f64),
    #[error("determinism violation: query {query_id} repetition {repetition} returned different results")]
    Determinism { query_id: String, repetition: usize },
    #[error("sweep {parameter}={value} changed the ranked results of query {query_id}")]
    SweepMismatch { parameter: SweepParameter, value: usize, query_id: String },
    #[error("invalid benchmark configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

/// One throughput sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GcupsMeasure {
    pub query_length: usize,
    pub db_residues: usize,
    pub elapsed: f64,
    pub gcups: f64,
}

/// `gcups = query_length * db_residues / (elapsed * 1e9)`.
pub fn measure_gcups(query_length: usize, db_residues: usize, elapsed: f64) -> Result<GcupsMeasure, BenchError> {
    if !elapsed.is_finite() || elapsed <= 0.0 {
        return Err(BenchError::Measurement(elapsed));
    }
    let cells = query_length as f64 * db_residues as f64;
    Ok(GcupsMeasure { query_length, db_residues, elapsed, gcups: cells / (elapsed * 1e9) })
}

/// Monotonic time source; swapped for a fake in tests.
pub trait Clock {
    /// Time since an arbitrary fixed origin.
    fn now(&self) -> Duration;
}

#[derive(Debug, Clone, Copy)]
pub struct MonotonicClock {
    origin: Instant,
}

impl MonotonicClock {
    pub fn new() -> Self {
        Self { origin: Instant::now() }
    }
}

impl Default for MonotonicClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for MonotonicClock {
    fn now(&self) -> Duration {
        self.origin.elapsed()
    }
}

/// Advances by a fixed step on every reading.
#[derive(Debug)]
pub struct FakeClock {
    step: Duration,
    readings: Cell<u32>,
}

impl FakeClock {
    pub fn new(step: Duration) -> Self {
        Self { step, readings: Cell::new(0) }
    }

    pub fn readings(&self) -> u32 {
        self.readings.get()
    }
}

impl Clock for FakeClock {
    fn now(&self) -> Duration {
        let n = self.readings.get();
        self.readings.set(n + 1);
        self.step * n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub repetitions: usize,
    /// Untimed runs before the measured repetitions.
    pub warmup: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self { repetitions: DEFAULT_REPETITIONS, warmup: DEFAULT_WARMUP }
    }
}

/// Per-query summary over all repetitions.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryRow {
    pub query_id: String,
    pub query_length: usize,
    pub repetitions: usize,
    pub mean_gcups: f64,
    pub min_gcups: f64,
    pub max_gcups: f64,
    pub stddev_gcups: f64,
    /// Ranked results of the first run, which every repetition matched.
    pub results: RankedResults,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    LaneWidth,
    ChunkWidth,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::LaneWidth => "lane_width",
            SweepParameter::ChunkWidth => "chunk_width",
        }
    }

    fn apply(self, config: &SearchConfig, value: usize) -> SearchConfig {
        let mut config = config.clone();
        match self {
            SweepParameter::LaneWidth => config.lane_width = value,
            SweepParameter::ChunkWidth => config.chunk_width = value,
        }
        config
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "lane_width" => Ok(SweepParameter::LaneWidth),
            "chunk_width" => Ok(SweepParameter::ChunkWidth),
            other => Err(format!("unknown sweep parameter {other:?} (expected lane_width or chunk_width)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: usize,
    pub mean_gcups: f64,
    pub is_best: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub parameter: SweepParameter,
    pub points: Vec<SweepPoint>,
}

impl SweepTable {
    pub fn best(&self) -> Option<&SweepPoint> {
        self.points.iter().find(|p| p.is_best)
    }
}

/// Settings and database statistics a report was produced under.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Environment {
    pub worker_count: usize,
    pub cpu_pool_threads: usize,
    pub lane_width: usize,
    pub chunk_width: usize,
    pub length_threshold: usize,
    pub top_k: usize,
    pub repetitions: usize,
    pub warmup: usize,
    pub db_sequences: usize,
    pub db_residues: usize,
    pub db_max_length: usize,
}

impl Environment {
    fn new(config: &SearchConfig, bench: &BenchConfig, db: &SequenceDatabase) -> Self {
        Self {
            worker_count: config.worker_count,
            cpu_pool_threads: config.cpu_pool_threads,
            lane_width: config.lane_width,
            chunk_width: config.chunk_width,
            length_threshold: config.length_threshold,
            top_k: config.top_k,
            repetitions: bench.repetitions,
            warmup: bench.warmup,
            db_sequences: db.num_sequences(),
            db_residues: db.total_residues(),
            db_max_length: db.max_length(),
        }
    }

    /// `key=value` lines.
    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        let fields = [
            ("worker_count", self.worker_count),
            ("cpu_pool_threads", self.cpu_pool_threads),
            ("lane_width", self.lane_width),
            ("chunk_width", self.chunk_width),
            ("length_threshold", self.length_threshold),
            ("top_k", self.top_k),
            ("repetitions", self.repetitions),
            ("warmup", self.warmup),
            ("db_sequences", self.db_sequences),
            ("db_residues", self.db_residues),
            ("db_max_length", self.db_max_length),
        ];
        for (key, value) in fields {
            writeln!(out, "{key}={value}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub rows: Vec<QueryRow>,
    pub sweeps: Vec<SweepTable>,
    pub environment: Environment,
}

/// Mean, min, max and sample standard deviation. The deviation is 0 for a
/// single sample.
pub fn summarize(samples: &[f64]) -> (f64, f64, f64, f64) {
    if samples.is_empty() {
        return (0.0, 0.0, 0.0, 0.0);
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let stddev = if samples.len() > 1 {
        (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, min, max, stddev)
}

/// First word of a FASTA header.
pub fn query_id(header: &str) -> String {
    header.split_whitespace().next().unwrap_or_default().to_string()
}

/// Benchmark driver with a pluggable search function; [`run_benchmark`]
/// plugs in the scheduler. Each call of `search` is timed on its own.
pub fn run_benchmark_with<C, F>(
    queries: &[EncodedSequence],
    db_residues: usize,
    matrix: &ScoringMatrix,
    bench: &BenchConfig,
    clock: &C,
    mut search: F,
) -> Result<Vec<QueryRow>, BenchError>
where
    C: Clock + ?Sized,
    F: FnMut(&QueryProfile) -> Result<RankedResults, SearchError>,
{
    if bench.repetitions == 0 {
        return Err(BenchError::Config("repetitions must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(queries.len());
    for query in queries {
        let profile = make_profile(matrix, query.codes()).map_err(SearchError::from)?;
        let query_id = query_id(&query.source_header);
        let mut reference: Option<RankedResults> = None;
        let mut check = |results: RankedResults, repetition: usize| match &reference {
            None => {
                reference = Some(results);
                Ok(())
            }
            Some(r) if *r == results => Ok(()),
            Some(_) => Err(BenchError::Determinism { query_id: query_id.clone(), repetition }),
        };

        for _ in 0..bench.warmup {
            check(search(&profile)?, 0)?;
        }
        let mut samples = Vec::with_capacity(bench.repetitions);
        for repetition in 1..=bench.repetitions {
            let start = clock.now();
            let results = search(&profile)?;
            let elapsed = clock.now().saturating_sub(start).as_secs_f64();
            check(results, repetition)?;
            // A clock too coarse to see the run at all still yields a sample.
            let elapsed = if elapsed > 0.0 { elapsed } else { f64::MIN_POSITIVE };
            samples.push(measure_gcups(query.len(), db_residues, elapsed)?.gcups);
        }

        let (mean, min, max, stddev) = summarize(&samples);
        rows.push(QueryRow {
            query_id,
            query_length: query.len(),
            repetitions: samples.len(),
            mean_gcups: mean,
            min_gcups: min,
            max_gcups: max,
            stddev_gcups: stddev,
            results: reference.unwrap_or_default(),
        });
    }
    Ok(rows)
}

/// Time `repetitions` database scans per query and summarize them.
pub fn run_benchmark<C: Clock + ?Sized>(
    queries: &[EncodedSequence],
    db: &SequenceDatabase,
    matrix: &ScoringMatrix,
    gaps: &GapModel,
    config: &SearchConfig,
    bench: &BenchConfig,
    clock: &C,
) -> Result<BenchReport, BenchError> {
    config.validate()?;
    let rows = run_benchmark_with(queries, db.total_residues(), matrix, bench, clock, |profile| {
        score_database(profile, db, gaps, config)
    })?;
    Ok(BenchReport { rows, sweeps: Vec::new(), environment: Environment::new(config, bench, db) })
}

/// Benchmark once per value of `parameter`. Ranked results must not change
/// between points; the point with the highest mean GCUPS is flagged (first
/// one on ties).
#[allow(clippy::too_many_arguments)]
pub fn sweep_parameter<C: Clock + ?Sized>(
    parameter: SweepParameter,
    values: &[usize],
    config: &SearchConfig,
    queries: &[EncodedSequence],
    db: &SequenceDatabase,
    matrix: &ScoringMatrix,
    gaps: &GapModel,
    bench: &BenchConfig,
    clock: &C,
) -> Result<SweepTable, BenchError> {
    if values.is_empty() {
        return Err(BenchError::Config("sweep needs at least one value".into()));
    }
    let mut points = Vec::with_capacity(values.len());
    let mut baseline: Option<Vec<QueryRow>> = None;
    for &value in values {
        let point_config = parameter.apply(config, value);
        let report = run_benchmark(queries, db, matrix, gaps, &point_config, bench, clock)?;
        if let Some(base) = &baseline {
            for (a, b) in base.iter().zip(&report.rows) {
                if a.results != b.results {
                    return Err(BenchError::SweepMismatch { parameter, value, query_id: b.query_id.clone() });
                }
            }
        }
        let mean = if report.rows.is_empty() {
            0.0
        } else {
            report.rows.iter().map(|r| r.mean_gcups).sum::<f64>() / report.rows.len() as f64
        };
        points.push(SweepPoint { value, mean_gcups: mean, is_best: false });
        baseline.get_or_insert(report.rows);
    }
    let best =
        points.iter().enumerate().fold(0, |best, (i, p)| if p.mean_gcups > points[best].mean_gcups { i } else { best });
    points[best].is_best = true;
    Ok(SweepTable { parameter, points })
}

/// Per-query table: header row, then one row per query in report order.
pub fn emit_csv<W: Write>(report: &BenchReport, sink: W) -> Result<(), BenchError> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(QUERY_CSV_HEADER)?;
    for row in &report.rows {
        writer.write_record([
            row.query_id.clone(),
            row.query_length.to_string(),
            row.repetitions.to_string(),
            row.mean_gcups.to_string(),
            row.min_gcups.to_string(),
            row.max_gcups.to_string(),
            row.stddev_gcups.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Sweep table: header row, then one row per sweep point.
pub fn emit_sweep_csv<W: Write>(report: &BenchReport, sink: W) -> Result<(), BenchError> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(SWEEP_CSV_HEADER)?;
    for table in &report.sweeps {
        for point in &table.points {
            writer.write_record([
                table.parameter.name().to_string(),
                point.value.to_string(),
                point.mean_gcups.to_string(),
                point.is_best.to_string(),
            ])?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// The numeric fields of a per-query CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryCsvRow {
    pub query_id: String,
    pub query_length: usize,
    pub repetitions: usize,
    pub mean_gcups: f64,
    pub min_gcups: f64,
    pub max_gcups: f64,
    pub stddev_gcups: f64,
}

impl From<&QueryRow> for QueryCsvRow {
    fn from(row: &QueryRow) -> Self {
        Self {
            query_id: row.query_id.clone(),
            query_length: row.query_length,
            repetitions: row.repetitions,
            mean_gcups: row.mean_gcups,
            min_gcups: row.min_gcups,
            max_gcups: row.max_gcups,
            stddev_gcups: row.stddev_gcups,
        }
    }
}

fn field<T: FromStr>(record: &csv::StringRecord, index: usize, line: u64) -> Result<T, BenchError> {
    record
        .get(index)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| BenchError::Config(format!("CSV line {line}: bad value in column {}", index + 1)))
}

/// Read back a table written by [`emit_csv`].
pub fn parse_query_csv<R: Read>(source: R) -> Result<Vec<QueryCsvRow>, BenchError> {
    let mut reader = csv::Reader::from_reader(source);
    if reader.headers()?.iter().ne(QUERY_CSV_HEADER) {
        return Err(BenchError::Config("unexpected per-query CSV header".into()));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        rows.push(QueryCsvRow {
            query_id: record.get(0).unwrap_or_default().to_string(),
            query_length: field(&record, 1, line)?,
            repetitions: field(&record, 2, line)?,
            mean_gcups: field(&record, 3, line)?,
            min_gcups: field(&record, 4, line)?,
            max_gcups: field(&record, 5, line)?,
            stddev_gcups: field(&record, 6, line)?,
        });
    }
    Ok(rows)
}

/// Read back a table written by [`emit_sweep_csv`].
pub fn parse_sweep_csv<R: Read>(source: R) -> Result<Vec<(SweepParameter, SweepPoint)>, BenchError> {
    let mut reader = csv::Reader::from_reader(source);
    if reader.headers()?.iter().ne(SWEEP_CSV_HEADER) {
        return Err(BenchError::Config("unexpected sweep CSV header".into()));
    }
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let parameter = field(&record, 0, line)?;
        points.push((
            parameter,
            SweepPoint {
                value: field(&record, 1, line)?,
                mean_gcups: field(&record, 2, line)?,
                is_best: field(&record, 3, line)?,
            },
        ));
    }
    Ok(points)
}

/// Outcome of the "longer queries are not slower" trend check.
#[derive(Debug, Clone, PartialEq)]
pub struct TrendCheck {
    pub slack: f64,
    /// Adjacent pairs `(shorter, longer)` of query ids where the longer query
    /// fell below `shorter_gcups / slack`.
    pub violations: Vec<(String, String)>,
}

impl TrendCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compare mean GCUPS of queries adjacent in length.
pub fn workload_trend(rows: &[QueryRow], slack: f64) -> TrendCheck {
    let mut sorted: Vec<&QueryRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.query_length);
    let violations = sorted
        .windows(2)
        .filter(|w| w[1].mean_gcups * slack < w[0].mean_gcups)
        .map(|w| (w[0].query_id.clone(), w[1].query_id.clone()))
        .collect();
    TrendCheck { slack, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::align::AlignScore;
    use crate::scheduler::{Hit, SearchConfig};
    use crate::scoring::builtin_blosum62;

    #[test]
    fn gcups_arithmetic() {
        let m = measure_gcups(144, 204_173_280, 1.0).unwrap();
        assert!((m.gcups - 29.400_952_32).abs() < 1e-9);
        assert_eq!(measure_gcups(0, 1000, 2.0).unwrap().gcups, 0.0);
        let a = measure_gcups(300, 1_000_000, 0.5).unwrap().gcups;
        let b = measure_gcups(300, 1_000_000, 1.0).unwrap().gcups;
        assert!((a - 2.0 * b).abs() < 1e-12);
    }

    #[test]
    fn non_positive_elapsed_rejected() {
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(measure_gcups(10, 10, bad), Err(BenchError::Measurement(_))));
        }
    }

    #[test]
    fn summary_statistics() {
        assert_eq!(summarize(&[3.0]), (3.0, 3.0, 3.0, 0.0));
        let (mean, min, max, sd) = summarize(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]);
        assert_eq!((mean, min, max), (5.0, 2.0, 9.0));
        // sample variance 32 / 7
        assert!((sd - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn fake_clock_brackets_each_search_once() {
        let clock = FakeClock::new(Duration::from_millis(250));
        let m = builtin_blosum62();
        let queries = vec![EncodedSequence::from_residues("q1", "ARNDCQ")];
        let bench = BenchConfig { repetitions: 5, warmup: 2 };
        let mut calls = 0;
        let rows = run_benchmark_with(&queries, 4_000_000, &m, &bench, &clock, |_| {
            calls += 1;
            Ok(RankedResults::default())
        })
        .unwrap();
        assert_eq!(calls, 7);
        assert_eq!(clock.readings(), 10);
        let row = &rows[0];
        assert_eq!(row.repetitions, 5);
        // 6 * 4e6 cells every 0.25 s
        let expected = 6.0 * 4e6 / 0.25 / 1e9;
        assert!((row.mean_gcups - expected).abs() < 1e-15);
        assert_eq!(row.stddev_gcups, 0.0);
    }

    #[test]
    fn nondeterministic_search_is_rejected() {
        let clock = FakeClock::new(Duration::from_millis(1));
        let m = builtin_blosum62();
        let queries = vec![EncodedSequence::from_residues("flaky", "ARND")];
        let mut run = 0;
        let err = run_benchmark_with(&queries, 100, &m, &BenchConfig::default(), &clock, |_| {
            run += 1;
            Ok(RankedResults { hits: vec![Hit::new(0, AlignScore::new(if run == 4 { 1 } else { 2 }))] })
        })
        .unwrap_err();
        match err {
            BenchError::Determinism { query_id, repetition } => {
                assert_eq!(query_id, "flaky");
                assert_eq!(repetition, 3);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn empty_query_list_gives_empty_report() {
        let db = SequenceDatabase::new();
        let report = run_benchmark(
            &[],
            &db,
            &builtin_blosum62(),
            &GapModel::default(),
            &SearchConfig::default(),
            &BenchConfig::default(),
            &MonotonicClock::new(),
        )
        .unwrap();
        assert!(report.rows.is_empty());
        let mut out = Vec::new();
        emit_csv(&report, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "query_id,query_length,repetitions,mean_gcups,min_gcups,max_gcups,stddev_gcups\n"
        );
    }

    #[test]
    fn zero_repetitions_rejected() {
        let clock = FakeClock::new(Duration::from_millis(1));
        let bench = BenchConfig { repetitions: 0, warmup: 0 };
        let err = run_benchmark_with(&[], 1, &builtin_blosum62(), &bench, &clock, |_| Ok(RankedResults::default()));
        assert!(matches!(err, Err(BenchError::Config(_))));
    }

    #[test]
    fn csv_quotes_awkward_ids() {
        let report = BenchReport {
            rows: vec![QueryRow {
                query_id: "sp|P02232|LEG1, \"quoted\"".into(),
                query_length: 144,
                repetitions: 20,
                mean_gcups: 1.5,
                min_gcups: 1.25,
                max_gcups: 1.75,
                stddev_gcups: 0.1,
                results: RankedResults::default(),
            }],
            ..BenchReport::default()
        };
        let mut out = Vec::new();
        emit_csv(&report, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.contains("\"sp|P02232|LEG1, \"\"quoted\"\"\""));
        let parsed = parse_query_csv(text.as_bytes()).unwrap();
        assert_eq!(parsed, vec![QueryCsvRow::from(&report.rows[0])]);
    }

    #[test]
    fn sweep_csv_round_trip() {
        let report = BenchReport {
            sweeps: vec![SweepTable {
                parameter: SweepParameter::ChunkWidth,
                points: vec![
                    SweepPoint { value: 4, mean_gcups: 0.123, is_best: false },
                    SweepPoint { value: 64, mean_gcups: 0.5, is_best: true },
                ],
            }],
            ..BenchReport::default()
        };
        let mut out = Vec::new();
        emit_sweep_csv(&report, &mut out).unwrap();
        let parsed = parse_sweep_csv(out.as_slice()).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[1], (SweepParameter::ChunkWidth, report.sweeps[0].points[1].clone()));
    }

    #[test]
    fn sweep_parameter_names() {
        assert_eq!("lane-width".parse::<SweepParameter>(), Ok(SweepParameter::LaneWidth));
        assert_eq!("chunk_width".parse::<SweepParameter>(), Ok(SweepParameter::ChunkWidth));
        assert!("warp".parse::<SweepParameter>().is_err());
    }

    #[test]
    fn trend_check_with_slack() {
        let row = |id: &str, len, gcups| QueryRow {
            query_id: id.into(),
            query_length: len,
            repetitions: 1,
            mean_gcups: gcups,
            min_gcups: gcups,
            max_gcups: gcups,
            stddev_gcups: 0.0,
            results: RankedResults::default(),
        };
        let rows = vec![row("b", 500, 0.95), row("a", 100, 1.0), row("c", 900, 2.0)];
        assert!(!workload_trend(&rows, 1.0).holds());
        assert!(workload_trend(&rows, 1.1).holds());
        assert_eq!(workload_trend(&rows, 1.0).violations, vec![("a".to_string(), "b".to_string())]);
    }
}
