//! Command-line front end: `search`, `bench`, `sweep` and `stats`.
//!
//! Results go to stdout (or `--output`), diagnostics to stderr. Exit codes:
//!
//! | code | meaning                          |
//! |------|----------------------------------|
//! | 0    | success                          |
//! | 2    | usage or configuration error     |
//! | 3    | I/O error                        |
//! | 4    | malformed FASTA or matrix file   |
//! | 5    | benchmark determinism violation  |

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::align::DEFAULT_CHUNK_WIDTH;
use crate::align::{AlignOp, Alignment};
use crate::bench::{
    emit_csv, emit_sweep_csv, run_benchmark, sweep_parameter, BenchConfig, BenchError, BenchReport, MonotonicClock,
    SweepParameter, DEFAULT_REPETITIONS, DEFAULT_WARMUP,
};
use crate::scheduler::{
    run_search, RankedResults, SearchConfig, SearchError, DEFAULT_LANE_WIDTH, DEFAULT_LENGTH_THRESHOLD,
    DEFAULT_MEMORY_CAP, DEFAULT_TOP_K,
};
use crate::scoring::{builtin_matrix, parse_matrix, GapModel, ScoringError, ScoringMatrix};
use crate::seqio::{load_database, Alphabet, EncodedSequence, SeqIoError, SequenceDatabase};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_FORMAT: i32 = 4;
pub const EXIT_DETERMINISM: i32 = 5;

/// Residues per line in the alignment display.
pub const ALIGNMENT_WRAP: usize = 60;

#[derive(Debug, Parser)]
#[command(
    name = "swsearch",
    version,
    about = "Parallel Smith-Waterman protein database search",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Rank database sequences against each query and print alignments
    Search(SearchArgs),
    /// Time repeated searches and report GCUPS as CSV
    Bench(BenchArgs),
    /// Benchmark across lane or chunk widths and report GCUPS as CSV
    Sweep(SweepArgs),
    /// Print database statistics
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
struct SearchOpts {
    /// Query FASTA file; queries are processed in file order
    #[arg(short = 'q', long, value_name = "FASTA")]
    query: PathBuf,
    /// Database FASTA file
    #[arg(short = 'd', long, value_name = "FASTA")]
    db: PathBuf,
    /// Built-in matrix name or path to an NCBI-format matrix file
    #[arg(short = 'm', long, default_value = "BLOSUM62")]
    matrix: String,
    /// Cost of the first residue of a gap
    #[arg(long, default_value_t = 10, value_name = "N")]
    gap_open: i32,
    /// Cost of each further gap residue
    #[arg(long, default_value_t = 2, value_name = "N")]
    gap_extend: i32,
    /// Worker threads [default: available cores]
    #[arg(short = 'w', long, value_name = "N")]
    workers: Option<usize>,
    /// Workers restricted to the lane kernel
    #[arg(short = 'T', long = "cpu-threads", default_value_t = 1, value_name = "N")]
    cpu_threads: usize,
    /// Subjects scored together by the lane kernel
    #[arg(long, default_value_t = DEFAULT_LANE_WIDTH, value_name = "N")]
    lane_width: usize,
    /// Query positions per wavefront stripe
    #[arg(long, default_value_t = DEFAULT_CHUNK_WIDTH, value_name = "N")]
    chunk_width: usize,
    /// Sequences at least this long use the wavefront kernel
    #[arg(long, default_value_t = DEFAULT_LENGTH_THRESHOLD, value_name = "N")]
    length_threshold: usize,
    /// Hits to keep per query
    #[arg(short = 'k', long, default_value_t = DEFAULT_TOP_K, value_name = "N")]
    top_k: usize,
    /// Write results here instead of stdout
    #[arg(short = 'o', long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[command(flatten)]
    opts: SearchOpts,
    /// Byte budget for one traceback matrix
    #[arg(long, default_value_t = DEFAULT_MEMORY_CAP, value_name = "BYTES")]
    memory_cap: usize,
}

#[derive(Debug, Args)]
struct RepetitionArgs {
    /// Timed runs per query
    #[arg(long, default_value_t = DEFAULT_REPETITIONS, value_name = "N")]
    repetitions: usize,
    /// Discarded runs before timing
    #[arg(long, default_value_t = DEFAULT_WARMUP, value_name = "N")]
    warmup: usize,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    opts: SearchOpts,
    #[command(flatten)]
    reps: RepetitionArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    opts: SearchOpts,
    #[command(flatten)]
    reps: RepetitionArgs,
    /// Parameter to vary: lane-width or chunk-width
    #[arg(long, value_name = "NAME")]
    parameter: SweepParameter,
    /// Comma-separated values to try
    #[arg(long, value_delimiter = ',', required = true, value_name = "LIST")]
    values: Vec<usize>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// Database FASTA file
    #[arg(short = 'd', long, value_name = "FASTA")]
    db: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Search,
    Bench,
    Sweep,
    Stats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixSelector {
    Builtin(String),
    File(PathBuf),
}

/// A fully validated command line.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub command: CommandKind,
    pub query_path: Option<PathBuf>,
    pub db_path: PathBuf,
    pub matrix: MatrixSelector,
    pub gaps: GapModel,
    pub search: SearchConfig,
    pub bench: BenchConfig,
    pub sweep: Option<(SweepParameter, Vec<usize>)>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("{0}")]
    Determinism(String),
    #[error("output error: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Output(_) => EXIT_IO,
            CliError::Format { .. } => EXIT_FORMAT,
            CliError::Determinism(_) => EXIT_DETERMINISM,
        }
    }

    fn from_seqio(path: &Path, err: SeqIoError) -> Self {
        match err {
            SeqIoError::Io(source) => CliError::Io { path: path.to_path_buf(), source },
            other => CliError::Format { path: path.to_path_buf(), message: other.to_string() },
        }
    }
}

impl From<BenchError> for CliError {
    fn from(err: BenchError) -> Self {
        match err {
            BenchError::Determinism { .. } | BenchError::SweepMismatch { .. } => CliError::Determinism(err.to_string()),
            BenchError::Io(e) => CliError::Output(e),
            BenchError::Search(e) => e.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(err: SearchError) -> Self {
        CliError::Usage(err.to_string())
    }
}

/// Parse `argv` (without the program name). `--help` and `--version`
/// surface as clap errors whose kind says so; [`main_with_args`] prints them.
pub fn parse_args<I, T>(argv: I) -> Result<Invocation, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(std::iter::once("swsearch".into()).chain(argv.into_iter().map(Into::into)))?;
    let invalid = |msg: String| clap::Error::raw(clap::error::ErrorKind::ValueValidation, msg + "\n");

    let (command, opts, memory_cap, reps, sweep) = match cli.command {
        CliCommand::Stats(args) => {
            return Ok(Invocation {
                command: CommandKind::Stats,
                query_path: None,
                db_path: args.db,
                matrix: MatrixSelector::Builtin("BLOSUM62".into()),
                gaps: GapModel::default(),
                search: SearchConfig::default(),
                bench: BenchConfig::default(),
                sweep: None,
                output: None,
            })
        }
        CliCommand::Search(a) => (CommandKind::Search, a.opts, a.memory_cap, None, None),
        CliCommand::Bench(a) => (CommandKind::Bench, a.opts, DEFAULT_MEMORY_CAP, Some(a.reps), None),
        CliCommand::Sweep(a) => {
            (CommandKind::Sweep, a.opts, DEFAULT_MEMORY_CAP, Some(a.reps), Some((a.parameter, a.values)))
        }
    };

    let gaps = GapModel::new(opts.gap_open, opts.gap_extend).map_err(|e| invalid(e.to_string()))?;
    let search = SearchConfig {
        worker_count: opts.workers.unwrap_or(SearchConfig::default().worker_count),
        lane_width: opts.lane_width,
        chunk_width: opts.chunk_width,
        length_threshold: opts.length_threshold,
        top_k: opts.top_k,
        cpu_pool_threads: opts.cpu_threads,
        memory_cap,
    };
    search.validate().map_err(|e| invalid(e.to_string()))?;
    let bench =
        reps.map_or_else(BenchConfig::default, |r| BenchConfig { repetitions: r.repetitions, warmup: r.warmup });
    if bench.repetitions == 0 {
        return Err(invalid("repetitions must be at least 1".into()));
    }
    if let Some((_, values)) = &sweep {
        if values.contains(&0) {
            return Err(invalid("sweep values must be at least 1".into()));
        }
    }
    let matrix = if builtin_matrix(&opts.matrix).is_some() {
        MatrixSelector::Builtin(opts.matrix)
    } else {
        MatrixSelector::File(PathBuf::from(opts.matrix))
    };

    Ok(Invocation {
        command,
        query_path: Some(opts.query),
        db_path: opts.db,
        matrix,
        gaps,
        search,
        bench,
        sweep,
        output: opts.output,
    })
}

/// Help text of the top-level command.
pub fn help_text() -> String {
    use clap::CommandFactory;
    Cli::command().render_help().to_string()
}

fn load_matrix(selector: &MatrixSelector) -> Result<ScoringMatrix, CliError> {
    match selector {
        MatrixSelector::Builtin(name) => {
            builtin_matrix(name).ok_or_else(|| CliError::Usage(format!("unknown matrix {name}")))
        }
        MatrixSelector::File(path) => {
            let file = File::open(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let name = path.file_stem().map_or_else(|| "custom".into(), |s| s.to_string_lossy().into_owned());
            parse_matrix(BufReader::new(file), &name).map_err(|e| match e {
                ScoringError::Io(source) => CliError::Io { path: path.clone(), source },
                other => CliError::Format { path: path.clone(), message: other.to_string() },
            })
        }
    }
}

fn load(path: &Path) -> Result<SequenceDatabase, CliError> {
    load_database(path).map_err(|e| CliError::from_seqio(path, e))
}

fn queries_of(db: &SequenceDatabase) -> Vec<EncodedSequence> {
    (0..db.num_sequences()).map(|i| db.sequence(i)).collect()
}

/// Execute an invocation, writing results to `out` unless `--output` is set.
pub fn execute(inv: &Invocation, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    if inv.command == CommandKind::Stats {
        let db = load(&inv.db_path)?;
        writeln!(out, "{} sequences, {} residues, max {}", db.num_sequences(), db.total_residues(), db.max_length())?;
        return Ok(());
    }

    let matrix = load_matrix(&inv.matrix)?;
    let query_path = inv.query_path.as_deref().expect("query path is required");
    let queries = load(query_path)?;
    let db = load(&inv.db_path)?;

    let mut file_out;
    let sink: &mut dyn Write = match &inv.output {
        Some(path) => {
            file_out =
                BufWriter::new(File::create(path).map_err(|source| CliError::Io { path: path.clone(), source })?);
            &mut file_out
        }
        None => out,
    };

    match inv.command {
        CommandKind::Search => {
            let alphabet = Alphabet::protein();
            for (n, query) in queries_of(&queries).iter().enumerate() {
                if n > 0 {
                    writeln!(sink)?;
                }
                let results = run_search(query.codes(), &db, &matrix, &inv.gaps, &inv.search)?;
                write_search_results(sink, query, &db, &results, &matrix, &alphabet)?;
            }
        }
        CommandKind::Bench => {
            let clock = MonotonicClock::new();
            let report =
                run_benchmark(&queries_of(&queries), &db, &matrix, &inv.gaps, &inv.search, &inv.bench, &clock)?;
            report.environment.write_to(&mut *err)?;
            emit_csv(&report, &mut *sink)?;
        }
        CommandKind::Sweep => {
            let (parameter, values) = inv.sweep.as_ref().expect("sweep parameters are required");
            let clock = MonotonicClock::new();
            let table = sweep_parameter(
                *parameter,
                values,
                &inv.search,
                &queries_of(&queries),
                &db,
                &matrix,
                &inv.gaps,
                &inv.bench,
                &clock,
            )?;
            if let Some(best) = table.best() {
                let default = match parameter {
                    SweepParameter::LaneWidth => inv.search.lane_width,
                    SweepParameter::ChunkWidth => inv.search.chunk_width,
                };
                writeln!(err, "best {parameter}={} (configured {default})", best.value)?;
            }
            let report = BenchReport { sweeps: vec![table], ..BenchReport::default() };
            emit_sweep_csv(&report, &mut *sink)?;
        }
        CommandKind::Stats => unreachable!(),
    }
    sink.flush()?;
    Ok(())
}

/// Ranked hits for one query: a summary line per hit followed by the
/// three-line alignment display.
pub fn write_search_results(
    out: &mut dyn Write,
    query: &EncodedSequence,
    db: &SequenceDatabase,
    results: &RankedResults,
    matrix: &ScoringMatrix,
    alphabet: &Alphabet,
) -> io::Result<()> {
    writeln!(out, "Query: {} ({} residues)", query.source_header, query.len())?;
    writeln!(out, "Database: {} sequences, {} residues", db.num_sequences(), db.total_residues())?;
    writeln!(out, "{} hits", results.len())?;
    for (rank, hit) in results.iter().enumerate() {
        writeln!(out, "{:>4}  score {:>6}  #{}  {}", rank + 1, hit.score, hit.db_index, db.header(hit.db_index))?;
        match &hit.alignment {
            Some(aln) if aln.capped => writeln!(out, "      alignment omitted: matrix exceeds memory cap")?,
            Some(aln) if aln.operations.is_empty() => writeln!(out, "      empty alignment")?,
            Some(aln) => {
                writeln!(
                    out,
                    "      query {}-{}  subject {}-{}  identities {}/{}",
                    aln.query_range.start + 1,
                    aln.query_range.end,
                    aln.subject_range.start + 1,
                    aln.subject_range.end,
                    aln.identities(),
                    aln.operations.len()
                )?;
                for line in
                    render_alignment(aln, query.codes(), db.codes(hit.db_index), matrix, alphabet, ALIGNMENT_WRAP)
                {
                    writeln!(out, "      {line}")?;
                }
            }
            None => {}
        }
    }
    Ok(())
}

/// Query, match and subject lines, wrapped at `width` columns. The match
/// line shows `|` for identities, `+` for positive substitutions.
pub fn render_alignment(
    aln: &Alignment,
    query: &[u8],
    subject: &[u8],
    matrix: &ScoringMatrix,
    alphabet: &Alphabet,
    width: usize,
) -> Vec<String> {
    let (mut q_line, mut m_line, mut s_line) = (String::new(), String::new(), String::new());
    let (mut i, mut j) = (aln.query_range.start, aln.subject_range.start);
    for op in &aln.operations {
        match op {
            AlignOp::Match | AlignOp::Substitute => {
                q_line.push(alphabet.decode(query[i]));
                s_line.push(alphabet.decode(subject[j]));
                m_line.push(if *op == AlignOp::Match {
                    '|'
                } else if matrix.score(query[i], subject[j]) > 0 {
                    '+'
                } else {
                    ' '
                });
                i += 1;
                j += 1;
            }
            AlignOp::Insert => {
                q_line.push(alphabet.decode(query[i]));
                s_line.push('-');
                m_line.push(' ');
                i += 1;
            }
            AlignOp::Delete => {
                q_line.push('-');
                s_line.push(alphabet.decode(subject[j]));
                m_line.push(' ');
                j += 1;
            }
        }
    }

    let (q_chars, m_chars, s_chars): (Vec<char>, Vec<char>, Vec<char>) =
        (q_line.chars().collect(), m_line.chars().collect(), s_line.chars().collect());
    let mut lines = Vec::new();
    let (mut q_pos, mut s_pos) = (aln.query_range.start + 1, aln.subject_range.start + 1);
    for start in (0..q_chars.len()).step_by(width.max(1)) {
        let end = (start + width).min(q_chars.len());
        let q: String = q_chars[start..end].iter().collect();
        let m: String = m_chars[start..end].iter().collect();
        let s: String = s_chars[start..end].iter().collect();
        lines.push(format!("Q {q_pos:>7} {q}"));
        lines.push(format!("  {:>7} {m}", ""));
        lines.push(format!("S {s_pos:>7} {s}"));
        q_pos += q.chars().filter(|&c| c != '-').count();
        s_pos += s.chars().filter(|&c| c != '-').count();
    }
    lines
}

/// Parse, execute and map the outcome to an exit status.
pub fn main_with_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::error::ErrorKind;
    let inv = match parse_args(argv) {
        Ok(inv) => inv,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&inv, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
