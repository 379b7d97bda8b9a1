//! Dynamic distribution of one query's database scan over worker pools.
//!
//! The database is split by length. Sequences shorter than the threshold are
//! packed into lane batches (inter-task kernel); the rest are scored one at a
//! time with the striped wavefront kernel (intra-task kernel). Work is handed
//! out through claim-once chunk queues and each worker keeps its own partial
//! top-k until the final merge. Ranked output never depends on how the work
//! was scheduled.

use std::cmp::Reverse;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use thiserror::Error;

use crate::align::{
    sw_align_traceback, sw_score_batch, sw_score_scalar, sw_score_wavefront_profile, AlignScore, Alignment, LaneBatch,
    WavefrontPlan, DEFAULT_BLOCK_ROWS, DEFAULT_CHUNK_WIDTH,
};
use crate::scoring::{make_profile, GapModel, QueryProfile, ScoringError, ScoringMatrix};
use crate::seqio::SequenceDatabase;

pub const DEFAULT_LENGTH_THRESHOLD: usize = 3000;
pub const DEFAULT_LANE_WIDTH: usize = 16;
pub const DEFAULT_TOP_K: usize = 10;
/// Short-pool chunks hold this many lane batches.
pub const BATCHES_PER_CHUNK: usize = 16;
pub const DEFAULT_MEMORY_CAP: usize = 256 << 20;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Scoring(#[from] ScoringError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Total worker threads.
    pub worker_count: usize,
    /// Subjects per inter-task batch.
    pub lane_width: usize,
    /// Query positions per wavefront stripe.
    pub chunk_width: usize,
    /// Sequences at least this long take the wavefront path.
    pub length_threshold: usize,
    pub top_k: usize,
    /// Upper bound on workers restricted to the lane kernel. At least one
    /// worker always remains free to take wavefront work.
    pub cpu_pool_threads: usize,
    /// Byte budget for one traceback matrix.
    pub memory_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            worker_count: thread::available_parallelism().map_or(1, |n| n.get()),
            lane_width: DEFAULT_LANE_WIDTH,
            chunk_width: DEFAULT_CHUNK_WIDTH,
            length_threshold: DEFAULT_LENGTH_THRESHOLD,
            top_k: DEFAULT_TOP_K,
            cpu_pool_threads: 1,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        for (name, value) in [
            ("worker_count", self.worker_count),
            ("lane_width", self.lane_width),
            ("chunk_width", self.chunk_width),
            ("top_k", self.top_k),
        ] {
            if value == 0 {
                return Err(SearchError::Config(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }

    /// Workers that only run the lane kernel.
    pub fn lane_only_workers(&self) -> usize {
        self.cpu_pool_threads.min(self.worker_count.saturating_sub(1))
    }

    /// Short-pool chunk size in subjects.
    pub fn short_chunk_len(&self) -> usize {
        self.lane_width * BATCHES_PER_CHUNK
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Lane batches, one subject per lane.
    InterTask,
    /// Striped wavefront over a single subject.
    IntraTask,
}

/// A run of consecutive entries `[start, end)` of one route's pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WorkChunk {
    pub route: Route,
    pub start: usize,
    pub end: usize,
}

impl WorkChunk {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Database indices split by route, each list in database order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Partition {
    pub short: Vec<usize>,
    pub long: Vec<usize>,
}

impl Partition {
    pub fn pool(&self, route: Route) -> &[usize] {
        match route {
            Route::InterTask => &self.short,
            Route::IntraTask => &self.long,
        }
    }

    /// Database indices covered by `chunk`.
    pub fn indices(&self, chunk: &WorkChunk) -> &[usize] {
        &self.pool(chunk.route)[chunk.start..chunk.end]
    }
}

/// Route every sequence by length: `< threshold` goes to the lane pool,
/// everything else to the wavefront pool. The short pool is sorted by
/// ascending length so lanes of a batch have similar lengths; the long pool
/// by descending length so the largest matrices start first. Ties keep
/// database order.
pub fn partition_database(db: &SequenceDatabase, threshold: usize) -> Partition {
    let mut partition = Partition::default();
    for i in 0..db.num_sequences() {
        if db.length(i) < threshold {
            partition.short.push(i);
        } else {
            partition.long.push(i);
        }
    }
    partition.short.sort_by_key(|&i| (db.length(i), i));
    partition.long.sort_by_key(|&i| (Reverse(db.length(i)), i));
    partition
}

/// Claim-exactly-once queue over a fixed list of chunks.
#[derive(Debug)]
pub struct ChunkQueue {
    chunks: Vec<WorkChunk>,
    next: AtomicUsize,
}

impl ChunkQueue {
    pub fn new(chunks: Vec<WorkChunk>) -> Self {
        Self { chunks, next: AtomicUsize::new(0) }
    }

    /// Cut a pool of `pool_len` entries into chunks of at most `chunk_len`.
    pub fn for_pool(route: Route, pool_len: usize, chunk_len: usize) -> Self {
        let chunk_len = chunk_len.max(1);
        let chunks = (0..pool_len)
            .step_by(chunk_len)
            .map(|start| WorkChunk { route, start, end: (start + chunk_len).min(pool_len) })
            .collect();
        Self::new(chunks)
    }

    /// Next unclaimed chunk, or `None` once the queue is exhausted.
    pub fn claim(&self) -> Option<WorkChunk> {
        let slot = self.next.fetch_add(1, Ordering::Relaxed);
        self.chunks.get(slot).copied()
    }

    pub fn chunks(&self) -> &[WorkChunk] {
        &self.chunks
    }

    pub fn len(&self) -> usize {
        self.chunks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }
}

pub fn claim_chunk(queue: &ChunkQueue) -> Option<WorkChunk> {
    queue.claim()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hit {
    pub db_index: usize,
    pub score: AlignScore,
    pub alignment: Option<Alignment>,
}

impl Hit {
    pub fn new(db_index: usize, score: AlignScore) -> Self {
        Self { db_index, score, alignment: None }
    }

    fn rank_key(&self) -> (std::cmp::Reverse<AlignScore>, usize) {
        (std::cmp::Reverse(self.score), self.db_index)
    }
}

/// Hits ordered by score descending, then database index ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RankedResults {
    pub hits: Vec<Hit>,
}

impl RankedResults {
    pub fn len(&self) -> usize {
        self.hits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hits.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Hit> {
        self.hits.iter()
    }

    /// `(db_index, score)` pairs, convenient for comparisons.
    pub fn scores(&self) -> Vec<(usize, i32)> {
        self.hits.iter().map(|h| (h.db_index, h.score.value())).collect()
    }
}

fn rank(hits: &mut Vec<Hit>, top_k: usize) {
    hits.sort_unstable_by_key(Hit::rank_key);
    hits.truncate(top_k);
}

/// Merge per-worker partial hit lists into the global top-k.
pub fn merge_results(partials: Vec<Vec<Hit>>, top_k: usize) -> RankedResults {
    let mut hits: Vec<Hit> = partials.into_iter().flatten().collect();
    rank(&mut hits, top_k);
    RankedResults { hits }
}

/// Which kernel scored what during a search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchTrace {
    /// Kernel invocations per database index.
    pub visits: Vec<u32>,
    pub routes: Vec<Option<Route>>,
    pub lane_batches: usize,
    pub lane_occupancy: usize,
    pub wavefront_calls: usize,
    pub claimed: Vec<WorkChunk>,
}

#[derive(Default)]
struct WorkerOutput {
    hits: Vec<Hit>,
    scored: Vec<(usize, Route)>,
    lane_batches: usize,
    claimed: Vec<WorkChunk>,
}

struct Scan<'a> {
    profile: &'a QueryProfile,
    db: &'a SequenceDatabase,
    gaps: &'a GapModel,
    config: &'a SearchConfig,
    partition: Partition,
    short: ChunkQueue,
    long: ChunkQueue,
    record: bool,
}

impl<'a> Scan<'a> {
    fn new(
        profile: &'a QueryProfile,
        db: &'a SequenceDatabase,
        gaps: &'a GapModel,
        config: &'a SearchConfig,
        record: bool,
    ) -> Self {
        let partition = partition_database(db, config.length_threshold);
        let short = ChunkQueue::for_pool(Route::InterTask, partition.short.len(), config.short_chunk_len());
        let long = ChunkQueue::for_pool(Route::IntraTask, partition.long.len(), 1);
        Self { profile, db, gaps, config, partition, short, long, record }
    }

    fn run_chunk(&self, chunk: WorkChunk, out: &mut WorkerOutput) {
        if self.record {
            out.claimed.push(chunk);
        }
        let indices = self.partition.indices(&chunk);
        match chunk.route {
            Route::InterTask => {
                for group in indices.chunks(self.config.lane_width) {
                    let subjects = group.iter().map(|&i| self.db.codes(i)).collect();
                    let batch = LaneBatch::new(self.config.lane_width, subjects);
                    let scores = sw_score_batch(self.profile, &batch, self.gaps);
                    out.lane_batches += 1;
                    for (&i, &score) in group.iter().zip(&scores) {
                        out.hits.push(Hit::new(i, score));
                        if self.record {
                            out.scored.push((i, Route::InterTask));
                        }
                    }
                }
            }
            Route::IntraTask => {
                let plan = WavefrontPlan::new(self.config.chunk_width, DEFAULT_BLOCK_ROWS);
                for &i in indices {
                    let score = sw_score_wavefront_profile(self.profile, self.db.codes(i), self.gaps, plan);
                    out.hits.push(Hit::new(i, score));
                    if self.record {
                        out.scored.push((i, Route::IntraTask));
                    }
                }
            }
        }
    }

    /// Pool A worker: lane chunks only.
    fn lane_worker(&self) -> WorkerOutput {
        let mut out = WorkerOutput::default();
        while let Some(chunk) = self.short.claim() {
            self.run_chunk(chunk, &mut out);
        }
        self.finish(out)
    }

    /// Pool B worker: drains the wavefront queue, then helps with lanes.
    fn mixed_worker(&self) -> WorkerOutput {
        let mut out = WorkerOutput::default();
        while let Some(chunk) = self.long.claim() {
            self.run_chunk(chunk, &mut out);
        }
        while let Some(chunk) = self.short.claim() {
            self.run_chunk(chunk, &mut out);
        }
        self.finish(out)
    }

    fn finish(&self, mut out: WorkerOutput) -> WorkerOutput {
        rank(&mut out.hits, self.config.top_k);
        out
    }

    fn run(&self) -> Vec<WorkerOutput> {
        let workers = self.config.worker_count;
        if workers == 1 {
            return vec![self.mixed_worker()];
        }
        let lane_only = self.config.lane_only_workers();
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| scope.spawn(move || if w < lane_only { self.lane_worker() } else { self.mixed_worker() }))
                .collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        })
    }
}

/// Score the whole database against a profiled query and keep the top-k.
/// No alignments are computed.
pub fn score_database(
    profile: &QueryProfile,
    db: &SequenceDatabase,
    gaps: &GapModel,
    config: &SearchConfig,
) -> Result<RankedResults, SearchError> {
    config.validate()?;
    let outputs = Scan::new(profile, db, gaps, config, false).run();
    Ok(merge_results(outputs.into_iter().map(|o| o.hits).collect(), config.top_k))
}

/// [`score_database`] that also reports which kernel handled every sequence.
pub fn score_database_traced(
    profile: &QueryProfile,
    db: &SequenceDatabase,
    gaps: &GapModel,
    config: &SearchConfig,
) -> Result<(RankedResults, SearchTrace), SearchError> {
    config.validate()?;
    let outputs = Scan::new(profile, db, gaps, config, true).run();
    let mut trace = SearchTrace {
        visits: vec![0; db.num_sequences()],
        routes: vec![None; db.num_sequences()],
        ..SearchTrace::default()
    };
    let mut partials = Vec::with_capacity(outputs.len());
    for out in outputs {
        for (i, route) in out.scored {
            trace.visits[i] += 1;
            trace.routes[i] = Some(route);
            match route {
                Route::InterTask => trace.lane_occupancy += 1,
                Route::IntraTask => trace.wavefront_calls += 1,
            }
        }
        trace.lane_batches += out.lane_batches;
        trace.claimed.extend(out.claimed);
        partials.push(out.hits);
    }
    Ok((merge_results(partials, config.top_k), trace))
}

/// Fill in the alignment of every retained hit.
pub fn attach_alignments(
    results: &mut RankedResults,
    query: &[u8],
    db: &SequenceDatabase,
    matrix: &ScoringMatrix,
    gaps: &GapModel,
    memory_cap: usize,
) {
    for hit in &mut results.hits {
        let alignment = sw_align_traceback(query, db.codes(hit.db_index), matrix, gaps, memory_cap);
        debug_assert_eq!(alignment.score, hit.score);
        hit.alignment = Some(alignment);
    }
}

/// Full search: scan the database, rank, then align the retained hits.
pub fn run_search(
    query: &[u8],
    db: &SequenceDatabase,
    matrix: &ScoringMatrix,
    gaps: &GapModel,
    config: &SearchConfig,
) -> Result<RankedResults, SearchError> {
    let profile = make_profile(matrix, query)?;
    let mut results = score_database(&profile, db, gaps, config)?;
    attach_alignments(&mut results, query, db, matrix, gaps, config.memory_cap);
    Ok(results)
}

/// Sequential scan with the reference kernel; the baseline that every
/// scheduled search must reproduce.
pub fn sequential_scan(
    query: &[u8],
    db: &SequenceDatabase,
    matrix: &ScoringMatrix,
    gaps: &GapModel,
    top_k: usize,
) -> RankedResults {
    let hits =
        (0..db.num_sequences()).map(|i| Hit::new(i, sw_score_scalar(query, db.codes(i), matrix, gaps))).collect();
    merge_results(vec![hits], top_k)
}
