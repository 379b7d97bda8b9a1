//! Parallel Smith-Waterman database search.
//!
//! A query is scored against every sequence of a [`SequenceDatabase`] with
//! affine gap penalties. Short database sequences are scored many at a time
//! by the lane kernel ([`align::sw_score_batch`]), long ones by the striped
//! wavefront kernel ([`align::sw_score_wavefront`]); both are checked against
//! the scalar reference ([`align::sw_score_scalar`]). The [`scheduler`] hands
//! work out to worker pools and merges a deterministic top-k, and [`bench`]
//! measures throughput in GCUPS.
//!
//! ```
//! use swsearch::prelude::*;
//!
//! let db = SequenceDatabase::from_fasta(">a\nMKTAYIAKQR\n>b\nGGGGGG\n".as_bytes()).unwrap();
//! let query = EncodedSequence::from_residues("q", "KTAYIAK");
//! let config = SearchConfig { worker_count: 1, ..SearchConfig::default() };
//! let hits = run_search(query.codes(), &db, &builtin_blosum62(), &GapModel::default(), &config).unwrap();
//! assert_eq!(hits.hits[0].db_index, 0);
//! ```

pub mod align;
pub mod bench;
pub mod cli;
pub mod scheduler;
pub mod scoring;
pub mod seqio;
pub mod synth;

pub mod prelude {
    pub use crate::align::{
        sw_align_traceback, sw_score_batch, sw_score_scalar, sw_score_wavefront, AlignOp, AlignScore, Alignment,
        LaneBatch,
    };
    pub use crate::bench::{measure_gcups, run_benchmark, BenchConfig, BenchReport, MonotonicClock};
    pub use crate::scheduler::{run_search, Hit, RankedResults, SearchConfig};
    pub use crate::scoring::{builtin_blosum62, make_profile, parse_matrix, GapModel, ScoringMatrix};
    pub use crate::seqio::{load_database, EncodedSequence, SequenceDatabase};
}

pub use seqio::SequenceDatabase;
