//! Smith-Waterman kernels.
//!
//! All kernels evaluate the same three-layer affine-gap recurrence, with `i`
//! walking the query and `j` walking the subject:
//!
//! ```text
//! E[i][j] = max(H[i][j-1] - open, E[i][j-1] - extend)   gap in the query
//! F[i][j] = max(H[i-1][j] - open, F[i-1][j] - extend)   gap in the subject
//! H[i][j] = max(0, H[i-1][j-1] + sub(q[i], s[j]), E[i][j], F[i][j])
//! ```
//!
//! and return the maximum `H` cell. They differ only in how the cells are
//! scheduled:
//!
//! * [`sw_score_scalar`] walks the matrix row by row in 32-bit arithmetic and
//!   is the reference every other kernel is checked against.
//! * [`sw_score_batch`] scores one query against a [`LaneBatch`] of subjects
//!   in lockstep, one subject per lane, using 16-bit saturating lanes.
//! * [`sw_score_wavefront`] splits one matrix into query stripes that advance
//!   along anti-diagonals, handing border columns from stripe to stripe.
//! * [`sw_align_traceback`] keeps per-cell provenance to recover the
//!   alignment itself.

mod lanes;
mod scalar;
mod traceback;
mod wavefront;

use std::fmt;

pub use lanes::{sw_score_batch, LaneBatch};
pub use scalar::{sw_score_profile, sw_score_scalar};
pub use traceback::{sw_align_traceback, AlignOp, Alignment, TRACE_BYTES_PER_CELL};
pub use wavefront::{
    sw_score_wavefront, sw_score_wavefront_parallel, sw_score_wavefront_profile, WavefrontPlan, DEFAULT_BLOCK_ROWS,
    DEFAULT_CHUNK_WIDTH,
};

/// Lower bound used for the gap layers before any gap can be opened.
pub(crate) const NEG_INF: i32 = i32::MIN / 4;

/// Branch-free maximum. DP cell values are data dependent, so a branching
/// `max` mispredicts constantly.
#[inline(always)]
pub(crate) fn cell_max<T: Ord + Copy>(a: T, b: T) -> T {
    std::hint::select_unpredictable(a >= b, a, b)
}

/// Optimal local alignment score. Never negative: the empty alignment
/// always scores zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlignScore(i32);

impl AlignScore {
    pub const ZERO: AlignScore = AlignScore(0);

    /// # Panics
    ///
    /// If `value` is negative.
    pub fn new(value: i32) -> Self {
        assert!(value >= 0, "alignment scores are never negative");
        AlignScore(value)
    }

    pub fn value(self) -> i32 {
        self.0
    }
}

impl fmt::Display for AlignScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<AlignScore> for i32 {
    fn from(score: AlignScore) -> i32 {
        score.0
    }
}
