//! Intra-task kernel: one matrix computed by cooperating stripes.
//!
//! The query axis is cut into stripes of `chunk_width` positions and the
//! subject axis into blocks of `block_rows` residues. Stripe `k` can process
//! block `b` once stripe `k - 1` has finished block `b`, so work advances
//! along anti-diagonals `k + b = step`. The only data crossing a stripe
//! boundary is the border column: `H` and the running query-gap value `F` of
//! the last query position of the stripe, one pair per subject row.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::thread;

use super::{cell_max, AlignScore, NEG_INF};
use crate::scoring::{make_profile, GapModel, QueryProfile, ScoringMatrix};

pub const DEFAULT_CHUNK_WIDTH: usize = 64;
pub const DEFAULT_BLOCK_ROWS: usize = 64;

/// `(H, F)` of one subject row at a stripe's right edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct BorderCell {
    h: i32,
    f: i32,
}

/// Left border of the first stripe: the `i = 0` boundary column.
const OUTER_BORDER: BorderCell = BorderCell { h: 0, f: NEG_INF };

impl BorderCell {
    fn pack(self) -> u64 {
        (u64::from(self.h as u32) << 32) | u64::from(self.f as u32)
    }

    fn unpack(bits: u64) -> Self {
        BorderCell { h: (bits >> 32) as u32 as i32, f: bits as u32 as i32 }
    }
}

/// How a matrix is cut into stripes and row blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WavefrontPlan {
    pub chunk_width: usize,
    pub block_rows: usize,
}

impl WavefrontPlan {
    /// # Panics
    ///
    /// If either dimension is zero.
    pub fn new(chunk_width: usize, block_rows: usize) -> Self {
        assert!(chunk_width >= 1, "chunk width must be at least 1");
        assert!(block_rows >= 1, "block rows must be at least 1");
        Self { chunk_width, block_rows }
    }

    pub fn with_chunk_width(chunk_width: usize) -> Self {
        Self::new(chunk_width, DEFAULT_BLOCK_ROWS)
    }

    pub fn stripes(&self, query_len: usize) -> usize {
        query_len.div_ceil(self.chunk_width)
    }

    pub fn blocks(&self, subject_len: usize) -> usize {
        subject_len.div_ceil(self.block_rows)
    }

    /// Number of anti-diagonal steps needed for a `query_len` x
    /// `subject_len` matrix.
    pub fn steps(&self, query_len: usize, subject_len: usize) -> usize {
        let (s, b) = (self.stripes(query_len), self.blocks(subject_len));
        if s == 0 || b == 0 {
            0
        } else {
            s + b - 1
        }
    }
}

impl Default for WavefrontPlan {
    fn default() -> Self {
        Self::new(DEFAULT_CHUNK_WIDTH, DEFAULT_BLOCK_ROWS)
    }
}

/// DP state private to one stripe.
struct Stripe {
    start: usize,
    h: Vec<i32>,
    e: Vec<i32>,
    /// `H[start - 1][j - 1]` for the next row to be computed.
    corner: i32,
    best: i32,
}

impl Stripe {
    fn new(start: usize, end: usize) -> Self {
        Self { start, h: vec![0; end - start], e: vec![NEG_INF; end - start], corner: 0, best: 0 }
    }

    fn advance(
        &mut self,
        profile: &QueryProfile,
        gaps: &GapModel,
        rows: &[u8],
        border_in: &[BorderCell],
        border_out: &mut [BorderCell],
    ) {
        let (open, extend) = (gaps.open(), gaps.extend());
        let end = self.start + self.h.len();
        for ((&s, incoming), outgoing) in rows.iter().zip(border_in).zip(border_out.iter_mut()) {
            let scores = &profile.row(s)[self.start..end];
            let mut diag = self.corner;
            let mut h_up = incoming.h;
            let mut f = incoming.f;
            self.corner = incoming.h;
            for ((h_cell, e_cell), &sub) in self.h.iter_mut().zip(self.e.iter_mut()).zip(scores) {
                let e = cell_max(h_cell.saturating_sub(open), e_cell.saturating_sub(extend));
                f = cell_max(h_up.saturating_sub(open), f.saturating_sub(extend));
                let h = cell_max(cell_max(diag.saturating_add(sub), e), cell_max(f, 0));
                diag = *h_cell;
                *h_cell = h;
                *e_cell = e;
                h_up = h;
                self.best = cell_max(self.best, h);
            }
            *outgoing = BorderCell { h: h_up, f };
        }
    }
}

fn make_stripes(query_len: usize, chunk_width: usize) -> Vec<Stripe> {
    (0..query_len).step_by(chunk_width).map(|start| Stripe::new(start, (start + chunk_width).min(query_len))).collect()
}

/// Score a pair with the striped wavefront schedule on the calling thread.
///
/// # Panics
///
/// If `chunk_width` is zero.
pub fn sw_score_wavefront(
    query: &[u8],
    subject: &[u8],
    matrix: &ScoringMatrix,
    gaps: &GapModel,
    chunk_width: usize,
) -> AlignScore {
    let profile = make_profile(matrix, query).expect("query codes outside the matrix alphabet");
    sw_score_wavefront_profile(&profile, subject, gaps, WavefrontPlan::with_chunk_width(chunk_width))
}

/// Single-worker wavefront over a precomputed profile.
///
/// Steps run in anti-diagonal order. Every stripe has two border buffers;
/// block `b` goes to buffer `b % 2`, so stripe `k + 1` reads block `b` at
/// step `k + b + 1` while stripe `k` is already writing block `b + 1` into
/// the other buffer.
pub fn sw_score_wavefront_profile(
    profile: &QueryProfile,
    subject: &[u8],
    gaps: &GapModel,
    plan: WavefrontPlan,
) -> AlignScore {
    let n = profile.query_len();
    let mut stripes = make_stripes(n, plan.chunk_width);
    let num_blocks = plan.blocks(subject.len());
    let mut borders = vec![[vec![OUTER_BORDER; plan.block_rows], vec![OUTER_BORDER; plan.block_rows]]; stripes.len()];
    let outer = vec![OUTER_BORDER; plan.block_rows];

    for step in 0..plan.steps(n, subject.len()) {
        let first = step.saturating_sub(num_blocks - 1);
        let last = step.min(stripes.len() - 1);
        for k in first..=last {
            let block = step - k;
            let lo = block * plan.block_rows;
            let rows = &subject[lo..(lo + plan.block_rows).min(subject.len())];
            let parity = block % 2;
            let (before, rest) = borders.split_at_mut(k);
            let incoming: &[BorderCell] = if k == 0 { &outer } else { &before[k - 1][parity] };
            stripes[k].advance(profile, gaps, rows, incoming, &mut rest[0][parity]);
        }
    }
    AlignScore::new(stripes.iter().map(|s| s.best).max().unwrap_or(0))
}

/// Border column shared between two neighbouring stripes when they run on
/// different threads. `progress` counts finished blocks, tagged with the
/// stripe that owns the slot so slots can be recycled.
struct SharedBorder {
    cells: Vec<AtomicU64>,
    progress: AtomicUsize,
}

/// Wavefront with stripes spread over `workers` threads.
///
/// Worker `w` owns stripes `w, w + workers, ...` and runs them in order.
/// A stripe waits on its left neighbour's progress counter before each block,
/// which sequences the border hand-off per anti-diagonal step. Border columns
/// live in a ring of `2 * workers` slots; a slot is reused only after its
/// reader has finished. Produces the same score as the single-worker path.
pub fn sw_score_wavefront_parallel(
    profile: &QueryProfile,
    subject: &[u8],
    gaps: &GapModel,
    plan: WavefrontPlan,
    workers: usize,
) -> AlignScore {
    let n = profile.query_len();
    let num_stripes = plan.stripes(n);
    let workers = workers.clamp(1, num_stripes.max(1));
    if workers == 1 || subject.is_empty() {
        return sw_score_wavefront_profile(profile, subject, gaps, plan);
    }

    let num_blocks = plan.blocks(subject.len());
    let ring = 2 * workers;
    let slots: Vec<SharedBorder> = (0..ring)
        .map(|_| SharedBorder {
            cells: (0..subject.len()).map(|_| AtomicU64::new(0)).collect(),
            progress: AtomicUsize::new(0),
        })
        .collect();
    // Stripe k has finished block b once its slot reads >= tag(k) + b + 1.
    let tag = |k: usize| k * (num_blocks + 1);

    let best = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let slots = &slots;
                scope.spawn(move || {
                    let mut best = 0;
                    let mut incoming = vec![OUTER_BORDER; plan.block_rows];
                    let mut outgoing = vec![OUTER_BORDER; plan.block_rows];
                    for k in (w..num_stripes).step_by(workers) {
                        let start = k * plan.chunk_width;
                        let mut stripe = Stripe::new(start, (start + plan.chunk_width).min(n));
                        let out_slot = &slots[k % ring];
                        for block in 0..num_blocks {
                            let lo = block * plan.block_rows;
                            let hi = (lo + plan.block_rows).min(subject.len());
                            let height = hi - lo;
                            if k > 0 {
                                let in_slot = &slots[(k - 1) % ring];
                                let ready = tag(k - 1) + block + 1;
                                while in_slot.progress.load(Ordering::Acquire) < ready {
                                    thread::yield_now();
                                }
                                for (dst, src) in incoming.iter_mut().zip(&in_slot.cells[lo..hi]) {
                                    *dst = BorderCell::unpack(src.load(Ordering::Relaxed));
                                }
                            }
                            stripe.advance(
                                profile,
                                gaps,
                                &subject[lo..hi],
                                &incoming[..height],
                                &mut outgoing[..height],
                            );
                            for (dst, src) in out_slot.cells[lo..hi].iter().zip(&outgoing) {
                                dst.store(src.pack(), Ordering::Relaxed);
                            }
                            out_slot.progress.store(tag(k) + block + 1, Ordering::Release);
                        }
                        best = best.max(stripe.best);
                    }
                    best
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("wavefront worker panicked")).max().unwrap_or(0)
    });
    AlignScore::new(best)
}
