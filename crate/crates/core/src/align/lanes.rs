//! Inter-task kernel: one query profile against `lane_width` subjects at once.
//!
//! Each lane owns one subject and its own DP state; lanes never read each
//! other's cells. Arithmetic is 16-bit saturating. A lane whose running
//! maximum hits `i16::MAX` may have been clipped, so it is rescored with the
//! 32-bit profile kernel.

use super::scalar::sw_score_profile;
use super::{cell_max, AlignScore};
use crate::scoring::{GapModel, QueryProfile};
use crate::seqio::ALPHABET_SIZE;

const NEG16: i16 = i16::MIN / 2;
const MAX_NARROW_GAP: i32 = i16::MAX as i32 / 4;
const PAD_SYMBOL: usize = ALPHABET_SIZE;

/// Subjects scored together. Lanes past `subjects.len()` are padding and
/// score zero.
#[derive(Debug, Clone)]
pub struct LaneBatch<'a> {
    lane_width: usize,
    subjects: Vec<&'a [u8]>,
}

impl<'a> LaneBatch<'a> {
    /// # Panics
    ///
    /// If `lane_width` is zero or there are more subjects than lanes.
    pub fn new(lane_width: usize, subjects: Vec<&'a [u8]>) -> Self {
        assert!(lane_width >= 1, "lane width must be at least 1");
        assert!(subjects.len() <= lane_width, "{} subjects do not fit in {lane_width} lanes", subjects.len());
        Self { lane_width, subjects }
    }

    pub fn lane_width(&self) -> usize {
        self.lane_width
    }

    pub fn subjects(&self) -> &[&'a [u8]] {
        &self.subjects
    }

    pub fn occupied(&self) -> usize {
        self.subjects.len()
    }

    fn subject(&self, lane: usize) -> &'a [u8] {
        self.subjects.get(lane).copied().unwrap_or(&[])
    }
}

/// Score every lane of `batch` against the profiled query. The result has
/// `lane_width` entries and equals [`super::sw_score_scalar`] lane by lane.
pub fn sw_score_batch(profile: &QueryProfile, batch: &LaneBatch<'_>, gaps: &GapModel) -> Vec<AlignScore> {
    let width = batch.lane_width();
    let narrow_ok = profile.has_narrow() && gaps.open() <= MAX_NARROW_GAP;
    if !narrow_ok {
        return (0..width).map(|l| sw_score_profile(profile, batch.subject(l), gaps)).collect();
    }

    let best = narrow_lanes(profile, batch, gaps);
    best.iter()
        .enumerate()
        .map(|(lane, &b)| {
            if b == i16::MAX {
                sw_score_profile(profile, batch.subject(lane), gaps)
            } else {
                AlignScore::new(i32::from(b))
            }
        })
        .collect()
}

fn narrow_lanes(profile: &QueryProfile, batch: &LaneBatch<'_>, gaps: &GapModel) -> Vec<i16> {
    let subjects: Vec<&[u8]> = (0..batch.lane_width()).map(|l| batch.subject(l)).collect();
    let mut best = Vec::with_capacity(subjects.len());
    for group in subjects.chunks(GROUP) {
        best.extend(narrow_group::<GROUP>(profile, group, gaps));
    }
    best
}

/// Lanes advanced together by one pass of the inner loop. Narrower batches
/// leave the remaining lanes of the group idle.
const GROUP: usize = 16;

/// Up to `G` lanes with state laid out `[query position][lane]`. Lanes past
/// `subjects.len()` run on padding and are dropped from the result.
fn narrow_group<const G: usize>(profile: &QueryProfile, subjects: &[&[u8]], gaps: &GapModel) -> Vec<i16> {
    let query = profile.query();
    let n = query.len();
    let open = gaps.open() as i16;
    let extend = gaps.extend().min(MAX_NARROW_GAP) as i16;
    let table: Vec<&[i16]> = (0..=PAD_SYMBOL).map(|s| profile.narrow_row(s).unwrap()).collect();
    let longest = subjects.iter().map(|s| s.len()).max().unwrap_or(0);

    let mut h = vec![[0i16; G]; n];
    let mut e = vec![[NEG16; G]; n];
    let mut best = [0i16; G];
    // Scores of the current subject column against every query symbol.
    let mut column = [[0i16; G]; ALPHABET_SIZE];

    for t in 0..longest {
        for lane in 0..G {
            let symbol = subjects.get(lane).and_then(|s| s.get(t)).map_or(PAD_SYMBOL, |&c| c as usize);
            for (q, scores) in column.iter_mut().enumerate() {
                scores[lane] = table[symbol][q];
            }
        }

        let mut diag = [0i16; G];
        let mut h_up = [0i16; G];
        let mut f = [NEG16; G];
        for ((h_cell, e_cell), &q) in h.iter_mut().zip(e.iter_mut()).zip(query) {
            let sub = &column[q as usize];
            for lane in 0..G {
                let ev = cell_max(h_cell[lane].saturating_sub(open), e_cell[lane].saturating_sub(extend));
                let fv = cell_max(h_up[lane].saturating_sub(open), f[lane].saturating_sub(extend));
                let hv = cell_max(cell_max(diag[lane].saturating_add(sub[lane]), ev), cell_max(fv, 0));
                diag[lane] = h_cell[lane];
                h_cell[lane] = hv;
                e_cell[lane] = ev;
                h_up[lane] = hv;
                f[lane] = fv;
                best[lane] = cell_max(best[lane], hv);
            }
        }
    }
    best[..subjects.len()].to_vec()
}
