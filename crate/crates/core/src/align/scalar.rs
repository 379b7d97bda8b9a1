use super::{cell_max, AlignScore, NEG_INF};
use crate::scoring::{GapModel, QueryProfile, ScoringMatrix};

/// Linear-space reference kernel.
///
/// `h_row[i]`/`e_row[i]` hold `H[i][j-1]`/`E[i][j-1]` while column `j` is
/// computed; `F` is carried down the column in a single cell.
pub fn sw_score_scalar(query: &[u8], subject: &[u8], matrix: &ScoringMatrix, gaps: &GapModel) -> AlignScore {
    let n = query.len();
    let (open, extend) = (gaps.open(), gaps.extend());
    let mut h_row = vec![0i32; n + 1];
    let mut e_row = vec![NEG_INF; n + 1];
    let mut best = 0;

    for &s in subject {
        let sub_row = matrix.row(s);
        let mut diag = 0i32;
        let mut h_up = 0i32;
        let mut f = NEG_INF;
        for i in 1..=n {
            let e = cell_max(h_row[i].saturating_sub(open), e_row[i].saturating_sub(extend));
            f = cell_max(h_up.saturating_sub(open), f.saturating_sub(extend));
            let h = cell_max(cell_max(diag.saturating_add(sub_row[query[i - 1] as usize]), e), cell_max(f, 0));
            diag = h_row[i];
            h_row[i] = h;
            e_row[i] = e;
            h_up = h;
            best = cell_max(best, h);
        }
    }
    AlignScore::new(best)
}

/// The reference recurrence driven by a precomputed query profile. Used by
/// the lane kernel to rescore lanes that saturated.
pub fn sw_score_profile(profile: &QueryProfile, subject: &[u8], gaps: &GapModel) -> AlignScore {
    let n = profile.query_len();
    let (open, extend) = (gaps.open(), gaps.extend());
    let mut h_row = vec![0i32; n];
    let mut e_row = vec![NEG_INF; n];
    let mut best = 0;

    for &s in subject {
        let scores = profile.row(s);
        let mut diag = 0i32;
        let mut h_up = 0i32;
        let mut f = NEG_INF;
        for ((h_cell, e_cell), &sub) in h_row.iter_mut().zip(e_row.iter_mut()).zip(scores) {
            let e = cell_max(h_cell.saturating_sub(open), e_cell.saturating_sub(extend));
            f = cell_max(h_up.saturating_sub(open), f.saturating_sub(extend));
            let h = cell_max(cell_max(diag.saturating_add(sub), e), cell_max(f, 0));
            diag = *h_cell;
            *h_cell = h;
            *e_cell = e;
            h_up = h;
            best = cell_max(best, h);
        }
    }
    AlignScore::new(best)
}
