use std::ops::Range;

use super::{sw_score_scalar, AlignScore, NEG_INF};
use crate::scoring::{GapModel, ScoringMatrix};

/// Traceback keeps one provenance byte per DP cell.
pub const TRACE_BYTES_PER_CELL: usize = 1;

const FROM_ZERO: u8 = 0;
const FROM_DIAG: u8 = 1;
const FROM_E: u8 = 2;
const FROM_F: u8 = 3;
const H_MASK: u8 = 0b11;
const E_EXTENDS: u8 = 0b100;
const F_EXTENDS: u8 = 0b1000;

/// One column of an alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlignOp {
    /// Query and subject residues are identical.
    Match,
    /// Query and subject residues differ.
    Substitute,
    /// Query residue against a gap in the subject.
    Insert,
    /// Subject residue against a gap in the query.
    Delete,
}

impl AlignOp {
    fn consumes(self) -> (usize, usize) {
        match self {
            AlignOp::Match | AlignOp::Substitute => (1, 1),
            AlignOp::Insert => (1, 0),
            AlignOp::Delete => (0, 1),
        }
    }
}

/// A local alignment between `query[query_range]` and
/// `subject[subject_range]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pub query_range: Range<usize>,
    pub subject_range: Range<usize>,
    pub operations: Vec<AlignOp>,
    pub score: AlignScore,
    /// The DP matrix did not fit the memory cap; only the score is known.
    pub capped: bool,
}

impl Alignment {
    /// Score of the edit script under `matrix` and `gaps`. `None` if the
    /// script does not fit the ranges or the sequences.
    pub fn rescore(&self, query: &[u8], subject: &[u8], matrix: &ScoringMatrix, gaps: &GapModel) -> Option<i32> {
        if self.query_range.end > query.len() || self.subject_range.end > subject.len() {
            return None;
        }
        let (mut i, mut j) = (self.query_range.start, self.subject_range.start);
        let mut total = 0i32;
        let mut previous: Option<AlignOp> = None;
        for &op in &self.operations {
            match op {
                AlignOp::Match | AlignOp::Substitute => {
                    let (q, s) = (*query.get(i)?, *subject.get(j)?);
                    if (q == s) != (op == AlignOp::Match) {
                        return None;
                    }
                    total += matrix.score(q, s);
                }
                AlignOp::Insert | AlignOp::Delete => {
                    total -= if previous == Some(op) { gaps.extend() } else { gaps.open() };
                }
            }
            let (di, dj) = op.consumes();
            i += di;
            j += dj;
            previous = Some(op);
        }
        (i == self.query_range.end && j == self.subject_range.end).then_some(total)
    }

    pub fn query_len(&self) -> usize {
        self.query_range.len()
    }

    pub fn subject_len(&self) -> usize {
        self.subject_range.len()
    }

    pub fn identities(&self) -> usize {
        self.operations.iter().filter(|&&op| op == AlignOp::Match).count()
    }
}

/// Optimal local alignment with its edit script.
///
/// The full provenance matrix needs `(|query| + 1) * (|subject| + 1)` bytes.
/// When that exceeds `memory_cap` the result carries only the score and has
/// `capped` set.
///
/// Ties in `H` are resolved in the order zero, diagonal, query gap, subject
/// gap; the traceback starts from the first maximal cell in subject-major
/// order.
pub fn sw_align_traceback(
    query: &[u8],
    subject: &[u8],
    matrix: &ScoringMatrix,
    gaps: &GapModel,
    memory_cap: usize,
) -> Alignment {
    let (n, m) = (query.len(), subject.len());
    let cells = (n + 1).checked_mul(m + 1);
    let fits = cells.and_then(|c| c.checked_mul(TRACE_BYTES_PER_CELL)).is_some_and(|bytes| bytes <= memory_cap);
    if !fits {
        return Alignment {
            query_range: 0..0,
            subject_range: 0..0,
            operations: Vec::new(),
            score: sw_score_scalar(query, subject, matrix, gaps),
            capped: true,
        };
    }

    let stride = n + 1;
    let mut trace = vec![FROM_ZERO; stride * (m + 1)];
    let (open, extend) = (gaps.open(), gaps.extend());
    let mut h_row = vec![0i32; n + 1];
    let mut e_row = vec![NEG_INF; n + 1];
    let (mut best, mut best_i, mut best_j) = (0, 0, 0);

    for j in 1..=m {
        let sub_row = matrix.row(subject[j - 1]);
        let mut diag = 0i32;
        let mut h_up = 0i32;
        let mut f = NEG_INF;
        let cells = &mut trace[j * stride..(j + 1) * stride];
        for i in 1..=n {
            let mut flags = 0;

            let e_open = h_row[i].saturating_sub(open);
            let e_ext = e_row[i].saturating_sub(extend);
            let e = if e_ext > e_open {
                flags |= E_EXTENDS;
                e_ext
            } else {
                e_open
            };

            let f_open = h_up.saturating_sub(open);
            let f_ext = f.saturating_sub(extend);
            f = if f_ext > f_open {
                flags |= F_EXTENDS;
                f_ext
            } else {
                f_open
            };

            let mut h = 0;
            let mut source = FROM_ZERO;
            let d = diag.saturating_add(sub_row[query[i - 1] as usize]);
            if d > h {
                h = d;
                source = FROM_DIAG;
            }
            if e > h {
                h = e;
                source = FROM_E;
            }
            if f > h {
                h = f;
                source = FROM_F;
            }
            cells[i] = flags | source;

            diag = h_row[i];
            h_row[i] = h;
            e_row[i] = e;
            h_up = h;
            if h > best {
                (best, best_i, best_j) = (h, i, j);
            }
        }
    }

    #[derive(Clone, Copy)]
    enum Layer {
        H,
        E,
        F,
    }

    let mut ops = Vec::new();
    let (mut i, mut j) = (best_i, best_j);
    let mut layer = Layer::H;
    loop {
        let cell = trace[j * stride + i];
        match layer {
            Layer::H => match cell & H_MASK {
                FROM_DIAG => {
                    let op = if query[i - 1] == subject[j - 1] { AlignOp::Match } else { AlignOp::Substitute };
                    ops.push(op);
                    i -= 1;
                    j -= 1;
                }
                FROM_E => layer = Layer::E,
                FROM_F => layer = Layer::F,
                _ => break,
            },
            Layer::E => {
                ops.push(AlignOp::Delete);
                layer = if cell & E_EXTENDS != 0 { Layer::E } else { Layer::H };
                j -= 1;
            }
            Layer::F => {
                ops.push(AlignOp::Insert);
                layer = if cell & F_EXTENDS != 0 { Layer::F } else { Layer::H };
                i -= 1;
            }
        }
    }
    ops.reverse();

    Alignment {
        query_range: i..best_i,
        subject_range: j..best_j,
        operations: ops,
        score: AlignScore::new(best),
        capped: false,
    }
}
