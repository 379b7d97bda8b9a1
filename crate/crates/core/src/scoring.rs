//! Substitution matrices, the affine gap model and per-query score profiles.

use std::fmt::Write as _;
use std::io::{self, BufRead};

use thiserror::Error;

use crate::seqio::{ALPHABET_SIZE, PROTEIN_SYMBOLS};

#[derive(Debug, Error)]
pub enum ScoringError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("matrix format error at line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error("matrix is asymmetric: score({row},{col}) = {forward} but score({col},{row}) = {backward}")]
    Asymmetric { row: char, col: char, forward: i32, backward: i32 },
    #[error("residue code {code} at position {position} is outside the alphabet")]
    Encoding { position: usize, code: u8 },
    #[error("invalid gap model: open {open} must be >= extend {extend} >= 0")]
    GapModel { open: i32, extend: i32 },
}

#[rustfmt::skip]
const BLOSUM62: [[i8; ALPHABET_SIZE]; ALPHABET_SIZE] = [
    //A   R   N   D   C   Q   E   G   H   I   L   K   M   F   P   S   T   W   Y   V   B   Z   X   *
    [ 4, -1, -2, -2,  0, -1, -1,  0, -2, -1, -1, -1, -1, -2, -1,  1,  0, -3, -2,  0, -2, -1,  0, -4], // A
    [-1,  5,  0, -2, -3,  1,  0, -2,  0, -3, -2,  2, -1, -3, -2, -1, -1, -3, -2, -3, -1,  0, -1, -4], // R
    [-2,  0,  6,  1, -3,  0,  0,  0,  1, -3, -3,  0, -2, -3, -2,  1,  0, -4, -2, -3,  3,  0, -1, -4], // N
    [-2, -2,  1,  6, -3,  0,  2, -1, -1, -3, -4, -1, -3, -3, -1,  0, -1, -4, -3, -3,  4,  1, -1, -4], // D
    [ 0, -3, -3, -3,  9, -3, -4, -3, -3, -1, -1, -3, -1, -2, -3, -1, -1, -2, -2, -1, -3, -3, -2, -4], // C
    [-1,  1,  0,  0, -3,  5,  2, -2,  0, -3, -2,  1,  0, -3, -1,  0, -1, -2, -1, -2,  0,  3, -1, -4], // Q
    [-1,  0,  0,  2, -4,  2,  5, -2,  0, -3, -3,  1, -2, -3, -1,  0, -1, -3, -2, -2,  1,  4, -1, -4], // E
    [ 0, -2,  0, -1, -3, -2, -2,  6, -2, -4, -4, -2, -3, -3, -2,  0, -2, -2, -3, -3, -1, -2, -1, -4], // G
    [-2,  0,  1, -1, -3,  0,  0, -2,  8, -3, -3, -1, -2, -1, -2, -1, -2, -2,  2, -3,  0,  0, -1, -4], // H
    [-1, -3, -3, -3, -1, -3, -3, -4, -3,  4,  2, -3,  1,  0, -3, -2, -1, -3, -1,  3, -3, -3, -1, -4], // I
    [-1, -2, -3, -4, -1, -2, -3, -4, -3,  2,  4, -2,  2,  0, -3, -2, -1, -2, -1,  1, -4, -3, -1, -4], // L
    [-1,  2,  0, -1, -3,  1,  1, -2, -1, -3, -2,  5, -1, -3, -1,  0, -1, -3, -2, -2,  0,  1, -1, -4], // K
    [-1, -1, -2, -3, -1,  0, -2, -3, -2,  1,  2, -1,  5,  0, -2, -1, -1, -1, -1,  1, -3, -1, -1, -4], // M
    [-2, -3, -3, -3, -2, -3, -3, -3, -1,  0,  0, -3,  0,  6, -4, -2, -2,  1,  3, -1, -3, -3, -1, -4], // F
    [-1, -2, -2, -1, -3, -1, -1, -2, -2, -3, -3, -1, -2, -4,  7, -1, -1, -4, -3, -2, -2, -1, -2, -4], // P
    [ 1, -1,  1,  0, -1,  0,  0,  0, -1, -2, -2,  0, -1, -2, -1,  4,  1, -3, -2, -2,  0,  0,  0, -4], // S
    [ 0, -1,  0, -1, -1, -1, -1, -2, -2, -1, -1, -1, -1, -2, -1,  1,  5, -2, -2,  0, -1, -1,  0, -4], // T
    [-3, -3, -4, -4, -2, -2, -3, -2, -2, -3, -2, -3, -1,  1, -4, -3, -2, 11,  2, -3, -4, -3, -2, -4], // W
    [-2, -2, -2, -3, -2, -1, -2, -3,  2, -1, -1, -2, -1,  3, -3, -2, -2,  2,  7, -1, -3, -2, -1, -4], // Y
    [ 0, -3, -3, -3, -1, -2, -2, -3, -3,  3,  1, -2,  1, -1, -2, -2,  0, -3, -1,  4, -3, -2, -1, -4], // V
    [-2, -1,  3,  4, -3,  0,  1, -1,  0, -3, -4,  0, -3, -3, -2,  0, -1, -4, -3, -3,  4,  1, -1, -4], // B
    [-1,  0,  0,  1, -3,  3,  4, -2,  0, -3, -3,  1, -1, -3, -1,  0, -1, -3, -2, -2,  1,  4, -1, -4], // Z
    [ 0, -1, -1, -1, -2, -1, -1, -1, -1, -1, -1, -1, -1, -1, -2,  0,  0, -2, -1, -1, -1, -1, -1, -4], // X
    [-4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4,  1], // *
];

/// Pad values for cells a toy matrix file does not mention.
const PAD_DIAGONAL: i32 = 1;
const PAD_OFF_DIAGONAL: i32 = -1;

/// A symmetric substitution table over the 24-symbol protein alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringMatrix {
    name: String,
    scores: [[i32; ALPHABET_SIZE]; ALPHABET_SIZE],
}

impl ScoringMatrix {
    /// Build a matrix from a full table, validating symmetry.
    pub fn from_table(
        name: impl Into<String>,
        scores: [[i32; ALPHABET_SIZE]; ALPHABET_SIZE],
    ) -> Result<Self, ScoringError> {
        check_symmetric(&scores)?;
        Ok(Self { name: name.into(), scores })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        ALPHABET_SIZE
    }

    #[inline]
    pub fn score(&self, a: u8, b: u8) -> i32 {
        self.scores[a as usize][b as usize]
    }

    pub fn row(&self, a: u8) -> &[i32; ALPHABET_SIZE] {
        &self.scores[a as usize]
    }

    pub fn table(&self) -> &[[i32; ALPHABET_SIZE]; ALPHABET_SIZE] {
        &self.scores
    }

    pub fn max_score(&self) -> i32 {
        self.scores.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn min_score(&self) -> i32 {
        self.scores.iter().flatten().copied().min().unwrap_or(0)
    }

    /// Render in NCBI text layout; [`parse_matrix`] reads it back.
    pub fn to_ncbi_string(&self) -> String {
        let mut out = format!("# {}\n ", self.name);
        for &s in PROTEIN_SYMBOLS {
            write!(out, "  {}", s as char).unwrap();
        }
        out.push('\n');
        for (i, &s) in PROTEIN_SYMBOLS.iter().enumerate() {
            out.push(s as char);
            for v in &self.scores[i] {
                write!(out, " {v:>2}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn check_symmetric(scores: &[[i32; ALPHABET_SIZE]; ALPHABET_SIZE]) -> Result<(), ScoringError> {
    for a in 0..ALPHABET_SIZE {
        for b in (a + 1)..ALPHABET_SIZE {
            if scores[a][b] != scores[b][a] {
                return Err(ScoringError::Asymmetric {
                    row: PROTEIN_SYMBOLS[a] as char,
                    col: PROTEIN_SYMBOLS[b] as char,
                    forward: scores[a][b],
                    backward: scores[b][a],
                });
            }
        }
    }
    Ok(())
}

/// The NCBI BLOSUM62 table.
pub fn builtin_blosum62() -> ScoringMatrix {
    let mut scores = [[0; ALPHABET_SIZE]; ALPHABET_SIZE];
    for (dst, src) in scores.iter_mut().zip(BLOSUM62.iter()) {
        for (d, &s) in dst.iter_mut().zip(src.iter()) {
            *d = i32::from(s);
        }
    }
    ScoringMatrix { name: "BLOSUM62".into(), scores }
}

/// Look up a built-in matrix by (case-insensitive) name.
pub fn builtin_matrix(name: &str) -> Option<ScoringMatrix> {
    name.eq_ignore_ascii_case("BLOSUM62").then(builtin_blosum62)
}

fn symbol_index(c: char) -> Option<usize> {
    let upper = c.to_ascii_uppercase() as u32;
    PROTEIN_SYMBOLS.iter().position(|&s| u32::from(s) == upper)
}

/// Parse an NCBI-style matrix: `#` comments, one header row of column
/// symbols, then one labelled row per symbol.
///
/// Symbols of the 24-letter alphabet that the file does not mention are
/// padded with +1 on the diagonal and -1 elsewhere.
pub fn parse_matrix<R: BufRead>(input: R, name: &str) -> Result<ScoringMatrix, ScoringError> {
    let mut columns: Option<Vec<usize>> = None;
    let mut seen_rows = Vec::new();
    let mut cells: Vec<Vec<Option<i32>>> = vec![vec![None; ALPHABET_SIZE]; ALPHABET_SIZE];

    for (line_idx, line) in input.lines().enumerate() {
        let line = line?;
        let line_no = line_idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fmt_err = |reason: String| ScoringError::Format { line: line_no, reason };

        let Some(cols) = columns.as_ref() else {
            let mut cols = Vec::new();
            for tok in trimmed.split_whitespace() {
                let mut chars = tok.chars();
                let (Some(c), None) = (chars.next(), chars.next()) else {
                    return Err(fmt_err(format!("column label {tok:?} is not a single symbol")));
                };
                let idx = symbol_index(c).ok_or_else(|| fmt_err(format!("unknown column symbol {c:?}")))?;
                if cols.contains(&idx) {
                    return Err(fmt_err(format!("duplicate column symbol {c:?}")));
                }
                cols.push(idx);
            }
            columns = Some(cols);
            continue;
        };

        let mut tokens = trimmed.split_whitespace();
        let label = tokens.next().unwrap();
        let mut chars = label.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(fmt_err(format!("row label {label:?} is not a single symbol")));
        };
        let row = symbol_index(c).ok_or_else(|| fmt_err(format!("unknown row symbol {c:?}")))?;
        if seen_rows.contains(&row) {
            return Err(fmt_err(format!("duplicate row {c:?}")));
        }
        let values: Vec<&str> = tokens.collect();
        if values.len() != cols.len() {
            return Err(fmt_err(format!("row {c:?} has {} values, expected {}", values.len(), cols.len())));
        }
        for (&col, tok) in cols.iter().zip(values) {
            let v: i32 = tok.parse().map_err(|_| {
                fmt_err(format!("row {c:?} column {:?}: {tok:?} is not an integer", PROTEIN_SYMBOLS[col] as char))
            })?;
            cells[row][col] = Some(v);
        }
        seen_rows.push(row);
    }

    let Some(cols) = columns else {
        return Err(ScoringError::Format { line: 0, reason: "no column header row".into() });
    };
    let mut sorted_rows = seen_rows.clone();
    sorted_rows.sort_unstable();
    let mut sorted_cols = cols.clone();
    sorted_cols.sort_unstable();
    if sorted_rows != sorted_cols {
        let missing: String =
            sorted_cols.iter().filter(|c| !sorted_rows.contains(c)).map(|&c| PROTEIN_SYMBOLS[c] as char).collect();
        let extra: String =
            sorted_rows.iter().filter(|r| !sorted_cols.contains(r)).map(|&r| PROTEIN_SYMBOLS[r] as char).collect();
        return Err(ScoringError::Format {
            line: 0,
            reason: format!("table is not square: rows missing for [{missing}], rows without a column [{extra}]"),
        });
    }

    let mut scores = [[0; ALPHABET_SIZE]; ALPHABET_SIZE];
    for (a, row) in scores.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = cells[a][b].unwrap_or(if a == b { PAD_DIAGONAL } else { PAD_OFF_DIAGONAL });
        }
    }
    ScoringMatrix::from_table(name, scores)
}

/// Parse a matrix from a string.
pub fn parse_matrix_str(text: &str, name: &str) -> Result<ScoringMatrix, ScoringError> {
    parse_matrix(text.as_bytes(), name)
}

/// Affine gap costs stored as positive magnitudes. A gap of length `L`
/// costs `open + (L - 1) * extend`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GapModel {
    open: i32,
    extend: i32,
}

impl GapModel {
    pub fn new(open: i32, extend: i32) -> Result<Self, ScoringError> {
        if extend < 0 || open < extend {
            return Err(ScoringError::GapModel { open, extend });
        }
        Ok(Self { open, extend })
    }

    pub fn open(&self) -> i32 {
        self.open
    }

    pub fn extend(&self) -> i32 {
        self.extend
    }

    /// Total cost of a gap of `len` residues.
    pub fn cost(&self, len: usize) -> i32 {
        if len == 0 {
            0
        } else {
            self.open + (len as i32 - 1) * self.extend
        }
    }
}

impl Default for GapModel {
    /// 10 to open, 2 to extend.
    fn default() -> Self {
        Self { open: 10, extend: 2 }
    }
}

/// Substitution scores of every alphabet symbol against each query position.
///
/// `row(s)[j] == matrix.score(s, query[j])`, so a kernel walking a subject
/// only needs the subject residue to find the whole column of scores.
#[derive(Debug, Clone)]
pub struct QueryProfile {
    query: Vec<u8>,
    scores: Vec<i32>,
    narrow: Option<Vec<i16>>,
}

/// Sentinel score used for padded positions in the 16-bit profile.
pub(crate) const PAD_SCORE: i16 = i16::MIN / 2;

impl QueryProfile {
    pub fn query(&self) -> &[u8] {
        &self.query
    }

    pub fn query_len(&self) -> usize {
        self.query.len()
    }

    #[inline]
    pub fn row(&self, symbol: u8) -> &[i32] {
        let n = self.query.len();
        let start = symbol as usize * n;
        &self.scores[start..start + n]
    }

    /// 16-bit substitution row of a subject symbol against every alphabet
    /// symbol, present when every matrix score fits comfortably in `i16`.
    /// Symbol `ALPHABET_SIZE` is padding and scores [`PAD_SCORE`].
    pub(crate) fn narrow_row(&self, symbol: usize) -> Option<&[i16]> {
        self.narrow.as_deref().map(|rows| &rows[symbol * ALPHABET_SIZE..(symbol + 1) * ALPHABET_SIZE])
    }

    pub(crate) fn has_narrow(&self) -> bool {
        self.narrow.is_some()
    }
}

/// Precompute the score profile of `query` against `matrix`.
pub fn make_profile(matrix: &ScoringMatrix, query: &[u8]) -> Result<QueryProfile, ScoringError> {
    if let Some((position, &code)) = query.iter().enumerate().find(|(_, &c)| c as usize >= ALPHABET_SIZE) {
        return Err(ScoringError::Encoding { position, code });
    }
    let n = query.len();
    let mut scores = Vec::with_capacity(ALPHABET_SIZE * n);
    for s in 0..ALPHABET_SIZE as u8 {
        scores.extend(query.iter().map(|&q| matrix.score(s, q)));
    }

    let limit = i32::from(i16::MAX) / 4;
    let narrow = (matrix.max_score() <= limit && matrix.min_score() >= -limit).then(|| {
        let mut rows: Vec<i16> = matrix.table().iter().flatten().map(|&v| v as i16).collect();
        rows.extend(std::iter::repeat_n(PAD_SCORE, ALPHABET_SIZE));
        rows
    });

    Ok(QueryProfile { query: query.to_vec(), scores, narrow })
}
