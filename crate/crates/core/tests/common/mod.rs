#![allow(dead_code, clippy::too_many_arguments, clippy::needless_range_loop)]

use std::collections::HashMap;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swsearch::scoring::ScoringMatrix;
use swsearch::seqio::{ALPHABET_SIZE, PROTEIN_SYMBOLS};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// Affine cost of a gap of `len` residues.
pub fn gap_cost(len: usize, open: i32, extend: i32) -> i32 {
    if len == 0 {
        0
    } else {
        open + (len as i32 - 1) * extend
    }
}

/// Best local alignment score by enumerating every chain of aligned residue
/// pairs `(i1, j1) < (i2, j2) < ...`. Residues skipped between two aligned
/// pairs are gaps; skipped query and subject residues form two separate gaps.
/// The empty alignment scores 0.
///
/// `score(i, j)` is the substitution score of query `i` against subject `j`
/// for `i < n`, `j < m`; `gaps[d]` the cost of a gap of `d` residues.
pub fn chain_enumerator<F: Fn(usize, usize) -> i32>(n: usize, m: usize, score: &F, gaps: &[i32]) -> i32 {
    fn extend_chain<F: Fn(usize, usize) -> i32>(
        n: usize,
        m: usize,
        score: &F,
        gaps: &[i32],
        (i, j): (usize, usize),
        acc: i32,
        best: &mut i32,
    ) {
        for i2 in i + 1..n {
            for j2 in j + 1..m {
                let v = acc + score(i2, j2) - gaps[i2 - i - 1] - gaps[j2 - j - 1];
                *best = (*best).max(v);
                extend_chain(n, m, score, gaps, (i2, j2), v, best);
            }
        }
    }

    let mut best = 0;
    for i in 0..n {
        for j in 0..m {
            let v = score(i, j);
            best = best.max(v);
            extend_chain(n, m, score, gaps, (i, j), v, &mut best);
        }
    }
    best
}

pub fn gap_table(max_len: usize, open: i32, extend: i32) -> Vec<i32> {
    (0..=max_len).map(|d| gap_cost(d, open, extend)).collect()
}

pub fn brute_force_local(query: &[u8], subject: &[u8], matrix: &ScoringMatrix, open: i32, extend: i32) -> i32 {
    let score = |i: usize, j: usize| matrix.score(query[i], subject[j]);
    chain_enumerator(query.len(), subject.len(), &score, &gap_table(query.len().max(subject.len()), open, extend))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Pair,
    QueryGap,
    SubjectGap,
}

/// Best local alignment score by enumerating every edit script between every
/// pair of substrings. Exponential; only for very short sequences.
pub fn edit_script_enumerator(query: &[u8], subject: &[u8], matrix: &ScoringMatrix, open: i32, extend: i32) -> i32 {
    fn walk(
        q: &[u8],
        s: &[u8],
        matrix: &ScoringMatrix,
        open: i32,
        extend: i32,
        prev: Option<Step>,
        acc: i32,
        best: &mut i32,
    ) {
        if q.is_empty() && s.is_empty() {
            *best = (*best).max(acc);
            return;
        }
        if !q.is_empty() && !s.is_empty() {
            walk(&q[1..], &s[1..], matrix, open, extend, Some(Step::Pair), acc + matrix.score(q[0], s[0]), best);
        }
        if !q.is_empty() {
            let cost = if prev == Some(Step::SubjectGap) { extend } else { open };
            walk(&q[1..], s, matrix, open, extend, Some(Step::SubjectGap), acc - cost, best);
        }
        if !s.is_empty() {
            let cost = if prev == Some(Step::QueryGap) { extend } else { open };
            walk(q, &s[1..], matrix, open, extend, Some(Step::QueryGap), acc - cost, best);
        }
    }

    let mut best = 0;
    for qa in 0..=query.len() {
        for qb in qa..=query.len() {
            for sa in 0..=subject.len() {
                for sb in sa..=subject.len() {
                    walk(&query[qa..qb], &subject[sa..sb], matrix, open, extend, None, 0, &mut best);
                }
            }
        }
    }
    best
}

/// A symmetric matrix whose scores among the first `symbols` codes are drawn
/// from `lo..=hi`; every other entry is -1 (0 on the diagonal).
pub fn random_matrix(rng: &mut impl Rng, symbols: usize, lo: i32, hi: i32) -> ScoringMatrix {
    let mut table = [[-1; ALPHABET_SIZE]; ALPHABET_SIZE];
    for (i, row) in table.iter_mut().enumerate() {
        row[i] = 0;
    }
    for a in 0..symbols {
        for b in a..symbols {
            let v = rng.random_range(lo..=hi);
            table[a][b] = v;
            table[b][a] = v;
        }
    }
    ScoringMatrix::from_table("random", table).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every sequence over `symbols` codes with length `0..=max_len`.
pub fn all_sequences(symbols: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for c in 0..symbols {
                let mut s: Vec<u8> = seq.clone();
                s.push(c);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Reads an NCBI-style matrix into a letter-pair map, independently of the
/// library parser.
pub fn read_ncbi_pairs(text: &str) -> HashMap<(char, char), i32> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let columns: Vec<char> = lines.next().unwrap().split_whitespace().map(|t| t.chars().next().unwrap()).collect();
    let mut pairs = HashMap::new();
    for line in lines {
        let mut fields = line.split_whitespace();
        let row = fields.next().unwrap().chars().next().unwrap();
        for (col, value) in columns.iter().zip(fields) {
            pairs.insert((row, *col), value.parse().unwrap());
        }
    }
    pairs
}

pub fn symbol(code: usize) -> char {
    PROTEIN_SYMBOLS[code] as char
}
