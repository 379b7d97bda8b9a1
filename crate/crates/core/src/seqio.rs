//! FASTA ingestion, residue encoding and the in-memory sequence database.
//!
//! Residues are mapped onto the 24-symbol protein alphabet in NCBI matrix
//! order (`ARNDCQEGHILKMFPSTWYVBZX*`). Anything outside the alphabet,
//! including gap characters, is coerced to `X`.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

/// Canonical symbol order shared with NCBI substitution matrix files.
pub const PROTEIN_SYMBOLS: &[u8; 24] = b"ARNDCQEGHILKMFPSTWYVBZX*";

/// Number of symbols in the protein alphabet.
pub const ALPHABET_SIZE: usize = PROTEIN_SYMBOLS.len();

#[derive(Debug, Error)]
pub enum SeqIoError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed FASTA at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// One FASTA entry as read from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub header: String,
    pub residues: String,
}

impl SequenceRecord {
    /// Zero-length records are kept in the database; this flags them.
    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

/// Residue to index lookup for a fixed alphabet.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Vec<u8>,
    lookup: [u8; 256],
    unknown: u8,
}

impl Alphabet {
    /// The 24-symbol protein alphabet; unknown characters map to `X`.
    pub fn protein() -> Self {
        let unknown = PROTEIN_SYMBOLS.iter().position(|&c| c == b'X').unwrap() as u8;
        let mut lookup = [unknown; 256];
        for (i, &c) in PROTEIN_SYMBOLS.iter().enumerate() {
            lookup[c as usize] = i as u8;
            lookup[c.to_ascii_lowercase() as usize] = i as u8;
        }
        Self { symbols: PROTEIN_SYMBOLS.to_vec(), lookup, unknown }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Index of `residue`, or `None` when the character is not part of the
    /// alphabet (case-insensitive).
    pub fn index_of(&self, residue: u8) -> Option<u8> {
        let code = self.lookup[residue as usize];
        if code != self.unknown || residue.eq_ignore_ascii_case(&b'X') {
            Some(code)
        } else {
            None
        }
    }

    /// Index of the unknown symbol `X`.
    pub fn unknown_code(&self) -> u8 {
        self.unknown
    }

    #[inline]
    pub fn encode_byte(&self, residue: u8) -> u8 {
        self.lookup[residue as usize]
    }

    pub fn decode(&self, code: u8) -> char {
        self.symbols[code as usize] as char
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::protein()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Alphabet").field("symbols", &String::from_utf8_lossy(&self.symbols)).finish()
    }
}

/// A sequence mapped to alphabet indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedSequence {
    pub codes: Vec<u8>,
    pub source_header: String,
}

impl EncodedSequence {
    pub fn new(source_header: impl Into<String>, codes: Vec<u8>) -> Self {
        Self { codes, source_header: source_header.into() }
    }

    /// Encode a raw residue string under the protein alphabet, discarding
    /// the unknown-residue count.
    pub fn from_residues(source_header: impl Into<String>, residues: &str) -> Self {
        let record = SequenceRecord { header: source_header.into(), residues: residues.to_string() };
        encode_sequence(&record, &Alphabet::protein()).0
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[u8] {
        &self.codes
    }

    pub fn to_residues(&self, alphabet: &Alphabet) -> String {
        self.codes.iter().map(|&c| alphabet.decode(c)).collect()
    }
}

impl AsRef<[u8]> for EncodedSequence {
    fn as_ref(&self) -> &[u8] {
        &self.codes
    }
}

/// Parse FASTA text. Residue lines are concatenated with all whitespace
/// removed; LF and CRLF line endings are both accepted.
pub fn parse_fasta<R: BufRead>(mut input: R) -> Result<Vec<SequenceRecord>, SeqIoError> {
    let mut records = Vec::new();
    let mut current: Option<SequenceRecord> = None;
    let mut line = String::new();
    let mut line_no = 0;

    loop {
        line.clear();
        if input.read_line(&mut line)? == 0 {
            break;
        }
        line_no += 1;
        let text = line.trim_end_matches(['\n', '\r']);

        if let Some(header) = text.strip_prefix('>') {
            let header = header.trim();
            if header.is_empty() {
                return Err(SeqIoError::Malformed { line: line_no, reason: "empty header".into() });
            }
            records.extend(current.take());
            current = Some(SequenceRecord { header: header.to_string(), residues: String::new() });
        } else if let Some(record) = current.as_mut() {
            record.residues.extend(text.chars().filter(|c| !c.is_whitespace()));
        } else if !text.trim().is_empty() {
            return Err(SeqIoError::Malformed { line: line_no, reason: "expected a '>' header line".into() });
        }
    }
    records.extend(current);
    Ok(records)
}

/// Map each residue of `record` onto `alphabet`. Returns the encoded sequence
/// and the number of residues that were coerced to the unknown symbol.
pub fn encode_sequence(record: &SequenceRecord, alphabet: &Alphabet) -> (EncodedSequence, usize) {
    let mut unknown = 0;
    let codes = record
        .residues
        .bytes()
        .map(|b| {
            if alphabet.index_of(b).is_none() {
                unknown += 1;
            }
            alphabet.encode_byte(b)
        })
        .collect();
    (EncodedSequence::new(record.header.clone(), codes), unknown)
}

/// Immutable, indexed collection of encoded sequences.
///
/// Residue codes of all sequences live in one contiguous buffer; headers are
/// kept in a separate list so the search loop only touches code memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDatabase {
    residues: Vec<u8>,
    offsets: Vec<usize>,
    headers: Vec<String>,
    total_residues: usize,
    max_length: usize,
    unknown_residues: usize,
    empty_records: usize,
}

impl SequenceDatabase {
    pub fn new() -> Self {
        Self {
            residues: Vec::new(),
            offsets: vec![0],
            headers: Vec::new(),
            total_residues: 0,
            max_length: 0,
            unknown_residues: 0,
            empty_records: 0,
        }
    }

    pub fn from_sequences<I>(sequences: I) -> Self
    where
        I: IntoIterator<Item = EncodedSequence>,
    {
        let mut db = Self::new();
        for seq in sequences {
            db.push(seq);
        }
        db
    }

    /// Parse and encode every record of a FASTA stream.
    pub fn from_fasta<R: BufRead>(input: R) -> Result<Self, SeqIoError> {
        let alphabet = Alphabet::protein();
        let mut db = Self::new();
        for record in parse_fasta(input)? {
            let (encoded, unknown) = encode_sequence(&record, &alphabet);
            db.unknown_residues += unknown;
            db.push(encoded);
        }
        Ok(db)
    }

    pub fn push(&mut self, seq: EncodedSequence) {
        let len = seq.codes.len();
        if len == 0 {
            self.empty_records += 1;
        }
        self.residues.extend_from_slice(&seq.codes);
        self.offsets.push(self.residues.len());
        self.headers.push(seq.source_header);
        self.total_residues += len;
        self.max_length = self.max_length.max(len);
    }

    pub fn num_sequences(&self) -> usize {
        self.headers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.headers.is_empty()
    }

    pub fn total_residues(&self) -> usize {
        self.total_residues
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Residues that were not in the alphabet and were coerced to `X`.
    pub fn unknown_residues(&self) -> usize {
        self.unknown_residues
    }

    /// Number of zero-length records.
    pub fn empty_records(&self) -> usize {
        self.empty_records
    }

    /// Residue codes of sequence `index`.
    #[inline]
    pub fn codes(&self, index: usize) -> &[u8] {
        &self.residues[self.offsets[index]..self.offsets[index + 1]]
    }

    #[inline]
    pub fn length(&self, index: usize) -> usize {
        self.offsets[index + 1] - self.offsets[index]
    }

    pub fn header(&self, index: usize) -> &str {
        &self.headers[index]
    }

    pub fn sequence(&self, index: usize) -> EncodedSequence {
        EncodedSequence::new(self.headers[index].clone(), self.codes(index).to_vec())
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        (0..self.num_sequences()).map(move |i| self.codes(i))
    }

    /// Write the database back out as FASTA, 60 residues per line.
    pub fn write_fasta<W: Write>(&self, mut out: W, alphabet: &Alphabet) -> io::Result<()> {
        for i in 0..self.num_sequences() {
            writeln!(out, ">{}", self.header(i))?;
            for line in self.codes(i).chunks(60) {
                let text: String = line.iter().map(|&c| alphabet.decode(c)).collect();
                writeln!(out, "{text}")?;
            }
        }
        Ok(())
    }
}

impl Default for SequenceDatabase {
    fn default() -> Self {
        Self::new()
    }
}

/// Load and encode a FASTA database from `path`.
pub fn load_database(path: impl AsRef<Path>) -> Result<SequenceDatabase, SeqIoError> {
    let path = path.as_ref();
    let file = File::open(path)?;
    let db = SequenceDatabase::from_fasta(BufReader::new(file))?;
    if db.is_empty() {
        log::warn!("database {} contains no sequences", path.display());
    }
    if db.unknown_residues() > 0 {
        log::warn!(
            "database {}: {} residues outside the alphabet were coerced to X",
            path.display(),
            db.unknown_residues()
        );
    }
    Ok(db)
}
